#!/usr/bin/env python3
"""Print the lowest bound-state table at a given alpha, with the shooting
cross-check: the headline numbers of the package.

    python scripts/lowest_levels.py [--alpha A] [--levels N]
"""

import argparse
import math

from diracline import diracmodel as dm
from diracline import oracle as oc
from diracline import quantize as q


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=1.0 / math.sqrt(2.0))
    ap.add_argument("--levels", type=int, default=4)
    args = ap.parse_args()

    params = dm.PotentialParams.from_alpha(args.alpha, g=1.0)
    roots = q.spectrum(args.alpha, args.levels)
    energies = [dm.energy_from_nu(params, r.nu, branch=r.branch).energy for r in roots]
    cfg = oc.default_config(params, e_max=energies[-1] + 0.25)
    shot = oc.eigenvalues(params, cfg)

    print(f"alpha = {args.alpha:.12g}   (m = {params.m:.12g}, g = {params.g:g})")
    print(f"{'#':>2} {'branch':>6} {'nu':>18} {'E=sqrt(2(nu+1))':>18} "
          f"{'E (shooting)':>18} {'rel diff':>10}")
    for i, (root, e) in enumerate(zip(roots, energies), start=1):
        e_shot = shot[i - 1].energy if i - 1 < len(shot) else float("nan")
        rel = abs(e_shot - e) / e if e else float("nan")
        print(f"{i:>2} {root.branch.value:>6} {root.nu:>18.12f} {e:>18.12f} "
              f"{e_shot:>18.12f} {rel:>10.1e}")


if __name__ == "__main__":
    main()
