#!/usr/bin/env python3
"""Step-refinement study of the shooting oracle: the eigenvalue error
against the transcendental-condition roots should shrink like h^4.

    python scripts/oracle_convergence.py [--alpha A] [--levels N]
"""

import argparse
import math

from diracline import diracmodel as dm
from diracline import oracle as oc
from diracline import quantize as q


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=1.0 / math.sqrt(2.0))
    ap.add_argument("--levels", type=int, default=3)
    args = ap.parse_args()

    params = dm.PotentialParams.from_alpha(args.alpha, g=1.0)
    roots = q.spectrum(args.alpha, args.levels)
    expected = [dm.energy_from_nu(params, r.nu).energy for r in roots]
    base = oc.default_config(params, e_max=expected[-1] + 0.25)

    print(f"{'h':>12} {'max rel error':>14} {'gain':>8}")
    prev = None
    for divisor in (1, 2, 4, 8):
        cfg = oc.ShootingConfig(
            base.x_max, base.h / divisor, base.e_min, base.e_max, base.e_step
        )
        found = oc.eigenvalues(params, cfg)
        worst = max(
            abs(f.energy - e) / e for f, e in zip(found, expected)
        )
        gain = f"{prev / worst:8.1f}" if prev else "       -"
        print(f"{cfg.h:>12.3e} {worst:>14.3e} {gain}")
        prev = worst


if __name__ == "__main__":
    main()
