#!/usr/bin/env python3
"""Dump both matching-condition residual curves on a nu grid, plot-ready.

Writes CSV with one block per branch:

    python scripts/residual_scan.py --alpha 0.7071067811865476 \
        --nu-min -0.99 --nu-max 6 --step 0.01 --out residuals.csv
"""

import argparse
import math
import sys

from diracline import quantize as q


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=1.0 / math.sqrt(2.0))
    ap.add_argument("--nu-min", type=float, default=-0.99, dest="nu_min")
    ap.add_argument("--nu-max", type=float, default=6.0, dest="nu_max")
    ap.add_argument("--step", type=float, default=0.01)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    fh = open(args.out, "w") if args.out else sys.stdout
    try:
        fh.write("branch,nu,residual_ratio_form,residual_derivative_form\n")
        n = int(math.floor((args.nu_max - args.nu_min) / args.step))
        for branch in (q.SignBranch.PLUS, q.SignBranch.MINUS):
            dual = q.paired_branch(branch)
            for i in range(n + 1):
                nu = args.nu_min + i * args.step
                r = q.condition_residual(nu, args.alpha, branch)
                d = q.condition_residual_deriv_form(nu, args.alpha, dual)
                fh.write(f"{branch.value},{nu!r},{r!r},{d!r}\n")
    finally:
        if args.out:
            fh.close()


if __name__ == "__main__":
    main()
