"""Sweep chi_f / chi_local over universal graphs and report the largest ratio per k.

    python scripts/ratio_sweep.py --k 2:12 --m-mult 40 --output sweep.csv
"""

import argparse
import sys

from icl.cli import parse_range
from icl.families import RATIO_BOUND, ratio_sweep, sweep_csv


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", default="2:12", help="k values, 'a:b' inclusive")
    ap.add_argument("--m-mult", type=int, default=40, help="sweep m over k..m_mult*k")
    ap.add_argument("--r", type=int, default=1)
    ap.add_argument("--output", help="CSV with every row (optional)")
    args = ap.parse_args(argv)

    all_reports = []
    print(f"{'k':>3} {'rows':>6} {'argmax m':>9} {'max ratio':>12}")
    for k in parse_range(args.k):
        if k <= args.r:
            continue
        reps = ratio_sweep(range(k, args.m_mult * k + 1), [k], r=args.r)
        best = max(reps, key=lambda rep: rep.ratio)
        print(f"{k:>3} {len(reps):>6} {best.params.m:>9} {float(best.ratio):>12.6f}")
        all_reports += reps
    ok = all(rep.bound_ok for rep in all_reports)
    print(f"all {len(all_reports)} ratios <= {RATIO_BOUND:.6f}: {ok}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(sweep_csv(all_reports))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
