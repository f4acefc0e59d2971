"""Locate which U(m, 9) instance gives the ratio 2.5244 and where the k = 9 ratio peaks.

    python scripts/universal_constant.py --m 100:400
"""

import argparse

from icl.cli import parse_range
from icl.families import UniversalParams, ratio_sweep, universal_alpha_argmax, universal_ratio

TARGET = 2.5244


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=9)
    ap.add_argument("--m", default="100:400")
    ap.add_argument("--candidates", default="281,289")
    args = ap.parse_args(argv)

    for m in map(int, args.candidates.split(",")):
        params = UniversalParams(m, args.k)
        rep = universal_ratio(params)
        print(
            f"m={m} k={args.k}: |V|={rep.num_vertices} alpha={rep.alpha} (p*={universal_alpha_argmax(params)}) "
            f"ratio={float(rep.ratio):.7f} |ratio-{TARGET}|={abs(float(rep.ratio) - TARGET):.2e}"
        )

    reps = ratio_sweep(parse_range(args.m), [args.k])
    close = [rep.params.m for rep in reps if abs(float(rep.ratio) - TARGET) <= 1e-4]
    best = max(reps, key=lambda rep: rep.ratio)
    print(f"m within 1e-4 of {TARGET}: {close}")
    print(f"max over m in {args.m}: m={best.params.m} ratio={float(best.ratio):.7f}")
    increasing = all(a.ratio <= b.ratio for a, b in zip(reps, reps[1:]))
    print(f"ratio non-decreasing in m over this range: {increasing}")


if __name__ == "__main__":
    main()
