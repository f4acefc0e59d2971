"""Scan small random digraphs for a non-integral fractional local chromatic number.

Each hit is checked against r-fold local colorings for r = 1..3.

    python scripts/find_fractional_instances.py --count 3000
"""

import argparse

from icl.coloring import fractional_local_chromatic, r_fold_local_chromatic
from icl.families import random_digraph


def instance(s):
    return random_digraph(5 + s % 2, 0.3 + 0.5 * ((s * 7) % 10) / 10, (9, s))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=3000)
    args = ap.parse_args(argv)

    hits = []
    for s in range(args.count):
        g = instance(s)
        val, _ = fractional_local_chromatic(g)
        if val.denominator > 1:
            ratios = [r_fold_local_chromatic(g, r).ratio for r in (1, 2, 3)]
            best_r = 1 + ratios.index(min(ratios))
            print(f"seed {s}: n={g.n} |E|={len(g.edges)} chi_fl={val} r-fold ratios={[str(x) for x in ratios]} "
                  f"best r={best_r}")
            hits.append(s)
    print(f"{len(hits)} hits: {tuple(hits)}")


if __name__ == "__main__":
    main()
