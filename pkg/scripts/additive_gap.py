"""Local vs fractional chromatic number on the odd/even orientation of K_n.

    python scripts/additive_gap.py --n 2:14
"""

import argparse
import time

from icl.cli import parse_range
from icl.coloring import fractional_chromatic, local_chromatic
from icl.families import odd_even_tournament
from icl.graphs import directed_complement, shadow
from icl.index_code import construct_scalar_code, verify


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="2:14")
    args = ap.parse_args(argv)

    print(f"{'n':>3} {'maxdeg':>6} {'chi_l':>5} {'n/2+1':>6} {'chi_f':>5} {'rate':>5} {'valid':>5} {'sec':>6}")
    for n in parse_range(args.n):
        t0 = time.perf_counter()
        g = odd_even_tournament(n)
        chi_l = local_chromatic(g, cap=max(n, 20)).local_value
        chi_f, _ = fractional_chromatic(shadow(g), cap=max(n, 20))
        side = directed_complement(g)
        code, _ = construct_scalar_code(side, cap=max(n, 20))
        valid = verify(code, side).valid
        maxdeg = max(g.out_degree(v) for v in range(n))
        print(
            f"{n:>3} {maxdeg:>6} {chi_l:>5} {n / 2 + 1:>6} {str(chi_f):>5} {str(code.broadcast_rate):>5} "
            f"{str(valid):>5} {time.perf_counter() - t0:>6.2f}"
        )


if __name__ == "__main__":
    main()
