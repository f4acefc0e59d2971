"""First-attempt success rate of the random binary construction.

    python scripts/binary_success.py --n 8 --trials 200
"""

import argparse
import math
from collections import Counter

from icl.families import random_digraph
from icl.index_code import construct_binary_code


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=8, help="instance generator seed")
    args = ap.parse_args(argv)

    attempts = Counter()
    for i in range(args.trials):
        side = random_digraph(args.n, (0.3, 0.5, 0.7)[i % 3], (args.seed, i))
        attempts[construct_binary_code(side, seed=i).metadata["attempts"]] += 1
    p = 1 - 1 / args.n
    slack = 3 * math.sqrt(args.trials * p * (1 - p))
    print(f"attempt histogram: {dict(sorted(attempts.items()))}")
    print(f"first-attempt rate {attempts[1] / args.trials:.3f} (floor 1-1/n = {p:.3f}, "
          f"3-sigma threshold {(args.trials * p - slack) / args.trials:.3f})")


if __name__ == "__main__":
    main()
