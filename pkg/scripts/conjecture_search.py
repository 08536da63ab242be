"""Search for definite lower-times-upper products that are not a nabla image.

Hits are candidates only: a single preimage is tried per matrix.

    python3 scripts/conjecture_search.py --trials 2000 --n 3
"""

import argparse

from supertrop import oracle
from supertrop.matrix import format_matrix


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--show", type=int, default=5, help="candidates to print")
    args = ap.parse_args(argv)

    hits = oracle.conjecture_search(args.trials, args.seed, args.n)
    print(f"{len(hits)} candidates in {args.trials} trials (n={args.n})")
    for c in hits[: args.show]:
        print(f"\nseed {c.seed}")
        print(format_matrix(c.matrix))
    return 0


if __name__ == "__main__":
    main()
