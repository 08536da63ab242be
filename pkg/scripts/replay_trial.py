"""Replay one property trial from the seed string a failure report printed.

    python3 scripts/replay_trial.py quasi_swap 'quasi_swap:0:417'
"""

import sys

from supertrop import oracle


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print(__doc__.strip())
        return 1
    pid, seed = argv
    out = oracle.run_trial(pid, seed)
    if out is None:
        print("pass")
        return 0
    if out is oracle.VACUOUS:
        print("vacuous (precondition not met)")
        return 0
    print(f"fail: {out}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
