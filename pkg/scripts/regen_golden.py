"""Rewrite the frozen outputs under tests/golden.

Run only when an output format changes on purpose, then review the diff:
    python3 scripts/regen_golden.py
"""

import contextlib
import io
import json
import os

from supertrop.cli import main
from supertrop.matrix import format_matrix
from supertrop.random_gen import KINDS, random_special

HERE = os.path.dirname(os.path.abspath(__file__))
GOLDEN = os.path.join(HERE, "..", "tests", "golden")

# (file name, argv); inputs are inline so the goldens are self-contained
CLI_CASES = [
    ("per_bl1.txt", ["per", "2 4; 4 8"]),
    ("bid_intro.txt", ["bid", "0 0 _; _ 0 0; 0 _ 0"]),
    ("quasi_singsq.txt", ["quasi", "-1 -1; 0 1"]),
    ("quasi_singsq.json", ["quasi", "-1 -1; 0 1", "--json"]),
    ("quasi_singsq3.txt", ["quasi", "_ 5 0; 0 _ _; _ 0 _"]),
    ("classify_genmon1.json", ["classify", "0 0 _ _; _ 0 0 _; _ _ 0 0; 0 _ _ 0"]),
    ("adj_singsq.json", ["adj", "-1 -1; 0 1", "--json"]),
    ("sns_e12.json", ["sns", "0 -1; _ 0", "--json"]),
    ("ed_singsq3.json", ["ed", "_ 5 0; 0 _ _; _ 0 _", "--json"]),
    ("member_singsq3.json", ["member", "--unit", "_ 5 0; 0 _ _; _ 0 _", "--candidate", "0 10v 5v; _ 0 _; _ 5v 0", "--json"]),
    ("bridge_small.json", ["bridge", "0 -1; -2 0", "_ 1; -1 -3", "--json"]),
]

SEED_KINDS = [k for k in KINDS]


def run_cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def seed_table():
    return {f"{kind}/{n}/{seed}": format_matrix(random_special(seed, n, kind)) for kind in SEED_KINDS for n in (1, 3) for seed in (0, 1, 2)}


def main_():
    os.makedirs(GOLDEN, exist_ok=True)
    for name, argv in CLI_CASES:
        code, out = run_cli(argv)
        if code != 0:
            raise SystemExit(f"{name}: exit {code}")
        with open(os.path.join(GOLDEN, name), "w", encoding="utf-8") as fh:
            fh.write(out)
    with open(os.path.join(GOLDEN, "cli_cases.json"), "w", encoding="utf-8") as fh:
        json.dump(CLI_CASES, fh, indent=1)
        fh.write("\n")
    with open(os.path.join(GOLDEN, "random_special.json"), "w", encoding="utf-8") as fh:
        json.dump(seed_table(), fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(CLI_CASES) + 2} files to {os.path.normpath(GOLDEN)}")


if __name__ == "__main__":
    main_()
