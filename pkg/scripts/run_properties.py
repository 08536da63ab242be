"""Run registered properties and print a timing table.

    python3 scripts/run_properties.py                      # all, 1000 trials
    python3 scripts/run_properties.py -t 10000 nabla2_surpass quasi_swap
    python3 scripts/run_properties.py --module nabla --json out.json
"""

import argparse
import json
import sys

from supertrop import oracle


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("ids", nargs="*", help="property ids (default: all)")
    ap.add_argument("-t", "--trials", type=int, default=1000)
    ap.add_argument("-s", "--seed", type=int, default=0)
    ap.add_argument("--module", help="only properties of this module")
    ap.add_argument("--json", help="also write the reports to this file")
    args = ap.parse_args(argv)

    pids = args.ids or sorted(oracle.PROPERTIES)
    if args.module:
        pids = [p for p in pids if oracle.PROPERTIES[p].module == args.module]
    gaps = oracle.registry_gaps()
    if gaps:
        print("registry gaps:", ", ".join(gaps))

    reports, total = [], 0.0
    for pid in pids:
        r = oracle.property_run(pid, args.trials, args.seed)
        reports.append(r)
        total += r.elapsed
        print(f"{r.status.upper():4s} {pid:32s} {r.elapsed:7.2f}s  vacuous={r.vacuous}", flush=True)
        for f in r.failures[:3]:
            print(f"     replay: python3 scripts/replay_trial.py {pid} {f.seed!r}")
    print(f"{len(pids)} properties, {total:.1f}s")

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2)
    return 0 if all(r.status == "pass" for r in reports) and not gaps else 2


if __name__ == "__main__":
    sys.exit(main())
