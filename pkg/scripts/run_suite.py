#!/usr/bin/env python3
"""Run the batch property suite and write canonical report files.

Usage:
    python3 scripts/run_suite.py [--seed N] [--filter NAME] [--out DIR]

Each criterion report lands in DIR as criterion_N.json plus a summary.json;
the process exits nonzero when any batch fails.
"""

import argparse
import sys

from relintlab.suite import run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--filter", default=None,
                    help="run one named batch instead of all eight")
    ap.add_argument("--out", default="suite_reports")
    ap.add_argument("--jobs", type=int, default=None)
    args = ap.parse_args()

    summary = run_suite(seed=args.seed, name_filter=args.filter,
                        output_dir=args.out, jobs=args.jobs)
    for report in summary["criteria"]:
        status = "PASS" if report["pass"] else "FAIL"
        print(f"criterion {report['criterion']}: {report['name']}: {status}")
    print(f"reports written to {args.out}/")
    return 0 if summary["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
