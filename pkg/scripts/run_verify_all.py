#!/usr/bin/env python3
"""Run every verification suite with default parameters and print reports.

Exit status is nonzero if any check fails; this is the one-shot version of
``qdtorus verify all``.
"""

import argparse
import sys

from qdtorus.suites import SUITE_NAMES, SuiteParams, run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--convention", default="corrected")
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    ok = True
    for name in SUITE_NAMES:
        if name == "all":
            continue
        params = SuiteParams(
            algebra="all" if name == "hopf" else "ADTq",
            convention=args.convention,
            jobs=args.jobs,
        )
        report = run_suite(name, params)
        print(report.to_json() if args.json else report.to_text())
        print()
        ok = ok and report.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
