#!/usr/bin/env python3
"""Compare repair results under spectrum-based vs. perfect localization.

Runs the bundled corpus twice — once ranking statements with Ochiai over
the coverage spectrum, once feeding the known buggy statements directly —
and prints a side-by-side summary.  Optionally dumps both machine reports.

    python3 scripts/compare_localization.py [--corpus DIR] [--out DIR]
"""

from __future__ import annotations

import argparse
import pathlib
import sys
import time

from minij_repair.bench import report_json, run_suite
from minij_repair.corpus import load_corpus
from minij_repair.driver import RepairConfig

ROOT = pathlib.Path(__file__).resolve().parent.parent


def summarize(report: dict) -> dict:
    agg = report["aggregates"]
    return {
        "fixed": agg["fully_fixed_plausible"],
        "correct": agg["fully_fixed_correct"],
        "partial": agg["partially_fixed"],
        "unfixed": agg["unfixed"],
        "validated": agg["candidates_validated"],
        "avg_rank": agg["avg_buggy_rank"],
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--corpus", default=str(ROOT / "corpus"))
    ap.add_argument("--out", help="directory for the two JSON reports")
    args = ap.parse_args(argv)

    corpus = load_corpus(args.corpus, verify=False)
    rows = []
    reports = {}
    for mode in ("ochiai", "perfect"):
        config = RepairConfig(mode=mode, budget_s=None)
        t0 = time.monotonic()
        report = run_suite(corpus, config)
        elapsed = time.monotonic() - t0
        row = summarize(report)
        row["mode"] = mode
        row["time_s"] = elapsed
        rows.append(row)
        reports[mode] = report

    print("%-8s %6s %8s %8s %8s %10s %9s %7s"
          % ("mode", "fixed", "correct", "partial", "unfixed",
             "validated", "avg_rank", "time"))
    for row in rows:
        rank = "-" if row["avg_rank"] is None else "%.2f" % row["avg_rank"]
        print("%-8s %6d %8d %8d %8d %10d %9s %6.1fs"
              % (row["mode"], row["fixed"], row["correct"], row["partial"],
                 row["unfixed"], row["validated"], rank, row["time_s"]))

    normal, perfect = rows[0], rows[1]
    print()
    print("perfect localization fixes %d bugs; spectrum localization fixes %d"
          % (perfect["fixed"], normal["fixed"]))
    if normal["fixed"] > perfect["fixed"]:
        print("WARNING: spectrum mode fixed more bugs than perfect mode")
        return 1

    if args.out:
        out = pathlib.Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for mode, report in reports.items():
            path = out / ("report_%s.json" % mode)
            path.write_text(report_json(report))
            print("wrote", path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
