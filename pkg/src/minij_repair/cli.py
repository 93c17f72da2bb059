"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 corpus error, 3 internal error.
Unfixed bugs are results, not errors, so they exit 0.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import render_table, report_json, run_suite
from .corpus import CorpusError, load_bug, load_corpus
from .driver import RepairConfig
from .lang.interp import DEFAULT_TEST_TIMEOUT
from .patterns import expand_pattern_ids

log = logging.getLogger("minij_repair")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse insists on exit code 2 for bad usage; we reserve 2 for
    # corpus errors, so route through an exception instead.
    def error(self, message):
        raise _UsageError("%s: error: %s" % (self.prog, message))


def _timeout(value: str) -> float | None:
    if value == "unlimited":
        return None
    try:
        seconds = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected seconds or 'unlimited', got %r" % value)
    if seconds < 0:
        raise argparse.ArgumentTypeError("timeout must be >= 0")
    return seconds


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--perfect-fl", action="store_true",
                   help="use the annotated buggy statements instead of "
                        "spectrum-based localization")
    p.add_argument("--exhaustive", action="store_true",
                   help="keep validating after the first plausible patch")
    p.add_argument("--timeout", type=_timeout, default=60.0, metavar="SECONDS",
                   help="per-bug wall-clock budget in seconds, or 'unlimited' "
                        "(default: 60)")
    p.add_argument("--max-suspicious", type=int, default=50, metavar="N",
                   help="only attempt the N most suspicious statements "
                        "(default: 50)")
    p.add_argument("--patterns", metavar="LIST",
                   help="comma-separated pattern ids/families to enable; "
                        "prefix with '-' or '!' to disable (e.g. "
                        "'FP2,FP11,!FP11.3')")
    p.add_argument("--report", metavar="PATH",
                   help="write the machine-readable JSON report here")
    p.add_argument("--seed-check", action="store_true",
                   help="verify corpus invariants only; do not repair")
    p.add_argument("--test-timeout-ms", type=int,
                   default=int(DEFAULT_TEST_TIMEOUT * 1000), metavar="MS",
                   help="per-test execution timeout in milliseconds "
                        "(default: %d)" % int(DEFAULT_TEST_TIMEOUT * 1000))
    p.add_argument("-v", "--verbose", action="store_true",
                   help="log candidate-level progress to stderr")


def _build_parser() -> _Parser:
    parser = _Parser(prog="minij-repair",
                     description="Template-based automated program repair "
                                 "for MiniJ programs.")
    sub = parser.add_subparsers(dest="command", required=True)
    repair = sub.add_parser("repair", parents=[], help="repair a single bug directory")
    repair.add_argument("bug_dir", help="directory holding src/, tests/, "
                                        "fix.patch and bug.toml")
    _add_run_flags(repair)
    bench = sub.add_parser("bench", help="run the whole corpus and aggregate")
    bench.add_argument("corpus_root", help="directory of bug directories")
    _add_run_flags(bench)
    return parser


def _config(args: argparse.Namespace) -> RepairConfig:
    enabled = None
    if args.patterns is not None:
        parts = [p.strip() for p in args.patterns.split(",") if p.strip()]
        try:
            enabled = expand_pattern_ids(parts)
        except ValueError as exc:
            raise _UsageError("minij-repair: error: --patterns: %s" % exc)
    if args.max_suspicious <= 0:
        raise _UsageError("minij-repair: error: --max-suspicious must be positive")
    if args.test_timeout_ms <= 0:
        raise _UsageError("minij-repair: error: --test-timeout-ms must be positive")
    return RepairConfig(
        mode="perfect" if args.perfect_fl else "ochiai",
        exhaustive=args.exhaustive,
        budget_s=args.timeout,
        max_suspicious=args.max_suspicious,
        patterns=enabled,
        test_timeout=args.test_timeout_ms / 1000.0)


def _emit(report: dict, args: argparse.Namespace) -> None:
    if args.report:
        Path(args.report).write_text(report_json(report))
    sys.stdout.write(render_table(report))


def _cmd_repair(args: argparse.Namespace) -> int:
    config = _config(args)
    bug = load_bug(Path(args.bug_dir), test_timeout=config.test_timeout)
    if args.seed_check:
        print("%s: ok" % bug.bug_id)
        return 0
    report = run_suite([bug], config)
    _emit(report, args)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = load_corpus(Path(args.corpus_root), test_timeout=config.test_timeout)
    if args.seed_check:
        for bug in corpus:
            print("%s: ok" % bug.bug_id)
        print("%d bugs verified" % len(corpus))
        return 0
    report = run_suite(corpus, config)
    _emit(report, args)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s")
        if args.command == "repair":
            return _cmd_repair(args)
        return _cmd_bench(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except CorpusError as exc:
        print("corpus error: %s" % exc, file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        log.exception("internal error")
        print("internal error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
