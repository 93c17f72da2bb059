"""Benchmark harness: run the repair loop over a bug corpus and report.

The machine-readable report is a plain dict (stable JSON: sorted keys, no
timing fields) so that two runs with an unlimited budget serialize to the
same bytes. The human-readable table is rendered from that dict alone.
"""

from __future__ import annotations

import json

from .corpus import BugCase
from .diffs import make_patch
from .driver import (
    FULLY_FIXED,
    PARTIALLY_FIXED,
    RepairConfig,
    RepairOutcome,
    run_repair,
)

SCHEMA_VERSION = 1


def repair_bug(bug: BugCase, config: RepairConfig) -> RepairOutcome:
    program = bug.program()
    return run_repair(
        program, bug.suite_path, config,
        buggy_statements=bug.buggy_statement_ids(program),
        ground_truth=bug.fixed_texts(),
        bug_id=bug.bug_id)


def _patch_diff(bug: BugCase, outcome: RepairOutcome) -> str | None:
    cand = outcome.plausible_patch
    if cand is None or cand.patched_texts is None:
        return None
    chunks = []
    for path in sorted(bug.sources):
        before = bug.sources[path]
        after = cand.patched_texts.get(path, before)
        if after != before:
            chunks.append(make_patch(before, after, path))
    return "".join(chunks)


def _bug_entry(bug: BugCase, outcome: RepairOutcome) -> dict:
    winner = outcome.plausible_patch
    return {
        "id": bug.bug_id,
        "expected_pattern": bug.expected_pattern,
        "status": outcome.status,
        "correct": outcome.correct,
        "patch_pattern": winner.pattern_id if winner else None,
        "patch_diff": _patch_diff(bug, outcome),
        "candidates_generated": outcome.candidates_generated,
        "candidates_validated": outcome.candidates_validated,
        "gate_rejections": outcome.gate_rejections,
        "plausible_patches": len(outcome.plausible_patches),
        "partial_patches": len(outcome.partial_patches),
        "buggy_statement_ranks": list(outcome.buggy_ranks),
    }


def _aggregates(entries: list[dict]) -> dict:
    fixed = [e for e in entries if e["status"] == FULLY_FIXED]
    partial = [e for e in entries if e["status"] == PARTIALLY_FIXED]
    per_pattern: dict[str, dict] = {}
    for e in entries:
        pid = e["expected_pattern"] or "?"
        slot = per_pattern.setdefault(
            pid, {"bugs": 0, "plausible": 0, "correct": 0, "ranks": []})
        slot["bugs"] += 1
        if e["status"] == FULLY_FIXED:
            slot["plausible"] += 1
            if e["correct"]:
                slot["correct"] += 1
        slot["ranks"].extend(r for r in e["buggy_statement_ranks"] if r is not None)
    for slot in per_pattern.values():
        ranks = slot.pop("ranks")
        slot["avg_buggy_rank"] = round(sum(ranks) / len(ranks), 4) if ranks else None
    all_ranks = [r for e in entries
                 for r in e["buggy_statement_ranks"] if r is not None]
    return {
        "bugs": len(entries),
        "fully_fixed_plausible": len(fixed),
        "fully_fixed_correct": sum(1 for e in fixed if e["correct"]),
        "partially_fixed": len(partial),
        "unfixed": len(entries) - len(fixed) - len(partial),
        "candidates_generated": sum(e["candidates_generated"] for e in entries),
        "candidates_validated": sum(e["candidates_validated"] for e in entries),
        "avg_buggy_rank": (round(sum(all_ranks) / len(all_ranks), 4)
                           if all_ranks else None),
        "per_pattern": per_pattern,
    }


def run_suite(corpus: list[BugCase], config: RepairConfig) -> dict:
    entries = []
    for bug in sorted(corpus, key=lambda b: b.bug_id):
        outcome = repair_bug(bug, config)
        entries.append(_bug_entry(bug, outcome))
    return {
        "schema_version": SCHEMA_VERSION,
        "mode": config.mode,
        "exhaustive": config.exhaustive,
        "budget_seconds": config.budget_s,
        "max_suspicious": config.max_suspicious,
        "patterns": sorted(config.patterns) if config.patterns is not None else "all",
        "bugs": entries,
        "aggregates": _aggregates(entries),
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


_COLUMNS = ("bug", "pattern", "status", "correct", "gen", "val", "ranks")


def render_table(report: dict) -> str:
    """Human-readable summary, derived only from the machine report."""
    rows = [_COLUMNS]
    for e in report["bugs"]:
        ranks = ",".join("-" if r is None else str(r)
                         for r in e["buggy_statement_ranks"]) or "-"
        rows.append((e["id"], e["expected_pattern"] or "?", e["status"],
                     "yes" if e["correct"] else "no",
                     str(e["candidates_generated"]),
                     str(e["candidates_validated"]), ranks))
    widths = [max(len(r[i]) for r in rows) for i in range(len(_COLUMNS))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    agg = report["aggregates"]
    lines.append("")
    lines.append("bugs: %d  fully-fixed: %d (correct %d)  partial: %d  unfixed: %d"
                 % (agg["bugs"], agg["fully_fixed_plausible"],
                    agg["fully_fixed_correct"], agg["partially_fixed"],
                    agg["unfixed"]))
    lines.append("candidates: %d generated, %d validated; avg buggy rank: %s"
                 % (agg["candidates_generated"], agg["candidates_validated"],
                    "-" if agg["avg_buggy_rank"] is None else agg["avg_buggy_rank"]))
    return "\n".join(lines) + "\n"
