"""Spectrum-based fault localization over per-test coverage traces.

Every non-passing verdict (failed assertion, crash, timeout) counts as a
failing test. Suspiciousness uses the Ochiai coefficient; statements never
executed by any failing test score 0 and are left out of the ranked list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lang.interp import CoverageTrace, StmtId


class LocalizationError(Exception):
    pass


@dataclass
class SpectrumEntry:
    e_f: int  # failing tests executing the statement
    e_p: int  # passing tests executing the statement
    n_f: int  # failing tests not executing it
    n_p: int  # passing tests not executing it


@dataclass
class TestSpectrum:
    entries: dict[StmtId, SpectrumEntry]
    total_failing: int
    total_passing: int


def build_spectrum(traces: list[CoverageTrace],
                   universe: set[StmtId] | None = None) -> TestSpectrum:
    """Aggregate traces into per-statement execution counts.

    universe extends the spectrum to statements no trace covered (they get
    (0, 0, F, P)); by default only covered statements appear.
    """
    failing = [t for t in traces if t.failing]
    passing = [t for t in traces if not t.failing]
    if not failing:
        raise LocalizationError("cannot localize without a failing test")
    stmts: set[StmtId] = set(universe or ())
    for t in traces:
        stmts.update(sid for sid, count in t.counts.items() if count > 0)
    entries = {}
    for sid in stmts:
        e_f = sum(1 for t in failing if t.counts.get(sid, 0) > 0)
        e_p = sum(1 for t in passing if t.counts.get(sid, 0) > 0)
        entries[sid] = SpectrumEntry(
            e_f=e_f, e_p=e_p, n_f=len(failing) - e_f, n_p=len(passing) - e_p)
    return TestSpectrum(entries=entries, total_failing=len(failing),
                        total_passing=len(passing))


def ochiai(e_f: int, e_p: int, n_f: int) -> float:
    """e_f / sqrt((e_f + n_f) * (e_f + e_p)), 0 when the denominator is 0."""
    denom = math.sqrt((e_f + n_f) * (e_f + e_p))
    if denom == 0.0:
        return 0.0
    return e_f / denom


@dataclass
class SuspiciousList:
    """Statements ranked by suspiciousness, most suspicious first."""

    entries: list[tuple[StmtId, float]]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def rank_of(self, stmt_id: StmtId) -> int | None:
        """1-based rank, or None when the statement did not make the list."""
        for i, (sid, _) in enumerate(self.entries):
            if sid == stmt_id:
                return i + 1
        return None

    def capped(self, limit: int | None) -> "SuspiciousList":
        if limit is None:
            return self
        return SuspiciousList(entries=self.entries[:limit])


def rank(spectrum: TestSpectrum) -> SuspiciousList:
    """Order statements by descending score; ties by source position.

    Statements are identified by (path, preorder index), and within a file
    preorder order coincides with start-offset order for statements, so the
    id itself is the positional tie-break.
    """
    scored = [(sid, ochiai(e.e_f, e.e_p, e.n_f))
              for sid, e in spectrum.entries.items()]
    scored = [(sid, s) for sid, s in scored if s > 0.0]
    scored.sort(key=lambda item: (-item[1], item[0][0], item[0][1]))
    return SuspiciousList(entries=scored)


def perfect_localization(buggy_statements: list[StmtId]) -> SuspiciousList:
    """Oracle mode: exactly the ground-truth statements, score 1.0 each,
    in source order."""
    ordered = sorted(set(buggy_statements))
    return SuspiciousList(entries=[(sid, 1.0) for sid in ordered])
