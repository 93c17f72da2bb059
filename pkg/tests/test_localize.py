"""Fault localization: Ochiai arithmetic, spectra, ranking order."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from minij_repair.lang.interp import CoverageTrace, run_tests
from minij_repair.nodes import NodeKind
from minij_repair.localize import (
    LocalizationError,
    SuspiciousList,
    build_spectrum,
    ochiai,
    perfect_localization,
    rank,
)

from helpers import SUITE, single


def trace(name, verdict, counts):
    return CoverageTrace(test_name=name, verdict=verdict, counts=counts)


S1, S2, S3 = ("a.mj", 4), ("a.mj", 9), ("b.mj", 2)


class TestOchiai:
    def test_known_values(self):
        assert ochiai(1, 0, 0) == 1.0
        assert ochiai(0, 5, 3) == 0.0
        assert ochiai(2, 0, 2) == pytest.approx(math.sqrt(0.5))
        assert ochiai(1, 1, 0) == pytest.approx(1 / math.sqrt(2))

    def test_zero_denominator(self):
        assert ochiai(0, 0, 0) == 0.0

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 40), st.integers(0, 40), st.integers(0, 40))
    def test_matches_direct_formula(self, e_f, e_p, n_f):
        want = 0.0
        denom = math.sqrt((e_f + n_f) * (e_f + e_p))
        if denom:
            want = e_f / denom
        assert abs(ochiai(e_f, e_p, n_f) - want) <= 1e-12

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 40), st.integers(0, 40), st.integers(0, 40))
    def test_bounded(self, e_f, e_p, n_f):
        assert 0.0 <= ochiai(e_f, e_p, n_f) <= 1.0


class TestSpectrumBuild:
    def test_counts(self):
        traces = [
            trace("t1", "failed", {S1: 3, S2: 1}),
            trace("t2", "passed", {S1: 1}),
            trace("t3", "passed", {S2: 2, S3: 1}),
        ]
        spectrum = build_spectrum(traces)
        assert spectrum.total_failing == 1
        assert spectrum.total_passing == 2
        e = spectrum.entries[S1]
        assert (e.e_f, e.e_p, e.n_f, e.n_p) == (1, 1, 0, 1)
        e = spectrum.entries[S3]
        assert (e.e_f, e.e_p, e.n_f, e.n_p) == (0, 1, 1, 1)

    def test_all_non_passing_verdicts_count_as_failing(self):
        for verdict in ("failed", "crashed", "timed-out"):
            spectrum = build_spectrum([trace("t", verdict, {S1: 1})])
            assert spectrum.total_failing == 1

    def test_zero_count_entries_ignored(self):
        spectrum = build_spectrum([trace("t", "failed", {S1: 1, S2: 0})])
        assert S2 not in spectrum.entries

    def test_universe_extends(self):
        spectrum = build_spectrum(
            [trace("t", "failed", {S1: 1})], universe={S1, S3})
        e = spectrum.entries[S3]
        assert (e.e_f, e.e_p) == (0, 0)

    def test_requires_a_failing_test(self):
        with pytest.raises(LocalizationError):
            build_spectrum([trace("t", "passed", {S1: 1})])
        with pytest.raises(LocalizationError):
            build_spectrum([])


class TestRank:
    def test_descending_with_positional_ties(self):
        traces = [
            trace("t1", "failed", {S1: 1, S2: 1, S3: 1}),
            trace("t2", "passed", {S2: 1}),
        ]
        ranked = rank(build_spectrum(traces))
        ids = [sid for sid, _ in ranked]
        # S1 and S3 tie at 1.0; path then position breaks the tie
        assert ids == [S1, S3, S2]

    def test_zero_scores_dropped(self):
        traces = [
            trace("t1", "failed", {S1: 1}),
            trace("t2", "passed", {S3: 1}),
        ]
        ranked = rank(build_spectrum(traces))
        assert [sid for sid, _ in ranked] == [S1]

    def test_rank_of_and_capped(self):
        ranked = SuspiciousList(entries=[(S1, 1.0), (S2, 0.5), (S3, 0.25)])
        assert ranked.rank_of(S2) == 2
        assert ranked.rank_of(("c.mj", 1)) is None
        assert len(ranked.capped(2)) == 2
        assert ranked.capped(None) is ranked

    def test_matches_sort_oracle_on_random_spectra(self):
        rng = random.Random(11)
        for _ in range(50):
            traces = []
            stmts = [("f%d.mj" % rng.randrange(3), rng.randrange(40))
                     for _ in range(rng.randrange(1, 12))]
            for i in range(rng.randrange(1, 8)):
                verdict = rng.choice(["passed", "failed"])
                counts = {s: rng.randrange(3) for s in stmts}
                traces.append(trace("t%d" % i, verdict, counts))
            if not any(t.failing for t in traces):
                traces.append(trace("tf", "failed", {stmts[0]: 1}))
            spectrum = build_spectrum(traces)
            expected = sorted(
                ((sid, ochiai(e.e_f, e.e_p, e.n_f))
                 for sid, e in spectrum.entries.items()),
                key=lambda item: (-item[1], item[0]))
            expected = [(sid, s) for sid, s in expected if s > 0.0]
            assert rank(spectrum).entries == expected


class TestPerfect:
    def test_source_order_score_one(self):
        got = perfect_localization([S2, S3, S1, S2])
        assert got.entries == [(S1, 1.0), (S2, 1.0), (S3, 1.0)]


class TestEndToEnd:
    def test_buggy_statement_ranks_first(self):
        # one passing and one failing test isolate the faulty branch
        program = single("""
        class Clamp {
            int clamp(int v, int lo, int hi) {
                if (v < lo) {
                    return lo;
                }
                if (v > hi) {
                    return lo;
                }
                return v;
            }
        }
        """, """
        class ClampTest {
            void test_low() {
                Clamp c = new Clamp();
                assert(c.clamp(-4, 0, 10) == 0);
            }
            void test_mid() {
                Clamp c = new Clamp();
                assert(c.clamp(5, 0, 10) == 5);
            }
            void test_high() {
                Clamp c = new Clamp();
                assert(c.clamp(99, 0, 10) == 10);
            }
        }
        """)
        traces = run_tests(program, SUITE)
        assert sum(t.failing for t in traces) == 1
        ranked = rank(build_spectrum(traces))
        top_path, top_index = ranked.entries[0][0]
        assert top_path == "src/Main.mj"
        returns = [n for n in program.file("src/Main.mj").ast.walk()
                   if n.kind == NodeKind.RETURN_STMT
                   and "return lo;" in _text(n)]
        buggy = returns[-1]  # inside the v > hi branch
        assert top_index == buggy.preorder_index

    def test_statement_granularity(self):
        program = single("""
        class Toll {
            int due(int axles) {
                int base = 10;
                int extra = axles * 3;
                return base - extra;
            }
        }
        """, """
        class TollTest {
            void test_due() {
                Toll t = new Toll();
                assert(t.due(2) == 16);
            }
        }
        """)
        traces = run_tests(program, SUITE)
        ranked = rank(build_spectrum(traces))
        # with only failing coverage every executed statement ties at 1.0
        assert all(score == 1.0 for _, score in ranked)
        assert len(ranked) >= 3


def _text(node):
    from minij_repair.lang.printer import pretty_print
    return pretty_print(node)
