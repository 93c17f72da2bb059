"""The repair loop: scheduling, traversal, stopping policy, classification."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from minij_repair.driver import (
    ACTION_PRIORITY,
    CandidatePatch,
    RepairConfig,
    RepairError,
    generate_for_statement,
    match_statement,
    run_repair,
    scheduling_key,
)
from minij_repair.lang.printer import pretty_print

from helpers import SUITE, single


def make_candidate(rng) -> CandidatePatch:
    return CandidatePatch(
        patch=None, location=("src/Main.mj", 0),
        suspiciousness=1.0,
        pattern_id="FP9.1",
        action=rng.choice(list(ACTION_PRIORITY)),
        donor_distance=rng.choice([None, 0, 1, 2, 5]),
        stmt_rank=rng.randrange(4),
        phase=rng.randrange(3),
        node_order=rng.randrange(6),
        catalog_index=rng.randrange(35),
        emit_index=rng.randrange(50),
    )


class TestSchedulingKey:
    def test_matches_sort_oracle(self):
        rng = random.Random(7)
        cands = [make_candidate(rng) for _ in range(300)]

        def oracle(c):
            return (
                c.stmt_rank,
                c.phase,
                c.node_order,
                ACTION_PRIORITY[c.action],
                c.catalog_index,
                (0, 0) if c.donor_distance is None else (1, c.donor_distance),
                c.emit_index,
            )

        assert sorted(cands, key=scheduling_key) == sorted(cands, key=oracle)

    def test_action_priority_order(self):
        assert ACTION_PRIORITY == {
            "update": 0, "insert": 1, "delete": 2, "move": 3}

    def test_donor_free_before_donor_backed(self):
        rng = random.Random(3)
        a = make_candidate(rng)
        b = make_candidate(rng)
        b.stmt_rank, b.phase, b.node_order = a.stmt_rank, a.phase, a.node_order
        b.action, b.catalog_index, b.emit_index = (
            a.action, a.catalog_index, a.emit_index)
        a.donor_distance, b.donor_distance = None, 0
        assert scheduling_key(a) < scheduling_key(b)

    def test_total_order_is_deterministic(self):
        rng = random.Random(11)
        cands = [make_candidate(rng) for _ in range(200)]
        keys = [scheduling_key(c) for c in cands]
        assert len(set(keys)) >= 150  # ties only on identical tuples
        shuffled = cands[:]
        random.Random(5).shuffle(shuffled)
        assert sorted(keys) == sorted(scheduling_key(c) for c in shuffled)


SRC = """
class Main {
    int bonus(int v) {
        return v * 2;
    }
    int malus(int v) {
        return v * 3;
    }
    int apply(int x) {
        int v = this.bonus(x);
        return v;
    }
}
"""


def stmt_of(program, marker):
    last = None
    for stmt_id, node in program.statements():
        if marker in pretty_print(node):
            last = stmt_id
    assert last is not None
    return last


class TestTraversal:
    def test_expression_phase_before_statement_phase(self):
        program = single(SRC)
        sid = stmt_of(program, "int v = this.bonus(x);")
        phases = [phase for _, _, _, phase in match_statement(program, sid)]
        assert phases == sorted(phases)

    def test_node_order_is_preorder(self):
        # on `v = m(x);` invocation patterns see the call before variable
        # patterns see the argument: FP10 outranks FP13 here
        program = single(SRC)
        sid = stmt_of(program, "int v = this.bonus(x);")
        seen = []
        for entry, m, node_order, phase in match_statement(program, sid):
            seen.append((entry.descriptor.pattern_id, node_order))
        fp10 = min(o for p, o in seen if p == "FP10.1")
        fp13 = min(o for p, o in seen if p == "FP13.1")
        assert fp10 < fp13

    def test_enabled_filter(self):
        program = single(SRC)
        sid = stmt_of(program, "int v = this.bonus(x);")
        ids = {entry.descriptor.pattern_id
               for entry, _, _, _ in match_statement(
                   program, sid, frozenset({"FP15.1", "FP15.2"}))}
        assert ids <= {"FP15.1", "FP15.2"}

    def test_method_phase_only_inside_methods(self):
        program = single(SRC)
        sid = stmt_of(program, "int v = this.bonus(x);")
        entries = [e.descriptor.pattern_id
                   for e, _, _, phase in match_statement(program, sid)
                   if phase == 2]
        assert entries == ["FP15.2"]


class TestGeneration:
    def test_candidates_come_out_in_scheduling_order(self):
        program = single(SRC)
        sid = stmt_of(program, "int v = this.bonus(x);")
        kept, _, _ = generate_for_statement(
            program, sid, 0, 1.0, RepairConfig(), 0)
        keys = [scheduling_key(c) for c in kept]
        assert keys == sorted(keys)
        assert [c.sequence_no for c in kept] == list(range(len(kept)))

    def test_duplicate_texts_dropped(self):
        program = single(SRC)
        sid = stmt_of(program, "int v = this.bonus(x);")
        kept, _, _ = generate_for_statement(
            program, sid, 0, 1.0, RepairConfig(), 0)
        texts = {(c.pattern_id, c.patched_texts["src/Main.mj"])
                 for c in kept}
        assert len(texts) == len(kept)

    def test_candidate_cap_per_pattern(self):
        program = single(SRC)
        sid = stmt_of(program, "int v = this.bonus(x);")
        config = RepairConfig(candidate_cap=2)
        kept, _, _ = generate_for_statement(program, sid, 0, 1.0, config, 0)
        per = {}
        for c in kept:
            per[c.pattern_id] = per.get(c.pattern_id, 0) + 1
        assert per and max(per.values()) <= 2

    def test_all_candidates_typecheck(self):
        program = single(SRC)
        sid = stmt_of(program, "int v = this.bonus(x);")
        kept, _, _ = generate_for_statement(
            program, sid, 0, 1.0, RepairConfig(), 0)
        assert kept and all(c.patched_program is not None for c in kept)


BUGGY = """
class Till {
    int total;
    void pay(int n) {
        this.total = this.total - n;
    }
    int held() {
        return this.total;
    }
}
"""

BUGGY_SUITE = """
class TillTest {
    void test_pay() {
        Till t = new Till();
        t.pay(4);
        assert(t.held() == 4);
    }
    void test_pay_twice() {
        Till t = new Till();
        t.pay(2);
        t.pay(3);
        assert(t.held() == 5);
    }
}
"""

FIXED = BUGGY.replace("this.total - n", "this.total + n")


def buggy_sid(program):
    return stmt_of(program, "this.total = this.total - n;")


class TestRunRepair:
    def repair(self, **kw):
        program = single(BUGGY, BUGGY_SUITE)
        config = kw.pop("config", RepairConfig(mode="perfect", budget_s=None))
        return run_repair(
            program, SUITE, config,
            buggy_statements=[buggy_sid(program)],
            ground_truth=kw.pop("ground_truth", {"src/Main.mj": FIXED}),
            **kw)

    def test_finds_the_fix(self):
        outcome = self.repair()
        assert outcome.status == "fully-fixed"
        assert outcome.correct
        assert outcome.plausible_patch.pattern_id == "FP11.1"
        assert "this.total + n" in outcome.plausible_patch.patched_texts[
            "src/Main.mj"]

    def test_stops_at_first_plausible(self):
        outcome = self.repair()
        log = outcome.validation_log
        assert log[-1][2] == "plausible"
        assert sum(1 for _, _, v in log if v == "plausible") == 1
        assert outcome.candidates_validated == len(log)

    def test_exhaustive_keeps_validating(self):
        outcome = self.repair(config=RepairConfig(
            mode="perfect", budget_s=None, exhaustive=True))
        assert len(outcome.plausible_patches) >= 1
        after_first = False
        validated_after = 0
        for _, _, verdict in outcome.validation_log:
            if after_first:
                validated_after += 1
            if verdict == "plausible":
                after_first = True
        assert validated_after > 0
        # first plausible under exhaustive matches the stop-on-first winner
        assert (outcome.plausible_patches[0].sequence_no
                == self.repair().plausible_patch.sequence_no)

    def test_ground_truth_mismatch_reported(self):
        wrong = BUGGY.replace("this.total - n", "this.total + n + 0")
        outcome = self.repair(ground_truth={"src/Main.mj": wrong})
        assert outcome.status == "fully-fixed"
        assert not outcome.correct

    def test_rank_of_buggy_statement_populated(self):
        program = single(BUGGY, BUGGY_SUITE)
        outcome = run_repair(
            program, SUITE, RepairConfig(mode="ochiai", budget_s=None),
            buggy_statements=[buggy_sid(program)])
        assert outcome.buggy_ranks and outcome.buggy_ranks[0] >= 1

    def test_budget_zero_validates_nothing(self):
        outcome = self.repair(config=RepairConfig(
            mode="perfect", budget_s=0.0))
        assert outcome.status == "unfixed"
        assert outcome.candidates_validated == 0

    def test_all_tests_passing_is_an_error(self):
        program = single(FIXED, BUGGY_SUITE)
        with pytest.raises(RepairError, match="nothing to repair"):
            run_repair(program, SUITE, RepairConfig(mode="ochiai"))

    def test_perfect_mode_requires_statements(self):
        program = single(BUGGY, BUGGY_SUITE)
        with pytest.raises(RepairError, match="perfect"):
            run_repair(program, SUITE, RepairConfig(mode="perfect"))

    def test_pattern_restriction_respected(self):
        outcome = self.repair(config=RepairConfig(
            mode="perfect", budget_s=None,
            patterns=frozenset({"FP15.1"})))
        assert {p for _, p, _ in outcome.validation_log} <= {"FP15.1"}
