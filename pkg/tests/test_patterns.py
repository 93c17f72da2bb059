"""The fix-pattern catalog and pinned per-pattern behavior."""

import pytest

from minij_repair.driver import RepairConfig, generate_for_statement
from minij_repair.lang.printer import pretty_print
from minij_repair.patterns import (
    BY_ID,
    CATALOG,
    CATALOG_INDEX,
    EXPRESSION_PHASE,
    METHOD_PHASE,
    REGISTRY,
    STATEMENT_PHASE,
    action_counts,
    expand_pattern_ids,
    granularity_counts,
    spread_counts,
)

from helpers import single


class TestCatalog:
    def test_thirty_five_patterns(self):
        ids = [d.pattern_id for d in CATALOG]
        assert len(ids) == 35
        assert len(set(ids)) == 35
        assert set(ids) == set(BY_ID)

    def test_action_counts(self):
        assert action_counts() == {
            "update": 17, "delete": 4, "insert": 13, "move": 1}

    def test_granularity_counts(self):
        assert granularity_counts() == {
            "expression": 21, "statement": 17, "method": 1}

    def test_spread_counts(self):
        assert spread_counts() == {"single": 30, "multiple": 7}

    def test_families(self):
        fams = {d.family for d in CATALOG}
        assert len(fams) == 15

    def test_catalog_index_is_catalog_order(self):
        assert [CATALOG_INDEX[d.pattern_id] for d in CATALOG] == list(range(35))

    def test_registry_phases_follow_granularity(self):
        for e in REGISTRY:
            g = e.descriptor.granularity
            if e.phase == METHOD_PHASE:
                assert g == "method"
            elif e.phase == STATEMENT_PHASE:
                assert g == "statement"
            else:
                assert e.phase == EXPRESSION_PHASE and g.startswith("expression")

    def test_expand_pattern_ids(self):
        assert expand_pattern_ids(["FP2"]) == {
            "FP2.1", "FP2.2", "FP2.3", "FP2.4", "FP2.5"}
        assert expand_pattern_ids(["FP10.1", "FP15"]) == {
            "FP10.1", "FP15.1", "FP15.2"}
        with pytest.raises(ValueError):
            expand_pattern_ids(["FP99"])


PATH = "src/Main.mj"


def candidates(source: str, marker: str, ids: set[str], cap: int = 50):
    """Gate-passing candidates from the given patterns, anchored on the
    innermost statement whose printed form contains marker."""
    program = single(source)
    stmt = None
    for _, node in program.statements():
        if marker in pretty_print(node):
            stmt = node  # keep the last (innermost) one
    assert stmt is not None, "marker %r not found" % marker
    config = RepairConfig(patterns=frozenset(ids), candidate_cap=cap)
    kept, _, _ = generate_for_statement(
        program, (PATH, stmt.preorder_index), 1, 1.0, config, 0)
    return kept


def patched(cands, pattern=None):
    return [c.patched_texts[PATH] for c in cands
            if pattern is None or c.pattern_id == pattern]


class TestOperatorMutation:
    def test_relational_swap_yields_five(self):
        cands = candidates("""
        class Main {
            boolean f(int a, int b) {
                return a < b;
            }
        }
        """, "return a < b;", {"FP11.1"})
        got = patched(cands)
        assert len(got) == 5
        for op in ("<=", ">", ">=", "==", "!="):
            assert any("a %s b" % op in t for t in got)
        assert not any("a < b" in t for t in got)

    def test_logical_swap(self):
        cands = candidates("""
        class Main {
            boolean f(boolean p, boolean q) {
                return p && q;
            }
        }
        """, "p && q", {"FP11.1"})
        assert [t for t in patched(cands) if "p || q" in t]
        assert len(cands) == 1

    def test_string_concat_not_swapped(self):
        cands = candidates("""
        class Main {
            String f(String s, int n) {
                return s + n;
            }
        }
        """, "s + n", {"FP11.1"})
        assert cands == []

    def test_priority_reassociation(self):
        cands = candidates("""
        class Main {
            int f(int a, int b, int c) {
                return a - b * c;
            }
        }
        """, "a - b * c", {"FP11.2"})
        assert any("(a - b) * c" in t for t in patched(cands))

    def test_instanceof_to_null_check(self):
        cands = candidates("""
        class Animal { }
        class Dog extends Animal { }
        class Main {
            boolean f(Animal x) {
                return x instanceof Dog;
            }
        }
        """, "instanceof", {"FP11.3"})
        got = patched(cands)
        assert len(got) == 2
        assert any("return x != null;" in t for t in got)
        assert any("return x == null;" in t for t in got)


class TestLiteralMutation:
    def test_int_neighborhood(self):
        cands = candidates("""
        class Main {
            int f() {
                int n = 5;
                return n;
            }
        }
        """, "int n = 5;", {"FP9.1"})
        got = patched(cands)
        for v in (0, 1, -1, 6, 4):
            assert any("int n = %d;" % v in t
                       or "int n = -%d;" % -v in t for t in got)

    def test_donor_literals_follow_pinned_set(self):
        cands = candidates("""
        class Main {
            int other() {
                return 77;
            }
            int f() {
                int n = 5;
                return n;
            }
        }
        """, "int n = 5;", {"FP9.1"})
        donor = [c for c in cands if c.donor_distance is not None]
        assert any("int n = 77;" in t for t in patched(donor))
        # pinned template alternatives all schedule before donor-backed ones
        free = [c.sequence_no for c in cands if c.donor_distance is None]
        assert max(free) < min(c.sequence_no for c in donor)

    def test_boolean_flip_only(self):
        cands = candidates("""
        class Main {
            boolean f() {
                boolean b = true;
                return b;
            }
        }
        """, "boolean b = true;", {"FP9.1"})
        assert len(cands) == 1
        assert "boolean b = false;" in patched(cands)[0]


class TestVariableMutation:
    def test_never_replaces_with_itself(self):
        cands = candidates("""
        class Main {
            int f(int a, int b) {
                return a;
            }
        }
        """, "return a;", {"FP13.1"})
        assert patched(cands)
        assert all("return b;" in t for t in patched(cands))


class TestInvocationMutation:
    SRC = """
    class Main {
        int max(int a, int b) {
            if (a > b) {
                return a;
            }
            return b;
        }
        int min(int a, int b) {
            if (a < b) {
                return a;
            }
            return b;
        }
        float avg(int a, int b) {
            return (a + b) / 2.0;
        }
        void log(int a, int b) {
        }
        int pick(int x, int y) {
            return this.max(x, y);
        }
    }
    """

    def test_callee_swap_requires_same_signature(self):
        cands = candidates(self.SRC, "this.max(x, y)", {"FP10.1"})
        got = patched(cands)
        # min and pick share the signature (the recursive self-call dies at
        # validation, not generation); avg (float) and log (void) do not
        assert len(got) == 2
        assert any("return this.min(x, y);" in t for t in got)
        assert not any("avg" in t and "this.avg(x, y)" in t for t in got)

    def test_builtin_clone_never_offered(self):
        cands = candidates("""
        class Main {
            int calls;
            void ping() {
                this.calls = this.calls + 1;
            }
            void pong() {
                this.calls = 0;
            }
            void go() {
                this.ping();
            }
        }
        """, "this.ping();", {"FP10.1"})
        got = patched(cands)
        assert got and all("clone" not in t for t in got)
        assert any("this.pong();" in t for t in got)

    def test_drop_argument_needs_overload(self):
        cands = candidates("""
        class Main {
            int f(int a, int b) {
                return a + b;
            }
            int f(int x) {
                return x;
            }
            int go(int p, int q) {
                return this.f(p, q);
            }
        }
        """, "this.f(p, q)", {"FP10.3"})
        got = patched(cands)
        assert any("return this.f(p);" in t for t in got)
        assert any("return this.f(q);" in t for t in got)

    def test_add_argument_from_scope(self):
        cands = candidates("""
        class Main {
            int g(int a) {
                return a;
            }
            int g(int a, int b) {
                return a + b;
            }
            int go(int p, int q) {
                return this.g(p);
            }
        }
        """, "this.g(p)", {"FP10.4"})
        assert any("this.g(p, q)" in t for t in patched(cands))


class TestGuards:
    CAST_SRC = """
    class Animal {
        int noise() {
            return 0;
        }
    }
    class Dog extends Animal {
        int bark() {
            return 9;
        }
    }
    class Main {
        void f(Animal a) {
            ((Dog) a).bark();
        }
    }
    """

    def test_cast_checker_wraps_statement(self):
        cands = candidates(self.CAST_SRC, "bark", {"FP1"})
        got = patched(cands)
        assert len(got) == 1
        assert "if (a instanceof Dog) {" in got[0]
        assert "((Dog) a).bark();" in got[0]

    def test_already_guarded_cast_not_matched(self):
        cands = candidates("""
        class Animal { }
        class Dog extends Animal {
            int bark() {
                return 9;
            }
        }
        class Main {
            void f(Animal a) {
                if (a instanceof Dog) {
                    ((Dog) a).bark();
                }
            }
        }
        """, "bark", {"FP1"})
        assert cands == []

    def test_null_check_default_return_uses_type_default(self):
        source = """
        class Other {
            %s tag() {
                return %s;
            }
        }
        class Main {
            %s f(Other o) {
                return o.tag();
            }
        }
        """
        cands = candidates(source % ("String", '"x"', "String"),
                           "o.tag()", {"FP2.2"})
        assert any("return new String();" in t for t in patched(cands))
        cands = candidates(source % ("int", "4", "int"),
                           "o.tag()", {"FP2.2"})
        assert any("return 0;" in t for t in patched(cands))

    def test_missed_invocation_inserts_before_only(self):
        cands = candidates("""
        class Main {
            int count;
            boolean open;
            void unlock() {
                this.open = true;
            }
            void bump() {
                this.count = this.count + 1;
            }
        }
        """, "this.count = this.count + 1;", {"FP4.1"})
        assert cands
        for c in cands:
            assert [e.action for e in c.patch.edits] == ["insert_before"]
        want = [t for t in patched(cands) if "this.unlock();" in t]
        assert want
        assert all(t.index("this.unlock();") < t.index("this.count = ")
                   for t in want)


class TestConditionMutation:
    def test_drop_clause(self):
        cands = candidates("""
        class Main {
            int f(int a, int b) {
                if (a > 0 && b > 0) {
                    return 1;
                }
                return 0;
            }
        }
        """, "a > 0 && b > 0", {"FP6.2"})
        got = patched(cands)
        assert any("if (a > 0) {" in t for t in got)
        assert any("if (b > 0) {" in t for t in got)


class TestDivisionMutation:
    def test_cast_dividend(self):
        cands = candidates("""
        class Main {
            float rate(int hits, int total) {
                return hits / total;
            }
        }
        """, "hits / total", {"FP8.1"})
        assert any("(float) hits / total" in t for t in patched(cands))


class TestStructural:
    def test_move_respects_def_use(self):
        cands = candidates("""
        class Main {
            int f(int n) {
                int a = n + 1;
                int b = a * 2;
                return b;
            }
        }
        """, "int a = n + 1;", {"FP14"})
        # `a` is read by the next statement and `return b` reads b: the only
        # legal other position for the declaration is... none at all
        assert cands == []

    def test_move_emits_nearest_destination_first(self):
        cands = candidates("""
        class Main {
            int total;
            void f(int n) {
                this.total = this.total + n;
                this.total = this.total * 2;
                this.total = this.total - 1;
            }
        }
        """, "this.total = this.total * 2;", {"FP14"})
        texts = patched(cands)
        assert len(texts) == 2
        first = texts[0].index("this.total = this.total * 2;")
        assert first < texts[0].index("this.total = this.total + n;")

    def test_delete_statement(self):
        cands = candidates("""
        class Main {
            int n;
            void f() {
                this.n = 1;
                this.n = 2;
            }
        }
        """, "this.n = 1;", {"FP15.1"})
        assert len(cands) == 1
        assert "this.n = 1;" not in patched(cands)[0]

    def test_delete_skips_used_declarations(self):
        cands = candidates("""
        class Main {
            int f() {
                int a = 3;
                return a;
            }
        }
        """, "int a = 3;", {"FP15.1"})
        assert cands == []

    def test_method_body_reset(self):
        cands = candidates("""
        class Main {
            int fee(int n) {
                return n * 7;
            }
        }
        """, "return n * 7;", {"FP15.2"})
        got = patched(cands)
        assert len(got) == 1
        assert "int fee(int n) {\n        return 0;\n    }" in got[0]
