"""Donor pools: scope, locality, type relevance, ordering."""

import pytest

from minij_repair.donors import collect_donors
from minij_repair.lang.printer import pretty_print
from minij_repair.nodes import NodeKind

from helpers import build


MAIN = """
class Helper {
    int twist(int n) {
        return n * 2;
    }
}

class Main {
    int stock;
    String label;

    int twist(int n) {
        return n + 1;
    }

    int refill(int amount, int cap) {
        int before = this.stock;
        this.stock = before + amount;
        if (this.stock > cap) {
            this.stock = cap;
        }
        int after = this.stock;
        return after - before;
    }

    boolean empty() {
        return this.stock == 0;
    }
}
"""

OTHER = """
class Far {
    int lure(int k) {
        int bait = k * 7;
        return bait;
    }
}
"""

SUITE_SRC = """
class MainTest {
    void test_refill() {
        Main m = new Main();
        int got = m.refill(3, 10);
        assert(got == 3);
    }
}
"""


@pytest.fixture(scope="module")
def setting():
    program = build({
        "src/Main.mj": MAIN,
        "src/Far.mj": OTHER,
        "tests/suite.mj": SUITE_SRC,
    })
    root = program.file("src/Main.mj").ast
    assigns = [n for n in root.walk() if n.kind == NodeKind.ASSIGN_STMT]
    stmt = assigns[0]  # this.stock = before + amount;
    return program, stmt, collect_donors(program, stmt)


def texts(entries):
    return [pretty_print(e.node).strip() for e in entries]


class TestScope:
    def test_variables_are_params_and_prior_locals(self, setting):
        _, _, donors = setting
        assert {e.name for e in donors.variables} == {"amount", "cap", "before"}

    def test_later_declarations_invisible(self, setting):
        _, _, donors = setting
        assert "after" not in donors.in_scope_names()

    def test_fields_not_bare_variables(self, setting):
        _, _, donors = setting
        assert "stock" not in donors.in_scope_names()

    def test_fields_arrive_as_qualified_expressions(self, setting):
        _, _, donors = setting
        assert "this.stock" in texts(donors.expressions)

    def test_own_subtree_excluded(self, setting):
        _, stmt, donors = setting
        inside = {id(n) for n in stmt.walk()}
        for pool in (donors.expressions, donors.literals, donors.conditions):
            assert all(id(e.node) not in inside for e in pool)

    def test_outer_block_locals_visible_in_nested_block(self):
        program = build({"src/Main.mj": """
        class Main {
            int f(int x) {
                int outer = x * 2;
                if (x > 0) {
                    int y = 0;
                    return y;
                }
                return outer;
            }
        }
        """})
        root = program.file("src/Main.mj").ast
        ret = [n for n in root.walk() if n.kind == NodeKind.RETURN_STMT][0]
        donors = collect_donors(program, ret)
        assert {"x", "outer", "y"} <= donors.in_scope_names()

    def test_catch_variable_visible(self):
        # the body must mention the Exception type or relevance prunes it
        program = build({"src/Main.mj": """
        class Main {
            int f(int[] xs) {
                try {
                    return xs[0];
                } catch (Exception e) {
                    Exception kept = e;
                    return 0;
                }
            }
        }
        """})
        root = program.file("src/Main.mj").ast
        ret = [n for n in root.walk() if n.kind == NodeKind.RETURN_STMT][-1]
        donors = collect_donors(program, ret)
        assert {"e", "kept"} <= donors.in_scope_names()

    def test_for_init_visible_in_body(self):
        program = build({"src/Main.mj": """
        class Main {
            int f(int n) {
                int s = 0;
                for (int i = 0; i < n; i = i + 1) {
                    s = s + i;
                }
                return s;
            }
        }
        """})
        root = program.file("src/Main.mj").ast
        inner = [n for n in root.walk() if n.kind == NodeKind.ASSIGN_STMT][-1]
        donors = collect_donors(program, inner)
        assert "i" in donors.in_scope_names()


class TestLocality:
    def test_other_files_not_harvested(self, setting):
        _, _, donors = setting
        assert "bait" not in donors.in_scope_names()
        assert all("lure" not in t for t in texts(donors.expressions))
        assert all(e.name != "lure" for e in donors.methods)

    def test_suite_never_harvested(self, setting):
        _, _, donors = setting
        joined = " ".join(
            texts(donors.expressions) + texts(donors.literals)
            + texts(donors.conditions))
        assert "refill(3" not in joined and "got" not in joined

    def test_methods_from_same_file_same_class(self, setting):
        _, _, donors = setting
        names = {e.name for e in donors.methods}
        assert "empty" in names and "twist" in names
        # Helper.twist is another class: only Main's hierarchy contributes
        twist = next(e for e in donors.methods if e.name == "twist")
        assert "n + 1" in pretty_print(twist.node.children[-1])

    def test_synthesized_members_excluded(self, setting):
        _, _, donors = setting
        assert all(e.method.node is not None for e in donors.methods)
        assert "clone" not in {e.name for e in donors.methods}


class TestRelevance:
    def test_unrelated_types_pruned(self, setting):
        # refill mentions int/boolean/Main but never String
        _, _, donors = setting
        assert all(e.lang_type.kind != "string" for e in donors.expressions)
        assert all(e.lang_type.kind != "string" for e in donors.literals)

    def test_conditions_are_boolean(self, setting):
        _, _, donors = setting
        assert donors.conditions
        assert all(e.lang_type.kind == "boolean" for e in donors.conditions)
        assert "this.stock > cap" in texts(donors.conditions)


class TestOrdering:
    def test_sorted_by_distance_then_position(self, setting):
        _, _, donors = setting
        for pool in (donors.expressions, donors.variables, donors.literals,
                     donors.methods, donors.conditions):
            keys = [(e.distance, e.node.span[0]) for e in pool]
            assert keys == sorted(keys)

    def test_nearest_variable_first(self, setting):
        _, _, donors = setting
        # the local declared on the previous line beats the parameters
        assert donors.variables[0].name == "before"
