"""Tree edits: purity, the six actions, distance, normalized equality."""

from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from minij_repair.edits import (
    AstEdit,
    EditError,
    apply_edits,
    ast_distance,
    canonical,
    normalize_equal,
)
from minij_repair.nodes import NodeKind, node_root
from minij_repair.lang.parser import parse
from minij_repair.lang.printer import pretty_print
from minij_repair.lang.typecheck import type_check

from helpers import single


SOURCE = """
class Bag {
    int count;
    void put(int n) {
        int before = this.count;
        this.count = before + n;
        assert(this.count >= before);
    }
    int peek() {
        return this.count;
    }
}
"""


def parsed():
    return parse(SOURCE, "src/Main.mj").ast


def stmts_of(root, method):
    for node in root.walk():
        if node.kind == NodeKind.METHOD_DECL and node.label == method:
            block = node.children[-1]
            return block, list(block.children)
    raise AssertionError("method %s not found" % method)


def find(root, kind, label=None):
    for node in root.walk():
        if node.kind == kind and (label is None or node.label == label):
            return node
    raise AssertionError("no %s node" % kind)


class TestApply:
    def test_input_tree_untouched(self):
        root = parse(SOURCE, "src/Main.mj").ast
        before = pretty_print(root)
        block, stmts = stmts_of(root, "put")
        apply_edits(root, [AstEdit("delete", stmts[0])])
        assert pretty_print(root) == before

    def test_update_swaps_subtree(self):
        root = parsed()
        ret = find(root, NodeKind.RETURN_STMT)
        value = ret.children[0]
        payload = parse("class X { int f() { return 42; } }", "x")
        lit = find(payload.ast, NodeKind.LITERAL)
        edited = apply_edits(root, [AstEdit("update", value, payload=lit)])
        assert "return 42;" in pretty_print(edited)
        assert node_root(value) is root  # original untouched

    def test_delete(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        edited = apply_edits(root, [AstEdit("delete", stmts[2])])
        assert "assert" not in pretty_print(edited)

    def test_insert_before_and_after(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        helper = parse("class X { void f() { this.count = 0; } }", "x")
        stmt = stmts_of(helper.ast, "f")[1][0]
        for action, expected_index in (("insert_before", 0), ("insert_after", 1)):
            edited = apply_edits(root, [AstEdit(action, stmts[0], payload=stmt)])
            _, new_stmts = stmts_of(edited, "put")
            assert len(new_stmts) == 4
            assert "this.count = 0;" in pretty_print(new_stmts[expected_index])

    def test_wrap_consumes_extent(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        guard = parse(
            "class X { void f(int n) { if (n > 0) { return; } } }", "x")
        if_stmt = stmts_of(guard.ast, "f")[1][0]
        edited = apply_edits(
            root, [AstEdit("wrap", stmts[0], payload=if_stmt, extent=3)])
        _, new_stmts = stmts_of(edited, "put")
        assert len(new_stmts) == 1
        assert new_stmts[0].kind == NodeKind.IF_STMT

    def test_move_to_destination(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        edited = apply_edits(root, [AstEdit("move", stmts[2], destination=0)])
        _, new_stmts = stmts_of(edited, "put")
        assert new_stmts[0].kind == NodeKind.ASSERT_STMT

    def test_sequential_edits_share_identity_map(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        edited = apply_edits(root, [
            AstEdit("delete", stmts[2]),
            AstEdit("move", stmts[1], destination=0),
        ])
        _, new_stmts = stmts_of(edited, "put")
        assert [s.kind for s in new_stmts] == [
            NodeKind.ASSIGN_STMT, NodeKind.VAR_DECL_STMT]

    def test_preorder_indices_recomputed(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        edited = apply_edits(root, [AstEdit("delete", stmts[0])])
        assert [n.preorder_index for n in edited.walk()] == list(
            range(sum(1 for _ in edited.walk())))

    def test_edited_tree_reparses_and_typechecks(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        edited = apply_edits(root, [AstEdit("delete", stmts[2])])
        type_check([parse(pretty_print(edited), "src/Main.mj")])


class TestApplyErrors:
    def test_unknown_action(self):
        with pytest.raises(EditError):
            AstEdit("replace", parsed())

    def test_foreign_target(self):
        a, b = parsed(), parsed()
        _, stmts = stmts_of(b, "put")
        with pytest.raises(EditError, match="does not belong"):
            apply_edits(a, [AstEdit("delete", stmts[0])])

    def test_dangling_target(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        inner = stmts[0].children[-1]  # initializer inside the deleted stmt
        with pytest.raises(EditError, match="dangling"):
            apply_edits(root, [
                AstEdit("delete", stmts[0]),
                AstEdit("update", inner, payload=stmts[1]),
            ])

    def test_update_needs_payload(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        with pytest.raises(EditError, match="payload"):
            apply_edits(root, [AstEdit("update", stmts[0])])

    def test_statement_action_outside_block(self):
        root = parsed()
        ret = find(root, NodeKind.RETURN_STMT)
        value = ret.children[0]  # child of RETURN_STMT, not of a block
        with pytest.raises(EditError, match="arity"):
            apply_edits(root, [AstEdit("delete", value)])

    def test_wrap_extent_too_large(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        payload = stmts_of(parsed(), "peek")[1][0]
        with pytest.raises(EditError, match="extent"):
            apply_edits(root, [
                AstEdit("wrap", stmts[1], payload=payload, extent=3)])

    def test_move_destination_out_of_range(self):
        root = parsed()
        _, stmts = stmts_of(root, "put")
        with pytest.raises(EditError, match="destination"):
            apply_edits(root, [AstEdit("move", stmts[0], destination=9)])


def bfs_distance(a, b) -> int:
    """Edge count oracle: breadth-first search over the undirected tree."""
    seen = {id(a)}
    frontier = deque([(a, 0)])
    while frontier:
        node, d = frontier.popleft()
        if node is b:
            return d
        neighbours = list(node.children)
        if node.parent is not None:
            neighbours.append(node.parent)
        for n in neighbours:
            if id(n) not in seen:
                seen.add(id(n))
                frontier.append((n, d + 1))
    raise AssertionError("disconnected nodes")


class TestDistance:
    def test_path_matches_bfs_oracle_on_all_pairs(self):
        root = parsed()
        nodes = list(root.walk())
        for a in nodes[::3]:
            for b in nodes[::5]:
                assert ast_distance(a, b) == bfs_distance(a, b)

    def test_preorder_delta(self):
        root = parsed()
        nodes = list(root.walk())
        assert ast_distance(nodes[2], nodes[7], metric="preorder_delta") == 5

    def test_rejects_unknown_metric(self):
        root = parsed()
        with pytest.raises(ValueError):
            ast_distance(root, root, metric="euclid")

    def test_rejects_cross_file_nodes(self):
        with pytest.raises(ValueError):
            ast_distance(parsed(), parsed())


def expr(text: str, typed: bool = False):
    """Parse the expression as a return value; optionally type-check."""
    source = "class X { int a; int b; boolean f() { return %s; } }" % text
    file = parse(source, "src/Main.mj")
    if typed:
        file = type_check([file]).file("src/Main.mj")
    ret = find(file.ast, NodeKind.RETURN_STMT)
    return ret.children[0]


def int_expr(text: str, typed: bool = True):
    source = "class X { int a; int b; int f() { return %s; } }" % text
    file = parse(source, "src/Main.mj")
    if typed:
        file = type_check([file]).file("src/Main.mj")
    ret = find(file.ast, NodeKind.RETURN_STMT)
    return ret.children[0]


class TestCanonical:
    def test_negated_equality_folds(self):
        assert normalize_equal(expr("!(this.a == this.b)"),
                               expr("this.a != this.b"))
        assert normalize_equal(expr("!(this.a != this.b)"),
                               expr("this.a == this.b"))

    def test_negation_elsewhere_kept(self):
        assert not normalize_equal(expr("!(this.a < this.b)"),
                                   expr("this.a >= this.b"))

    def test_minus_literal_folds(self):
        assert normalize_equal(int_expr("-1", typed=False),
                               int_expr("- 1", typed=False))
        a = canonical(int_expr("-7", typed=False))
        assert a[0] == NodeKind.LITERAL and a[2] == -7

    def test_equality_operands_commute(self):
        assert normalize_equal(expr("this.a == this.b"),
                               expr("this.b == this.a"))
        assert normalize_equal(expr("this.a != this.b"),
                               expr("this.b != this.a"))

    def test_relational_operands_do_not_commute(self):
        assert not normalize_equal(expr("this.a < this.b"),
                                   expr("this.b < this.a"))

    def test_int_addition_commutes_only_with_types(self):
        # untyped trees must not be reordered: + could be string concat
        assert not normalize_equal(int_expr("this.a + this.b", typed=False),
                                   int_expr("this.b + this.a", typed=False))
        assert normalize_equal(int_expr("this.a + this.b"),
                               int_expr("this.b + this.a"))

    def test_string_concat_never_commutes(self):
        source = 'class X { String f(String s, int n) { return %s; } }'
        trees = []
        for text in ("s + n", "n + s"):
            file = type_check([parse(source % text, "src/Main.mj")])
            ret = find(file.file("src/Main.mj").ast, NodeKind.RETURN_STMT)
            trees.append(ret.children[0])
        assert not normalize_equal(*trees)

    def test_logical_operators_keep_order(self):
        source = "class X { boolean f(boolean p, boolean q) { return %s; } }"
        a = parse(source % "p && q", "x")
        b = parse(source % "q && p", "x")
        assert not normalize_equal(find(a.ast, NodeKind.RETURN_STMT),
                                   find(b.ast, NodeKind.RETURN_STMT))

    def test_spans_and_indices_ignored(self):
        padded = parse("class X {  int  f( ) {   return 1 + 2;  } }", "x")
        tight = parse("class X { int f() { return 1 + 2; } }", "x")
        assert normalize_equal(padded.ast, tight.ast)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(["==", "!="]),
           st.integers(-50, 50), st.integers(-50, 50))
    def test_commuted_comparison_property(self, op, x, y):
        a = expr("%d %s %d" % (x, op, y))
        b = expr("%d %s %d" % (y, op, x))
        assert normalize_equal(a, b)
