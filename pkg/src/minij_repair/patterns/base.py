"""Shared scaffolding for pattern matchers and generators.

Matchers receive one AST node plus a PatternContext and return zero or more
PatternMatch records; generators turn a match into concrete Patch objects.
Generators emit candidates already in their documented local order:
donor-free templates first in fixed template order, then donor-backed
candidates ascending by (donor distance, donor source position). The
scheduler preserves that order through its emission-index tie-break.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..donors import DonorEntry, DonorSet, compatible
from ..edits import normalize_equal
from ..lang.typecheck import Program
from ..nodes import (
    ARRAY_ACCESS, BLOCK, BOOLEAN, CAST, CATCH_CLAUSE, CLASS_CREATION,
    COND_EXPR, CTOR_DECL, EXPR_STMT, FIELD_ACCESS, FIELD_DECL, FLOAT,
    FOR_STMT, IF_STMT, INFIX, INSTANCEOF, INT, LITERAL, METHOD_CALL,
    METHOD_DECL, NULL, PARAM, PREFIX, RETURN_STMT, STRING, SUPER_REF,
    THIS_REF, TYPE_REF, VAR_DECL_STMT, VAR_REF, WHILE_STMT, AstNode,
    LangType, ancestors, clone_tree, enclosing,
)
from .descriptors import PatternDescriptor

SYNTH = (0, 0)


@dataclass
class PatternContext:
    program: Program
    path: str
    stmt: AstNode

    def enclosing_method(self, node: AstNode | None = None) -> AstNode | None:
        return enclosing(node or self.stmt, (METHOD_DECL, CTOR_DECL))

    def method_return_type(self, node: AstNode | None = None) -> LangType | None:
        """Return type of the enclosing method; None inside a constructor."""
        m = self.enclosing_method(node)
        if m is None or m.kind == CTOR_DECL:
            return None
        return m.children[0].inferred_type


@dataclass
class PatternMatch:
    descriptor: PatternDescriptor
    node: AstNode
    stmt: AstNode
    bindings: dict = field(default_factory=dict)


# --- node builders (all spans synthetic; apply_edits backfills them) ---

def lit(lang_type: LangType, value) -> AstNode:
    # label follows the parser's tagging so printing and normalization
    # treat synthetic literals exactly like parsed ones
    return AstNode(LITERAL, label=str(lang_type), literal=value, span=SYNTH,
                   inferred_type=lang_type)


def lit_int(value: int) -> AstNode:
    if value < 0:
        return prefix("-", lit(INT, -value))
    return lit(INT, value)


def lit_float(value: float) -> AstNode:
    if value < 0.0:
        return prefix("-", lit(FLOAT, -value))
    return lit(FLOAT, value)


def lit_bool(value: bool) -> AstNode:
    return lit(BOOLEAN, value)


def lit_null() -> AstNode:
    return lit(NULL, None)


def var_ref(name: str) -> AstNode:
    return AstNode(VAR_REF, label=name, span=SYNTH)


def type_ref(lang_type: LangType) -> AstNode:
    return AstNode(TYPE_REF, label=str(lang_type), span=SYNTH,
                   inferred_type=lang_type)


def infix(op: str, left: AstNode, right: AstNode) -> AstNode:
    return AstNode(INFIX, label=op, children=[left, right], span=SYNTH)


def prefix(op: str, operand: AstNode) -> AstNode:
    return AstNode(PREFIX, label=op, children=[operand], span=SYNTH)


def cast(lang_type: LangType, operand: AstNode) -> AstNode:
    return AstNode(CAST, children=[type_ref(lang_type), operand], span=SYNTH)


def instanceof(operand: AstNode, lang_type: LangType) -> AstNode:
    return AstNode(INSTANCEOF, children=[operand, type_ref(lang_type)], span=SYNTH)


def block(statements: list[AstNode]) -> AstNode:
    return AstNode(BLOCK, children=statements, span=SYNTH)


def if_stmt(cond: AstNode, then: list[AstNode],
            orelse: list[AstNode] | None = None) -> AstNode:
    children = [cond, block(then)]
    if orelse is not None:
        children.append(block(orelse))
    return AstNode(IF_STMT, children=children, span=SYNTH)


def return_stmt(value: AstNode | None = None) -> AstNode:
    children = [] if value is None else [value]
    return AstNode(RETURN_STMT, children=children, span=SYNTH)


def call(receiver: AstNode, name: str, args: list[AstNode]) -> AstNode:
    return AstNode(METHOD_CALL, label=name, children=[receiver] + args, span=SYNTH)


def this_call(name: str, args: list[AstNode]) -> AstNode:
    return call(AstNode(THIS_REF, span=SYNTH), name, args)


def super_call(name: str, args: list[AstNode]) -> AstNode:
    return call(AstNode(SUPER_REF, span=SYNTH), name, args)


def expr_stmt(expression: AstNode) -> AstNode:
    return AstNode(EXPR_STMT, children=[expression], span=SYNTH)


def eq_null(operand: AstNode) -> AstNode:
    return infix("==", clone_tree(operand), lit_null())


def neq_null(operand: AstNode) -> AstNode:
    return infix("!=", clone_tree(operand), lit_null())


def default_value(lang_type: LangType | None) -> AstNode | None:
    """Canonical default for a type; None means the bare `return;` form."""
    if lang_type is None or lang_type.kind == "void":
        return None
    if lang_type == BOOLEAN:
        return lit_bool(False)
    if lang_type == INT or lang_type == FLOAT:
        return lit(INT, 0)
    if lang_type == STRING:
        return AstNode(CLASS_CREATION, label="String", span=SYNTH,
                       inferred_type=STRING)
    return lit_null()


# --- scope / structure helpers ---

ASSIGNABLE_KINDS = frozenset({VAR_REF, FIELD_ACCESS, ARRAY_ACCESS})


def in_scope(node: AstNode, scope_names: set[str]) -> bool:
    """True when every locally-resolved variable reference inside `node`
    names something visible at the repair site. Field references pass here;
    the per-candidate type gate has the final say."""
    for sub in node.walk():
        if sub.kind == VAR_REF:
            res = sub.resolved
            if isinstance(res, tuple) and res[0] == "local":
                if sub.label not in scope_names:
                    return False
            elif res is None and sub.label not in scope_names:
                return False
    return True


def condition_slot(node: AstNode) -> bool:
    """Is this node exactly the condition child of an if/while/for/ternary?"""
    parent = node.parent
    if parent is None:
        return False
    if parent.kind in (IF_STMT, WHILE_STMT, COND_EXPR):
        return parent.children[0] is node
    if parent.kind == FOR_STMT:
        return parent.children[1] is node
    return False


def guarded_by_null_check(stmt: AstNode, expression: AstNode) -> bool:
    """Does an enclosing if already compare `expression` against null?"""
    for anc in ancestors(stmt):
        if anc.kind != IF_STMT:
            continue
        for sub in anc.children[0].walk():
            if sub.kind == INFIX and sub.label in ("==", "!="):
                left, right = sub.children
                if _is_null(right) and normalize_equal(left, expression):
                    return True
                if _is_null(left) and normalize_equal(right, expression):
                    return True
    return False


def guarded_by_instanceof(stmt: AstNode, operand: AstNode, type_name: str) -> bool:
    for anc in ancestors(stmt):
        if anc.kind != IF_STMT:
            continue
        for sub in anc.children[0].walk():
            if (sub.kind == INSTANCEOF and sub.children[1].label == type_name
                    and normalize_equal(sub.children[0], operand)):
                return True
    return False


def _is_null(node: AstNode) -> bool:
    return node.kind == LITERAL and node.literal is None and \
        (node.inferred_type is None or node.inferred_type.kind == "null")


def fresh_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    i = 2
    while "%s%d" % (base, i) in taken:
        i += 1
    return "%s%d" % (base, i)


def names_in_method(method: AstNode | None, program: Program,
                    path: str) -> set[str]:
    """Every identifier that could collide with a new declaration inside
    `method`: params, locals, catch variables, field names of classes in
    the same file, and any referenced name (conservative)."""
    taken: set[str] = set()
    if method is not None:
        for sub in method.walk():
            if sub.kind in (PARAM, VAR_DECL_STMT, VAR_REF, CATCH_CLAUSE):
                taken.add(sub.label)
    src = program.file(path)
    for node in src.ast.walk():
        if node.kind == FIELD_DECL:
            taken.add(node.label)
    return taken


# --- donor enumeration ---

def donor_expression_pool(donors: DonorSet, want: LangType, table,
                          *, compound=True, variables=True, literals=True
                          ) -> list[tuple[AstNode, DonorEntry]]:
    """Merge the requested donor pools into replacement expressions of a
    type compatible with `want`, sorted by (distance, source position)."""
    scope = donors.in_scope_names()
    merged: list[tuple[int, int, int, AstNode, DonorEntry]] = []
    if compound:
        for entry in donors.expressions:
            if not compatible(entry.lang_type, want, table):
                continue
            if not in_scope(entry.node, scope):
                continue
            merged.append((entry.distance, entry.node.span[0], 0,
                           clone_tree(entry.node), entry))
    if variables:
        for entry in donors.variables:
            if not compatible(entry.lang_type, want, table):
                continue
            ref = var_ref(entry.name)
            ref.inferred_type = entry.lang_type
            merged.append((entry.distance, entry.node.span[0], 1, ref, entry))
    if literals:
        for entry in donors.literals:
            if not compatible(entry.lang_type, want, table):
                continue
            merged.append((entry.distance, entry.node.span[0], 2,
                           clone_tree(entry.node), entry))
    merged.sort(key=lambda item: (item[0], item[1], item[2]))
    return [(node, entry) for _, _, _, node, entry in merged]
