"""Donor-code harvesting: ingredients for pattern instantiation.

Search is local to the buggy statement's file. Pools are pruned by type
relevance (an entry must relate by widening compatibility, either way, to
some type the enclosing method mentions) and sorted by tree distance to the
buggy statement, ties by source position, so "nearby first" is stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .edits import ast_distance
from .lang.parser import SourceFile
from .lang.typecheck import (
    MethodInfo,
    Program,
    assignable,
    enclosing_class,
    enclosing_method,
)
from .nodes import AstNode, EXCEPTION_CLASS, LangType, NodeKind, class_type, node_root


def compatible(src: LangType, dst: LangType, table) -> bool:
    """Donor/slot compatibility: identical, int into float, subclass into
    superclass, or null into any reference type."""
    return assignable(src, dst, table)


@dataclass
class DonorEntry:
    node: AstNode
    lang_type: LangType
    distance: int
    name: str | None = None            # variables
    method: MethodInfo | None = None   # method signatures


@dataclass
class DonorSet:
    expressions: list[DonorEntry] = field(default_factory=list)
    variables: list[DonorEntry] = field(default_factory=list)
    literals: list[DonorEntry] = field(default_factory=list)
    methods: list[DonorEntry] = field(default_factory=list)
    conditions: list[DonorEntry] = field(default_factory=list)

    def in_scope_names(self) -> set[str]:
        return {e.name for e in self.variables}


COMPOUND_EXPR_KINDS = frozenset({
    NodeKind.METHOD_CALL, NodeKind.FIELD_ACCESS, NodeKind.ARRAY_ACCESS,
    NodeKind.INFIX, NodeKind.PREFIX, NodeKind.CAST, NodeKind.INSTANCEOF,
    NodeKind.COND_EXPR, NodeKind.CLASS_CREATION, NodeKind.ARRAY_CREATION,
})


def collect_donors(program: Program, stmt: AstNode,
                   distance_metric: str = "path") -> DonorSet:
    """Harvest donor pools for a buggy statement.

    The buggy statement's own subtree is excluded from every pool, and the
    variables pool only holds names lexically visible at the statement.
    """
    root = node_root(stmt)
    source = _file_of(program, root)
    table = program.classes
    inside = {id(n) for n in stmt.walk()}
    referenced = _method_types(stmt)

    def dist(node: AstNode) -> int:
        return ast_distance(node, stmt, metric=distance_metric)

    def relevant(lt: LangType | None) -> bool:
        if lt is None or lt.kind in ("void", "null"):
            return False
        return any(compatible(lt, ref, table) or compatible(ref, lt, table)
                   for ref in referenced)

    donors = DonorSet()
    cond_ids = set()
    for node in root.walk():
        if id(node) in inside:
            continue
        for cond in _condition_children(node):
            if id(cond) not in inside:
                cond_ids.add(id(cond))
        if node.kind == NodeKind.LITERAL:
            if relevant(node.inferred_type):
                donors.literals.append(DonorEntry(
                    node=node, lang_type=node.inferred_type, distance=dist(node)))
        elif node.kind in COMPOUND_EXPR_KINDS and node.inferred_type is not None:
            if relevant(node.inferred_type):
                donors.expressions.append(DonorEntry(
                    node=node, lang_type=node.inferred_type, distance=dist(node)))

    for node in root.walk():
        if id(node) in cond_ids and node.inferred_type is not None:
            donors.conditions.append(DonorEntry(
                node=node, lang_type=node.inferred_type, distance=dist(node)))

    for name, lang_type, decl in _visible_variables(program, source, stmt):
        if relevant(lang_type):
            donors.variables.append(DonorEntry(
                node=decl, lang_type=lang_type, distance=dist(decl), name=name))

    cls = enclosing_class(stmt)
    if cls is not None:
        seen = set()
        for info in table.hierarchy(cls.label):
            for m in info.methods:
                key = (m.name, tuple(str(t) for t in m.param_types))
                if key in seen or m.node is None:
                    continue
                seen.add(key)
                if node_root(m.node) is not root:
                    continue  # local-file search only
                donors.methods.append(DonorEntry(
                    node=m.node, lang_type=m.return_type,
                    distance=dist(m.node), name=m.name, method=m))

    for pool in (donors.expressions, donors.variables, donors.literals,
                 donors.methods, donors.conditions):
        pool.sort(key=lambda e: (e.distance, e.node.span[0], e.name or ""))
    return donors


def _file_of(program: Program, root: AstNode) -> SourceFile:
    for f in program.files:
        if f.ast is root:
            return f
    raise ValueError("statement does not belong to the program")


def _method_types(stmt: AstNode) -> set[LangType]:
    """Every type mentioned inside the enclosing method (or the statement
    itself when it sits outside one)."""
    scope = enclosing_method(stmt) or stmt
    out = set()
    for node in scope.walk():
        if node.inferred_type is not None and node.inferred_type.kind != "null":
            out.add(node.inferred_type)
    return out


def _condition_children(node: AstNode):
    k = node.kind
    if k in (NodeKind.IF_STMT, NodeKind.WHILE_STMT, NodeKind.COND_EXPR):
        yield node.children[0]
    elif k == NodeKind.FOR_STMT:
        yield node.children[1]
    elif k == NodeKind.ASSERT_STMT:
        yield node.children[0]


def _visible_variables(program: Program, source: SourceFile, stmt: AstNode):
    """(name, type, decl node) for parameters and locals declared before
    the statement, innermost declaration shadowing outer ones.  Fields are
    deliberately absent: as donors they travel through the expressions pool
    in their qualified `this.f` form."""
    found: dict[str, tuple[LangType, AstNode]] = {}

    method = enclosing_method(stmt)
    if method is not None:
        params = method.children[1:-1] if method.kind == NodeKind.METHOD_DECL \
            else method.children[:-1]
        for p in params:
            found[p.label] = (p.children[0].inferred_type, p)

    # locals from enclosing blocks, only declarations textually before us
    cur = stmt
    while cur.parent is not None:
        parent = cur.parent
        if parent.kind == NodeKind.BLOCK:
            for sibling in parent.children:
                if sibling is cur:
                    break
                if sibling.kind == NodeKind.VAR_DECL_STMT:
                    found[sibling.label] = (sibling.children[0].inferred_type, sibling)
        elif parent.kind == NodeKind.FOR_STMT:
            init = parent.children[0]
            if init.kind == NodeKind.VAR_DECL_STMT and init is not cur:
                found[init.label] = (init.children[0].inferred_type, init)
        elif parent.kind == NodeKind.CATCH_CLAUSE:
            found[parent.label] = (class_type(EXCEPTION_CLASS), parent)
        cur = parent

    for name, (lang_type, decl) in found.items():
        yield name, lang_type, decl
