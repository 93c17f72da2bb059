"""Statement-structure patterns: FP14 (move statement) and FP15
(remove statement / remove method body).
"""

from __future__ import annotations

from ..edits import AstEdit, DELETE, MOVE, Patch, UPDATE, normalize_equal
from ..nodes import (
    BLOCK, METHOD_DECL, VAR_DECL_STMT, VAR_REF, AstNode, clone_tree,
)
from .base import PatternContext, PatternMatch, block, default_value, return_stmt
from .descriptors import BY_ID


def _mentions(node: AstNode, name: str) -> bool:
    return any(s.kind == VAR_REF and s.label == name for s in node.walk())


# --- FP14: move the suspicious statement within its block ---

def match_fp14(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    stmt = node
    parent = stmt.parent
    if parent is None or parent.kind != BLOCK or len(parent.children) < 2:
        return []
    return [PatternMatch(BY_ID["FP14"], stmt, stmt)]


def _legal_destination(siblings: list[AstNode], i: int, j: int) -> bool:
    """Def-use legality of moving siblings[i] to final index j: declarations
    the statement reads must still precede it, and statements reading what
    it declares must still follow it."""
    stmt = siblings[i]
    final = siblings[:i] + siblings[i + 1:]
    final.insert(j, stmt)
    pos = {id(s): k for k, s in enumerate(final)}

    decls = {s.label: s for s in siblings
             if s.kind == VAR_DECL_STMT and s is not stmt}
    for name, decl in decls.items():
        if _mentions(stmt, name) and pos[id(decl)] > pos[id(stmt)]:
            return False
    if stmt.kind == VAR_DECL_STMT:
        for s in siblings:
            if s is stmt:
                continue
            if _mentions(s, stmt.label) and pos[id(s)] < pos[id(stmt)]:
                return False
    return True


def gen_fp14(match, donors, ctx) -> list[Patch]:
    stmt = match.stmt
    siblings = list(stmt.parent.children)
    i = siblings.index(stmt)
    destinations = sorted((j for j in range(len(siblings)) if j != i),
                          key=lambda j: (abs(j - i), j))
    out = []
    for j in destinations:
        if not _legal_destination(siblings, i, j):
            continue
        edit = AstEdit(MOVE, target=stmt, destination=j)
        out.append(Patch([edit], "FP14"))
    return out


# --- FP15.1: remove the suspicious statement ---

def match_fp15_1(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    stmt = node
    parent = stmt.parent
    if parent is None or parent.kind != BLOCK:
        return []
    if stmt.kind == VAR_DECL_STMT:
        # deleting a declaration would orphan any later use of the name
        for sib in parent.children:
            if sib is not stmt and _mentions(sib, stmt.label):
                return []
    return [PatternMatch(BY_ID["FP15.1"], stmt, stmt)]


def gen_fp15_1(match, donors, ctx) -> list[Patch]:
    return [Patch([AstEdit(DELETE, target=match.stmt)], "FP15.1")]


# --- FP15.2: replace the enclosing method's body with a default return ---

def match_fp15_2(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if node is None or node.kind != METHOD_DECL:
        return []
    return [PatternMatch(BY_ID["FP15.2"], node, ctx.stmt)]


def gen_fp15_2(match, donors, ctx: PatternContext) -> list[Patch]:
    method = match.node
    body = method.children[-1]
    rt = method.children[0].inferred_type
    if rt is not None and rt.kind != "void":
        new_body = block([return_stmt(default_value(rt))])
    else:
        new_body = block([])
    if normalize_equal(body, new_body):
        return []
    edit = AstEdit(UPDATE, target=body, payload=new_body)
    return [Patch([edit], "FP15.2")]
