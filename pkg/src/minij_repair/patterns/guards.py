"""Guard-insertion patterns: FP1 (cast check), FP2 (null checks),
FP3 (range check), FP4 (missed statements).

All of these match at statement granularity and produce insert edits:
either a wrap of the suspicious statement or a new sibling next to it.
"""

from __future__ import annotations

from ..edits import AstEdit, INSERT_AFTER, INSERT_BEFORE, Patch, WRAP, canonical, normalize_equal
from ..nodes import (
    ARRAY_ACCESS, ARRAY_CREATION, ASSIGN_STMT, BLOCK, CAST, CATCH_CLAUSE,
    CLASS_CREATION, CLASS_DECL, CONTINUE_STMT, CTOR_DECL, FIELD_ACCESS,
    FOR_STMT, IF_STMT, INFIX, INSTANCEOF, LITERAL, METHOD_CALL, METHOD_DECL,
    RETURN_STMT, SUPER_REF, THIS_REF, TRY_STMT, VAR_DECL_STMT, VAR_REF,
    WHILE_STMT, AstNode, ancestors, clone_tree, enclosing,
)
from ..donors import compatible
from .base import (
    PatternContext, PatternMatch, block, default_value,
    donor_expression_pool, expr_stmt, fresh_name, guarded_by_instanceof,
    guarded_by_null_check, if_stmt, in_scope, infix, instanceof,
    names_in_method, neq_null, eq_null, return_stmt, this_call,
    ASSIGNABLE_KINDS,
)
from .descriptors import BY_ID


def _in_block(stmt: AstNode) -> bool:
    return stmt.parent is not None and stmt.parent.kind == BLOCK


def _defined_name(stmt: AstNode) -> str | None:
    """Name bound or rebound by this statement, if any."""
    if stmt.kind == VAR_DECL_STMT:
        return stmt.label
    if stmt.kind == ASSIGN_STMT and stmt.children[0].kind == VAR_REF:
        return stmt.children[0].label
    return None


def _mentions(node: AstNode, name: str) -> bool:
    return any(s.kind == VAR_REF and s.label == name for s in node.walk())


def _dependent_extent(stmt: AstNode) -> list[AstNode]:
    """The statement plus the contiguous run of following siblings that
    use the variable it defines; these travel into a guard block together
    so the guard cannot orphan a definition."""
    group = [stmt]
    name = _defined_name(stmt)
    if name is None:
        return group
    siblings = stmt.parent.children
    i = siblings.index(stmt) + 1
    while i < len(siblings) and _mentions(siblings[i], name):
        group.append(siblings[i])
        i += 1
    return group


# --- FP1: insert class cast checker ---

def match_fp1(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    stmt = node
    if not _in_block(stmt):
        return []
    out = []
    seen = set()
    for sub in stmt.walk():
        if sub.kind != CAST:
            continue
        target = sub.children[0].inferred_type
        if target is None or not target.is_reference or target.kind != "class":
            continue
        operand = sub.children[1]
        if guarded_by_instanceof(stmt, operand, target.name):
            continue
        key = (canonical(operand), target.name)
        if key in seen:
            continue
        seen.add(key)
        out.append(PatternMatch(BY_ID["FP1"], stmt, stmt,
                                {"exp": operand, "T": target}))
    return out


def gen_fp1(match: PatternMatch, donors, ctx: PatternContext) -> list[Patch]:
    stmt = match.stmt
    group = _dependent_extent(stmt)
    guard = instanceof(clone_tree(match.bindings["exp"]),
                       match.bindings["T"])
    body = [clone_tree(s) for s in group]
    edit = AstEdit(WRAP, target=stmt, payload=if_stmt(guard, body),
                   extent=len(group))
    return [Patch([edit], "FP1")]


# --- FP2: insert null pointer checker (five strategies) ---

_OPAQUE_RECEIVERS = frozenset({THIS_REF, SUPER_REF, LITERAL, CLASS_CREATION,
                               ARRAY_CREATION})


def _nullable_receivers(stmt: AstNode) -> list[AstNode]:
    """Reference-typed receiver expressions that could be null at `stmt`,
    deduplicated structurally, in source order."""
    out = []
    seen = set()
    for sub in stmt.walk():
        if sub.kind in (FIELD_ACCESS, METHOD_CALL, ARRAY_ACCESS):
            recv = sub.children[0]
        else:
            continue
        if recv.kind in _OPAQUE_RECEIVERS:
            continue
        lt = recv.inferred_type
        if lt is None or not lt.is_reference:
            continue
        if guarded_by_null_check(stmt, recv):
            continue
        key = canonical(recv)
        if key in seen:
            continue
        seen.add(key)
        out.append(recv)
    return out


def _match_fp2(pattern_id: str, node: AstNode, ctx: PatternContext,
               extra_filter) -> list[PatternMatch]:
    stmt = node
    if not _in_block(stmt):
        return []
    out = []
    for recv in _nullable_receivers(stmt):
        if extra_filter(recv, stmt, ctx):
            out.append(PatternMatch(BY_ID[pattern_id], stmt, stmt,
                                    {"exp": recv}))
    return out


def match_fp2_1(node, ctx):
    return _match_fp2("FP2.1", node, ctx, lambda recv, stmt, c: True)


def match_fp2_2(node, ctx):
    def wants_value_return(recv, stmt, c: PatternContext):
        rt = c.method_return_type(stmt)
        return rt is not None and rt.kind != "void"
    return _match_fp2("FP2.2", node, ctx, wants_value_return)


def match_fp2_3(node, ctx):
    def void_context(recv, stmt, c: PatternContext):
        rt = c.method_return_type(stmt)
        return rt is None or rt.kind == "void"
    return _match_fp2("FP2.3", node, ctx, void_context)


def match_fp2_4(node, ctx):
    def inside_loop(recv, stmt, c):
        for anc in ancestors(stmt):
            if anc.kind in (WHILE_STMT, FOR_STMT):
                return True
            if anc.kind in (METHOD_DECL, CTOR_DECL):
                return False
        return False
    return _match_fp2("FP2.4", node, ctx, inside_loop)


def match_fp2_5(node, ctx):
    def assignable_form(recv, stmt, c):
        return recv.kind in ASSIGNABLE_KINDS
    return _match_fp2("FP2.5", node, ctx, assignable_form)


def gen_fp2_1(match, donors, ctx) -> list[Patch]:
    stmt = match.stmt
    guard = neq_null(match.bindings["exp"])
    edit = AstEdit(WRAP, target=stmt, payload=if_stmt(guard, [clone_tree(stmt)]))
    return [Patch([edit], "FP2.1")]


def gen_fp2_2(match, donors, ctx: PatternContext) -> list[Patch]:
    rt = ctx.method_return_type(match.stmt)
    guard = eq_null(match.bindings["exp"])
    body = [return_stmt(default_value(rt))]
    edit = AstEdit(INSERT_BEFORE, target=match.stmt, payload=if_stmt(guard, body))
    return [Patch([edit], "FP2.2")]


def gen_fp2_3(match, donors, ctx) -> list[Patch]:
    guard = eq_null(match.bindings["exp"])
    edit = AstEdit(INSERT_BEFORE, target=match.stmt,
                   payload=if_stmt(guard, [return_stmt()]))
    return [Patch([edit], "FP2.3")]


def gen_fp2_4(match, donors, ctx) -> list[Patch]:
    guard = eq_null(match.bindings["exp"])
    skip = AstNode(CONTINUE_STMT, span=(0, 0))
    edit = AstEdit(INSERT_BEFORE, target=match.stmt,
                   payload=if_stmt(guard, [skip]))
    return [Patch([edit], "FP2.4")]


def gen_fp2_5(match, donors, ctx: PatternContext) -> list[Patch]:
    recv = match.bindings["exp"]
    out = []
    for repl, entry in donor_expression_pool(donors, recv.inferred_type,
                                             ctx.program.classes):
        if normalize_equal(repl, recv):
            continue
        if repl.kind == LITERAL and repl.literal is None:
            continue  # assigning null back is a no-op guard
        guard = eq_null(recv)
        fallback = AstNode(ASSIGN_STMT, children=[clone_tree(recv), repl],
                           span=(0, 0))
        edit = AstEdit(INSERT_BEFORE, target=match.stmt,
                       payload=if_stmt(guard, [fallback]))
        out.append(Patch([edit], "FP2.5", donor_distance=entry.distance))
    return out


# --- FP3: insert array range checker ---

def _bounds_guarded(stmt: AstNode, arr: AstNode) -> bool:
    for anc in ancestors(stmt):
        if anc.kind != IF_STMT:
            continue
        for sub in anc.children[0].walk():
            if (sub.kind == FIELD_ACCESS and sub.label == "length"
                    and normalize_equal(sub.children[0], arr)):
                return True
    return False


def match_fp3(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    stmt = node
    if not _in_block(stmt):
        return []
    out = []
    seen = set()
    for sub in stmt.walk():
        if sub.kind != ARRAY_ACCESS:
            continue
        arr, idx = sub.children
        if arr.inferred_type is None or arr.inferred_type.kind != "array":
            continue
        if _bounds_guarded(stmt, arr):
            continue
        key = (canonical(arr), canonical(idx))
        if key in seen:
            continue
        seen.add(key)
        out.append(PatternMatch(BY_ID["FP3"], stmt, stmt,
                                {"exp": arr, "index": idx}))
    return out


def gen_fp3(match, donors, ctx) -> list[Patch]:
    arr = match.bindings["exp"]
    idx = match.bindings["index"]
    lower = infix(">=", clone_tree(idx), AstNode(LITERAL, literal=0, span=(0, 0)))
    length = AstNode(FIELD_ACCESS, label="length",
                     children=[clone_tree(arr)], span=(0, 0))
    upper = infix("<", clone_tree(idx), length)
    guard = infix("&&", lower, upper)
    edit = AstEdit(WRAP, target=match.stmt,
                   payload=if_stmt(guard, [clone_tree(match.stmt)]))
    return [Patch([edit], "FP3")]


# --- FP4: insert a missed statement next to the suspicious one ---

def match_fp4_1(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if not _in_block(node):
        return []
    return [PatternMatch(BY_ID["FP4.1"], node, node)]


def gen_fp4_1(match, donors, ctx: PatternContext) -> list[Patch]:
    stmt = match.stmt
    table = ctx.program.classes
    method = ctx.enclosing_method(stmt)
    cls = enclosing(stmt, CLASS_DECL)
    out = []
    arg_sources = [e for e in stmt.walk()
                   if e.is_expression() and e.inferred_type is not None
                   and e.inferred_type.kind not in ("void", "null")]
    for entry in donors.methods:
        info = entry.method
        if info.is_ctor or (method is not None and info.node is method):
            continue
        if cls is not None and not table.is_subclass(cls.label, info.owner):
            continue  # not callable through `this` here
        if len(info.params) == 0:
            stmt_new = expr_stmt(this_call(info.name, []))
            edit = AstEdit(INSERT_BEFORE, target=stmt, payload=stmt_new)
            out.append(Patch([edit], "FP4.1", donor_distance=entry.distance))
        elif len(info.params) == 1:
            want = info.params[0][1]
            for arg in arg_sources:
                if not compatible(arg.inferred_type, want, table):
                    continue
                stmt_new = expr_stmt(this_call(info.name, [clone_tree(arg)]))
                edit = AstEdit(INSERT_BEFORE, target=stmt, payload=stmt_new)
                out.append(Patch([edit], "FP4.1",
                                 donor_distance=entry.distance))
    return out


def _wrap_would_orphan(stmt: AstNode) -> bool:
    """Moving a declaration into a nested block hides it from the
    following siblings that read it; such wraps can never type."""
    if stmt.kind != VAR_DECL_STMT:
        return False
    siblings = stmt.parent.children
    after = siblings[siblings.index(stmt) + 1:]
    return any(_mentions(s, stmt.label) for s in after)


def match_fp4_2(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if not _in_block(node) or node.kind == TRY_STMT:
        return []
    if _wrap_would_orphan(node):
        return []
    for anc in ancestors(node):
        if anc.kind == TRY_STMT:
            return []
        if anc.kind in (METHOD_DECL, CTOR_DECL):
            break
    return [PatternMatch(BY_ID["FP4.2"], node, node)]


def gen_fp4_2(match, donors, ctx: PatternContext) -> list[Patch]:
    stmt = match.stmt
    taken = names_in_method(ctx.enclosing_method(stmt), ctx.program, ctx.path)
    name = fresh_name("e", taken)
    handler = AstNode(CATCH_CLAUSE, label=name, children=[block([])], span=(0, 0))
    wrapped = AstNode(TRY_STMT, children=[block([clone_tree(stmt)]), handler],
                      span=(0, 0))
    return [Patch([AstEdit(WRAP, target=stmt, payload=wrapped)], "FP4.2")]


def match_fp4_3(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if not _in_block(node) or node.kind == RETURN_STMT:
        return []
    if ctx.enclosing_method(node) is None:
        return []
    return [PatternMatch(BY_ID["FP4.3"], node, node)]


def gen_fp4_3(match, donors, ctx: PatternContext) -> list[Patch]:
    rt = ctx.method_return_type(match.stmt)
    payload = return_stmt(default_value(rt))
    return [Patch([AstEdit(INSERT_AFTER, target=match.stmt, payload=payload)],
                  "FP4.3")]


def _guard_shaped(cond: AstNode) -> bool:
    """Conditions that would re-create FP1/FP2/FP3 territory are excluded
    from FP4.4 donor conditions."""
    for sub in cond.walk():
        if sub.kind == INSTANCEOF:
            return True
        if sub.kind == INFIX and sub.label in ("==", "!="):
            left, right = sub.children
            if (left.kind == LITERAL and left.literal is None) or \
               (right.kind == LITERAL and right.literal is None):
                return True
        if sub.kind == FIELD_ACCESS and sub.label == "length":
            return True
    return False


def match_fp4_4(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if not _in_block(node) or _wrap_would_orphan(node):
        return []
    return [PatternMatch(BY_ID["FP4.4"], node, node)]


def gen_fp4_4(match, donors, ctx: PatternContext) -> list[Patch]:
    stmt = match.stmt
    scope = donors.in_scope_names()
    out = []
    for entry in donors.conditions:
        cond = entry.node
        if _guard_shaped(cond) or not in_scope(cond, scope):
            continue
        payload = if_stmt(clone_tree(cond), [clone_tree(stmt)])
        edit = AstEdit(WRAP, target=stmt, payload=payload)
        out.append(Patch([edit], "FP4.4", donor_distance=entry.distance))
    return out
