"""Expression-mutating patterns: FP5 through FP13.

These match individual expression nodes (plus the three invocation forms
and declaration/return statements) during the expression-phase preorder
walk of a suspicious statement, and emit update/delete/insert edits at
expression granularity, realized as node updates.
"""

from __future__ import annotations

from ..donors import compatible
from ..edits import AstEdit, Patch, UPDATE, normalize_equal
from ..lang.typecheck import ClassTable, MethodInfo
from ..nodes import (
    ASSIGN_STMT, CAST, CLASS_CREATION, CLASS_DECL, COND_EXPR, CTOR_DECL,
    EXPR_STMT, FLOAT, INFIX, INSTANCEOF, INT, LITERAL, METHOD_CALL,
    METHOD_DECL, PARAM, RETURN_STMT, STRING, SUPER_CTOR_STMT, SUPER_REF,
    VAR_DECL_STMT, VAR_REF,
    AstNode, LangType, class_type, clone_tree, enclosing,
)
from .base import (
    PatternContext, PatternMatch, cast, condition_slot, donor_expression_pool,
    eq_null, in_scope, infix, lit, lit_bool, lit_float, lit_int, neq_null,
    super_call, type_ref, var_ref,
)
from .descriptors import BY_ID


# --- FP5: instance creation inside clone() becomes a cloned copy ---

def match_fp5(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if node.kind != CLASS_CREATION:
        return []
    cls = enclosing(node, CLASS_DECL)
    method = enclosing(node, (METHOD_DECL, CTOR_DECL))
    if cls is None or method is None or method.kind != METHOD_DECL:
        return []
    if method.label != "clone" or node.label != cls.label:
        return []
    if any(c.kind == PARAM for c in method.children):
        return []
    return [PatternMatch(BY_ID["FP5"], node, ctx.stmt, {"T": cls.label})]


def gen_fp5(match, donors, ctx) -> list[Patch]:
    repl = cast(class_type(match.bindings["T"]), super_call("clone", []))
    return [Patch([AstEdit(UPDATE, target=match.node, payload=repl)], "FP5")]


# --- FP6: condition mutations (replace / drop clause / extend) ---

def match_fp6_1(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if condition_slot(node):
        return [PatternMatch(BY_ID["FP6.1"], node, ctx.stmt)]
    return []


def gen_fp6_1(match, donors, ctx) -> list[Patch]:
    scope = donors.in_scope_names()
    out = []
    for entry in donors.conditions:
        cond = entry.node
        if normalize_equal(cond, match.node) or not in_scope(cond, scope):
            continue
        edit = AstEdit(UPDATE, target=match.node, payload=clone_tree(cond))
        out.append(Patch([edit], "FP6.1", donor_distance=entry.distance))
    return out


def match_fp6_2(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if not condition_slot(node):
        return []
    clauses = [d for d in node.walk()
               if d.kind == INFIX and d.label in ("&&", "||")]
    if not clauses:
        return []
    return [PatternMatch(BY_ID["FP6.2"], node, ctx.stmt, {"clauses": clauses})]


def gen_fp6_2(match, donors, ctx) -> list[Patch]:
    out = []
    for clause in match.bindings["clauses"]:
        for side in clause.children:
            edit = AstEdit(UPDATE, target=clause, payload=clone_tree(side))
            out.append(Patch([edit], "FP6.2"))
    return out


def match_fp6_3(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if condition_slot(node):
        return [PatternMatch(BY_ID["FP6.3"], node, ctx.stmt)]
    return []


def gen_fp6_3(match, donors, ctx) -> list[Patch]:
    scope = donors.in_scope_names()
    out = []
    for entry in donors.conditions:
        cond = entry.node
        if normalize_equal(cond, match.node) or not in_scope(cond, scope):
            continue
        for op in ("&&", "||"):
            combined = infix(op, clone_tree(match.node), clone_tree(cond))
            edit = AstEdit(UPDATE, target=match.node, payload=combined)
            out.append(Patch([edit], "FP6.3", donor_distance=entry.distance))
    return out


# --- FP7: data type mutations ---

def _hierarchy_distance(table: ClassTable, a: str, b: str) -> int:
    for start, goal in ((a, b), (b, a)):
        steps = 0
        cur: str | None = start
        while cur is not None:
            if cur == goal:
                return steps
            cur = table.get(cur).super_name
            steps += 1
    return 99


def _alternative_types(table: ClassTable, current: LangType) -> list[LangType]:
    if current == INT:
        return [FLOAT]
    if current == FLOAT:
        return [INT]
    if current.kind != "class":
        return []
    others = [c.name for c in table.user_classes()
              if c.name != current.name and table.related(c.name, current.name)]
    others.sort(key=lambda n: (_hierarchy_distance(table, n, current.name), n))
    return [class_type(n) for n in others]


def match_fp7_1(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if node.kind != VAR_DECL_STMT:
        return []
    return [PatternMatch(BY_ID["FP7.1"], node, ctx.stmt)]


def gen_fp7_1(match, donors, ctx: PatternContext) -> list[Patch]:
    tnode = match.node.children[0]
    out = []
    for alt in _alternative_types(ctx.program.classes, tnode.inferred_type):
        edit = AstEdit(UPDATE, target=tnode, payload=type_ref(alt))
        out.append(Patch([edit], "FP7.1"))
    return out


def match_fp7_2(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if node.kind != CAST:
        return []
    return [PatternMatch(BY_ID["FP7.2"], node, ctx.stmt)]


def gen_fp7_2(match, donors, ctx: PatternContext) -> list[Patch]:
    tnode = match.node.children[0]
    out = []
    for alt in _alternative_types(ctx.program.classes, tnode.inferred_type):
        edit = AstEdit(UPDATE, target=tnode, payload=type_ref(alt))
        out.append(Patch([edit], "FP7.2"))
    return out


# --- FP8: integer division to float division ---

def _int_division(node: AstNode) -> bool:
    if node.kind != INFIX or node.label != "/":
        return False
    left, right = node.children
    return (left.inferred_type == INT and right.inferred_type == INT)


def match_fp8_1(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if _int_division(node):
        return [PatternMatch(BY_ID["FP8.1"], node, ctx.stmt)]
    return []


def gen_fp8_1(match, donors, ctx) -> list[Patch]:
    dividend = match.node.children[0]
    repl = cast(FLOAT, clone_tree(dividend))
    return [Patch([AstEdit(UPDATE, target=dividend, payload=repl)], "FP8.1")]


def match_fp8_2(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if _int_division(node):
        return [PatternMatch(BY_ID["FP8.2"], node, ctx.stmt)]
    return []


def gen_fp8_2(match, donors, ctx) -> list[Patch]:
    divisor = match.node.children[1]
    repl = cast(FLOAT, clone_tree(divisor))
    return [Patch([AstEdit(UPDATE, target=divisor, payload=repl)], "FP8.2")]


def match_fp8_3(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if not _int_division(node):
        return []
    if any(c.kind == LITERAL for c in node.children):
        return [PatternMatch(BY_ID["FP8.3"], node, ctx.stmt)]
    return []


def gen_fp8_3(match, donors, ctx) -> list[Patch]:
    out = []
    for operand in match.node.children:
        if operand.kind != LITERAL:
            continue
        repl = lit(FLOAT, float(operand.literal))
        out.append(Patch([AstEdit(UPDATE, target=operand, payload=repl)],
                         "FP8.3"))
    return out


# --- FP9: literal mutations ---

def match_fp9_1(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if node.kind != LITERAL or node.literal is None:
        return []
    return [PatternMatch(BY_ID["FP9.1"], node, ctx.stmt)]


def _literal_patch(node: AstNode, repl: AstNode,
                   distance: int | None = None) -> Patch:
    return Patch([AstEdit(UPDATE, target=node, payload=repl)], "FP9.1",
                 donor_distance=distance)


def gen_fp9_1(match, donors, ctx) -> list[Patch]:
    node = match.node
    value = node.literal
    out: list[Patch] = []
    if isinstance(value, bool):
        return [_literal_patch(node, lit_bool(not value))]
    if isinstance(value, int):
        # pinned neighbor set {0, 1, -1, n+1, n-1}, then donor literals
        seen = {value}
        for v in (0, 1, -1, value + 1, value - 1):
            if v not in seen:
                seen.add(v)
                out.append(_literal_patch(node, lit_int(v)))
        for entry in donors.literals:
            v = entry.node.literal
            if entry.lang_type == INT and isinstance(v, int) and v not in seen:
                seen.add(v)
                out.append(_literal_patch(node, lit_int(v), entry.distance))
        return out
    if isinstance(value, float):
        seen_f = {value}
        for v in (0.0, 1.0, -1.0, value + 1.0, value - 1.0):
            if v not in seen_f:
                seen_f.add(v)
                out.append(_literal_patch(node, lit_float(v)))
        for entry in donors.literals:
            v = entry.node.literal
            if entry.lang_type == FLOAT and isinstance(v, float) and v not in seen_f:
                seen_f.add(v)
                out.append(_literal_patch(node, lit_float(v), entry.distance))
        return out
    if isinstance(value, str):
        seen_s = {value}
        for entry in donors.literals:
            v = entry.node.literal
            if entry.lang_type == STRING and isinstance(v, str) and v not in seen_s:
                seen_s.add(v)
                out.append(_literal_patch(node, clone_tree(entry.node),
                                          entry.distance))
        return out
    return out


def match_fp9_2(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if node.kind != LITERAL or node.literal is None:
        return []
    return [PatternMatch(BY_ID["FP9.2"], node, ctx.stmt)]


def gen_fp9_2(match, donors, ctx: PatternContext) -> list[Patch]:
    want = match.node.inferred_type
    out = []
    for repl, entry in donor_expression_pool(donors, want, ctx.program.classes,
                                             variables=False, literals=False):
        edit = AstEdit(UPDATE, target=match.node, payload=repl)
        out.append(Patch([edit], "FP9.2", donor_distance=entry.distance))
    return out


# --- FP10: invocation mutations ---

_INVOCATION_KINDS = (METHOD_CALL, CLASS_CREATION, SUPER_CTOR_STMT)


def _call_parts(node: AstNode) -> tuple[list[AstNode], MethodInfo]:
    """(argument nodes, resolved signature) of any invocation form."""
    if node.kind == METHOD_CALL:
        return node.children[1:], node.resolved
    return list(node.children), node.resolved


def _visible_methods(table: ClassTable, cls_name: str) -> list[MethodInfo]:
    seen: set[tuple] = set()
    out = []
    for info in table.hierarchy(cls_name):
        for m in info.methods:
            if m.node is None:
                continue  # synthesized members are not fix ingredients
            key = (m.name, tuple(str(t) for t in m.param_types))
            if key in seen:
                continue
            seen.add(key)
            out.append(m)
    return out


def _receiver_class(node: AstNode, ctx: PatternContext) -> str | None:
    recv = node.children[0]
    if recv.kind == SUPER_REF:
        cls = enclosing(node, CLASS_DECL)
        if cls is None:
            return None
        return ctx.program.classes.get(cls.label).super_name
    lt = recv.inferred_type
    if lt is not None and lt.kind == "class":
        return lt.name
    return None


def _return_compatible(node: AstNode, old: LangType, new: LangType,
                       table: ClassTable) -> bool:
    parent = node.parent
    if parent is not None and parent.kind == EXPR_STMT:
        return True  # result discarded
    if old.kind == "void" or new.kind == "void":
        return old == new
    return compatible(new, old, table)


def _match_invocation(pattern_id: str, node: AstNode, ctx) -> list[PatternMatch]:
    if node.kind not in _INVOCATION_KINDS or node.resolved is None:
        return []
    return [PatternMatch(BY_ID[pattern_id], node, ctx.stmt)]


def match_fp10_1(node, ctx):
    if node.kind == SUPER_CTOR_STMT:
        return []  # no callee name to swap
    return _match_invocation("FP10.1", node, ctx)


def gen_fp10_1(match, donors, ctx: PatternContext) -> list[Patch]:
    node = match.node
    table = ctx.program.classes
    current: MethodInfo = node.resolved
    out = []
    if node.kind == METHOD_CALL:
        cls = _receiver_class(node, ctx)
        if cls is None:
            return []
        for m in _visible_methods(table, cls):
            if m.name == current.name:
                continue
            if m.param_types != current.param_types:
                continue
            if not _return_compatible(node, current.return_type,
                                      m.return_type, table):
                continue
            repl = clone_tree(node)
            repl.label = m.name
            out.append(Patch([AstEdit(UPDATE, target=node, payload=repl)],
                             "FP10.1"))
    else:  # class creation
        cur_cls = node.label
        if cur_cls == "String":
            return []
        for info in table.user_classes():
            if info.name == cur_cls or not table.related(info.name, cur_cls):
                continue
            if info.ctors:
                if not any(c.param_types == current.param_types
                           for c in info.ctors):
                    continue
            elif current.param_types:
                continue  # implicit default ctor takes no arguments
            repl = clone_tree(node)
            repl.label = info.name
            out.append(Patch([AstEdit(UPDATE, target=node, payload=repl)],
                             "FP10.1"))
    return out


def match_fp10_2(node, ctx):
    matches = _match_invocation("FP10.2", node, ctx)
    if matches and not _call_parts(node)[0]:
        return []  # nothing to replace
    return matches


def gen_fp10_2(match, donors, ctx: PatternContext) -> list[Patch]:
    node = match.node
    args, info = _call_parts(node)
    table = ctx.program.classes
    out = []
    for i, arg in enumerate(args):
        want = info.param_types[i]
        for repl, entry in donor_expression_pool(
                donors, want, table, variables=False, literals=False):
            if normalize_equal(repl, arg):
                continue
            edit = AstEdit(UPDATE, target=arg, payload=repl)
            out.append(Patch([edit], "FP10.2", donor_distance=entry.distance))
    return out


def _rebuild_call(node: AstNode, new_args: list[AstNode]) -> AstNode:
    repl = AstNode(node.kind, label=node.label, span=(0, 0))
    if node.kind == METHOD_CALL:
        repl.children = [clone_tree(node.children[0])] + new_args
    else:
        repl.children = new_args
    for c in repl.children:
        c.parent = repl
    return repl


def _overloads_for(node: AstNode, ctx: PatternContext) -> list[MethodInfo]:
    table = ctx.program.classes
    if node.kind == METHOD_CALL:
        cls = _receiver_class(node, ctx)
        if cls is None:
            return []
        return [m for m in _visible_methods(table, cls)
                if m.name == node.label]
    if node.kind == CLASS_CREATION:
        return list(table.get(node.label).ctors)
    # super constructor call
    cls = enclosing(node, CLASS_DECL)
    sup = table.get(cls.label).super_name if cls is not None else None
    if sup is None:
        return []
    return list(table.get(sup).ctors)


def match_fp10_3(node, ctx):
    matches = _match_invocation("FP10.3", node, ctx)
    if matches and not _call_parts(node)[0]:
        return []
    return matches


def gen_fp10_3(match, donors, ctx: PatternContext) -> list[Patch]:
    node = match.node
    args, info = _call_parts(node)
    table = ctx.program.classes
    overloads = _overloads_for(node, ctx)
    out = []
    for i in range(len(args)):
        remaining = args[:i] + args[i + 1:]
        for target in overloads:
            if len(target.param_types) != len(remaining):
                continue
            if not all(compatible(a.inferred_type, p, table)
                       for a, p in zip(remaining, target.param_types)):
                continue
            if not _return_compatible(node, info.return_type,
                                      target.return_type, table):
                continue
            repl = _rebuild_call(node, [clone_tree(a) for a in remaining])
            out.append(Patch([AstEdit(UPDATE, target=node, payload=repl)],
                             "FP10.3"))
            break
    return out


def match_fp10_4(node, ctx):
    return _match_invocation("FP10.4", node, ctx)


def gen_fp10_4(match, donors, ctx: PatternContext) -> list[Patch]:
    node = match.node
    args, info = _call_parts(node)
    table = ctx.program.classes
    out = []
    for target in _overloads_for(node, ctx):
        if len(target.param_types) != len(args) + 1:
            continue
        if not _return_compatible(node, info.return_type,
                                  target.return_type, table):
            continue
        for gap in range(len(args) + 1):
            prefix_ok = all(compatible(a.inferred_type, p, table)
                            for a, p in zip(args[:gap], target.param_types[:gap]))
            suffix_ok = all(compatible(a.inferred_type, p, table)
                            for a, p in zip(args[gap:], target.param_types[gap + 1:]))
            if not (prefix_ok and suffix_ok):
                continue
            want = target.param_types[gap]
            for repl, entry in donor_expression_pool(donors, want, table):
                new_args = ([clone_tree(a) for a in args[:gap]] + [repl]
                            + [clone_tree(a) for a in args[gap:]])
                rebuilt = _rebuild_call(node, new_args)
                edit = AstEdit(UPDATE, target=node, payload=rebuilt)
                out.append(Patch([edit], "FP10.4",
                                 donor_distance=entry.distance))
    return out


# --- FP11: operator mutations ---

_REL_OPS = ("<", "<=", ">", ">=", "==", "!=")
_ARITH_OPS = ("+", "-", "*", "/", "%")
_LOGIC_OPS = ("&&", "||")


def _op_class(op: str) -> tuple[str, ...] | None:
    for group in (_REL_OPS, _ARITH_OPS, _LOGIC_OPS):
        if op in group:
            return group
    return None


def match_fp11_1(node: AstNode, ctx) -> list[PatternMatch]:
    if node.kind == INFIX and _op_class(node.label) is not None:
        return [PatternMatch(BY_ID["FP11.1"], node, ctx.stmt)]
    return []


def gen_fp11_1(match, donors, ctx) -> list[Patch]:
    node = match.node
    if node.label == "+" and node.inferred_type is not None \
            and node.inferred_type.kind == "String":
        return []  # concatenation: the other arithmetic operators never type
    out = []
    for op in _op_class(node.label):
        if op == node.label:
            continue
        repl = clone_tree(node)
        repl.label = op
        out.append(Patch([AstEdit(UPDATE, target=node, payload=repl)],
                         "FP11.1"))
    return out


def match_fp11_2(node: AstNode, ctx) -> list[PatternMatch]:
    if node.kind != INFIX or node.label not in _ARITH_OPS:
        return []
    left, right = node.children
    if (right.kind == INFIX and right.label in _ARITH_OPS) or \
       (left.kind == INFIX and left.label in _ARITH_OPS):
        return [PatternMatch(BY_ID["FP11.2"], node, ctx.stmt)]
    return []


def gen_fp11_2(match, donors, ctx) -> list[Patch]:
    node = match.node
    op1 = node.label
    left, right = node.children
    out = []
    if right.kind == INFIX and right.label in _ARITH_OPS:
        # a op1 (b op2 c)  ->  (a op1 b) op2 c
        op2 = right.label
        b, c = right.children
        inner = infix(op1, clone_tree(left), clone_tree(b))
        repl = infix(op2, inner, clone_tree(c))
        if not normalize_equal(repl, node):
            out.append(Patch([AstEdit(UPDATE, target=node, payload=repl)],
                             "FP11.2"))
    if left.kind == INFIX and left.label in _ARITH_OPS:
        # (a op2 b) op1 c  ->  a op2 (b op1 c)
        op2 = left.label
        a, b = left.children
        inner = infix(op1, clone_tree(b), clone_tree(right))
        repl = infix(op2, clone_tree(a), inner)
        if not normalize_equal(repl, node):
            out.append(Patch([AstEdit(UPDATE, target=node, payload=repl)],
                             "FP11.2"))
    return out


def match_fp11_3(node: AstNode, ctx) -> list[PatternMatch]:
    if node.kind == INSTANCEOF:
        return [PatternMatch(BY_ID["FP11.3"], node, ctx.stmt)]
    return []


def gen_fp11_3(match, donors, ctx) -> list[Patch]:
    operand = match.node.children[0]
    out = []
    for repl in (neq_null(operand), eq_null(operand)):
        out.append(Patch([AstEdit(UPDATE, target=match.node, payload=repl)],
                         "FP11.3"))
    return out


# --- FP12: return expression replacement ---

_SIMPLE_RETURN_KINDS = frozenset({LITERAL, VAR_REF, COND_EXPR})


def match_fp12(node: AstNode, ctx: PatternContext) -> list[PatternMatch]:
    if node.kind != RETURN_STMT or not node.children:
        return []
    if node.children[0].kind in _SIMPLE_RETURN_KINDS:
        return []
    rt = ctx.method_return_type(node)
    if rt is None or rt.kind == "void":
        return []
    return [PatternMatch(BY_ID["FP12"], node, ctx.stmt, {"RT": rt})]


def gen_fp12(match, donors, ctx: PatternContext) -> list[Patch]:
    expr = match.node.children[0]
    want = match.bindings["RT"]
    out = []
    for repl, entry in donor_expression_pool(
            donors, want, ctx.program.classes, variables=False, literals=False):
        if normalize_equal(repl, expr):
            continue
        edit = AstEdit(UPDATE, target=expr, payload=repl)
        out.append(Patch([edit], "FP12", donor_distance=entry.distance))
    return out


# --- FP13: variable replacement ---

def match_fp13_1(node: AstNode, ctx) -> list[PatternMatch]:
    if node.kind == VAR_REF:
        return [PatternMatch(BY_ID["FP13.1"], node, ctx.stmt)]
    return []


def gen_fp13_1(match, donors, ctx: PatternContext) -> list[Patch]:
    node = match.node
    table = ctx.program.classes
    out = []
    for entry in donors.variables:
        if entry.name == node.label:
            continue  # never replace a variable with itself
        if node.inferred_type is not None and \
                not compatible(entry.lang_type, node.inferred_type, table):
            continue
        edit = AstEdit(UPDATE, target=node, payload=var_ref(entry.name))
        out.append(Patch([edit], "FP13.1", donor_distance=entry.distance))
    return out


def match_fp13_2(node: AstNode, ctx) -> list[PatternMatch]:
    if node.kind != VAR_REF:
        return []
    parent = node.parent
    if parent is not None and parent.kind == ASSIGN_STMT \
            and parent.children and parent.children[0] is node:
        # store position: only another variable can stand here (FP13.1)
        return []
    return [PatternMatch(BY_ID["FP13.2"], node, ctx.stmt)]


def gen_fp13_2(match, donors, ctx: PatternContext) -> list[Patch]:
    node = match.node
    if node.inferred_type is None:
        return []
    out = []
    for repl, entry in donor_expression_pool(
            donors, node.inferred_type, ctx.program.classes, variables=False):
        if normalize_equal(repl, node):
            continue
        edit = AstEdit(UPDATE, target=node, payload=repl)
        out.append(Patch([edit], "FP13.2", donor_distance=entry.distance))
    return out
