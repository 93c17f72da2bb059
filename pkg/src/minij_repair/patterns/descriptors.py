"""The fix-pattern catalog: 35 descriptors across 15 families.

Each descriptor records the change action, the granularity of the edited
code entity, the bug-context node kinds it applies to, the change spread,
and whether instantiation consumes donor code. The aggregate counts over
these fields are part of the package contract and are asserted by tests:
17 updates, 4 deletes, 13 inserts, 1 move; 21 expression-level, 17
statement-level, 1 method-level (the four invocation mutators count at both
expression and statement level); 30 single-location, 7 multi-location
(the move and the statement delete count at both spreads).
"""

from __future__ import annotations

from dataclasses import dataclass

UPDATE = "update"
DELETE = "delete"
INSERT = "insert"
MOVE = "move"

EXPRESSION = "expression"
STATEMENT = "statement"
METHOD = "method"
EXPR_AND_STMT = "expression+statement"

SINGLE = "single"
MULTIPLE = "multiple"
SINGLE_OR_MULTIPLE = "single+multiple"


@dataclass(frozen=True)
class PatternDescriptor:
    pattern_id: str
    family: str
    name: str
    action: str
    granularity: str
    contexts: tuple[str, ...]
    spread: str
    needs_donor: bool

    @property
    def counts_as_expression(self) -> bool:
        return self.granularity in (EXPRESSION, EXPR_AND_STMT)

    @property
    def counts_as_statement(self) -> bool:
        return self.granularity in (STATEMENT, EXPR_AND_STMT)

    @property
    def counts_as_method(self) -> bool:
        return self.granularity == METHOD


def _d(pattern_id, name, action, granularity, contexts, spread, needs_donor):
    family = pattern_id.split(".")[0]
    return PatternDescriptor(
        pattern_id=pattern_id, family=family, name=name, action=action,
        granularity=granularity, contexts=tuple(contexts), spread=spread,
        needs_donor=needs_donor)


CATALOG: tuple[PatternDescriptor, ...] = (
    _d("FP1", "insert class cast checker", INSERT, STATEMENT,
       ("cast",), SINGLE, False),
    _d("FP2.1", "insert null checker: guard wrap", INSERT, STATEMENT,
       ("field_access", "method_call", "array_access"), SINGLE, False),
    _d("FP2.2", "insert null checker: early default return", INSERT, STATEMENT,
       ("field_access", "method_call", "array_access"), MULTIPLE, False),
    _d("FP2.3", "insert null checker: early void return", INSERT, STATEMENT,
       ("field_access", "method_call", "array_access"), MULTIPLE, False),
    _d("FP2.4", "insert null checker: skip loop iteration", INSERT, STATEMENT,
       ("field_access", "method_call", "array_access"), MULTIPLE, False),
    _d("FP2.5", "insert null checker: fallback value", INSERT, STATEMENT,
       ("field_access", "method_call", "array_access"), MULTIPLE, True),
    _d("FP3", "insert range checker", INSERT, STATEMENT,
       ("array_access",), SINGLE, False),
    _d("FP4.1", "insert missed invocation", INSERT, STATEMENT,
       ("statement",), SINGLE, True),
    _d("FP4.2", "insert missed try-catch", INSERT, STATEMENT,
       ("statement",), SINGLE, False),
    _d("FP4.3", "insert missed return", INSERT, STATEMENT,
       ("statement",), SINGLE, False),
    _d("FP4.4", "insert missed if guard", INSERT, STATEMENT,
       ("statement",), SINGLE, True),
    _d("FP5", "mutate class instance creation to cloned copy", UPDATE, EXPRESSION,
       ("class_creation",), SINGLE, False),
    _d("FP6.1", "mutate condition: replace whole condition", UPDATE, EXPRESSION,
       ("condition",), SINGLE, True),
    _d("FP6.2", "mutate condition: drop a clause", DELETE, EXPRESSION,
       ("condition",), SINGLE, False),
    _d("FP6.3", "mutate condition: extend with a clause", INSERT, EXPRESSION,
       ("condition",), SINGLE, True),
    _d("FP7.1", "mutate declared data type", UPDATE, EXPRESSION,
       ("var_decl_stmt",), SINGLE, False),
    _d("FP7.2", "mutate cast data type", UPDATE, EXPRESSION,
       ("cast",), SINGLE, False),
    _d("FP8.1", "mutate integer division: cast dividend", UPDATE, EXPRESSION,
       ("infix",), SINGLE, False),
    _d("FP8.2", "mutate integer division: cast divisor", UPDATE, EXPRESSION,
       ("infix",), SINGLE, False),
    _d("FP8.3", "mutate integer division: float literal", UPDATE, EXPRESSION,
       ("infix",), SINGLE, False),
    _d("FP9.1", "mutate literal: same-kind replacement", UPDATE, EXPRESSION,
       ("literal",), SINGLE, False),
    _d("FP9.2", "mutate literal: expression replacement", UPDATE, EXPRESSION,
       ("literal",), SINGLE, True),
    _d("FP10.1", "mutate invocation: swap callee", UPDATE, EXPR_AND_STMT,
       ("method_call", "class_creation", "super_ctor_stmt"), SINGLE, False),
    _d("FP10.2", "mutate invocation: replace argument", UPDATE, EXPR_AND_STMT,
       ("method_call", "class_creation", "super_ctor_stmt"), SINGLE, True),
    _d("FP10.3", "mutate invocation: drop argument", DELETE, EXPR_AND_STMT,
       ("method_call", "class_creation", "super_ctor_stmt"), SINGLE, False),
    _d("FP10.4", "mutate invocation: add argument", INSERT, EXPR_AND_STMT,
       ("method_call", "class_creation", "super_ctor_stmt"), SINGLE, True),
    _d("FP11.1", "mutate operator: same-class swap", UPDATE, EXPRESSION,
       ("infix",), SINGLE, False),
    _d("FP11.2", "mutate operator: arithmetic priority", UPDATE, EXPRESSION,
       ("infix",), SINGLE, False),
    _d("FP11.3", "mutate operator: instanceof to null check", UPDATE, EXPRESSION,
       ("instanceof",), SINGLE, False),
    _d("FP12", "mutate return expression", UPDATE, EXPRESSION,
       ("return_stmt",), SINGLE, True),
    _d("FP13.1", "mutate variable: another in-scope variable", UPDATE, EXPRESSION,
       ("var_ref",), SINGLE, True),
    _d("FP13.2", "mutate variable: expression or literal", UPDATE, EXPRESSION,
       ("var_ref",), SINGLE, True),
    _d("FP14", "move statement", MOVE, STATEMENT,
       ("statement",), SINGLE_OR_MULTIPLE, False),
    _d("FP15.1", "remove buggy statement", DELETE, STATEMENT,
       ("statement",), SINGLE_OR_MULTIPLE, False),
    _d("FP15.2", "remove buggy method body", DELETE, METHOD,
       ("method_decl",), MULTIPLE, False),
)

BY_ID = {d.pattern_id: d for d in CATALOG}
FAMILIES = tuple(dict.fromkeys(d.family for d in CATALOG))


def action_counts() -> dict[str, int]:
    out = {UPDATE: 0, DELETE: 0, INSERT: 0, MOVE: 0}
    for d in CATALOG:
        out[d.action] += 1
    return out


def granularity_counts() -> dict[str, int]:
    return {
        EXPRESSION: sum(1 for d in CATALOG if d.counts_as_expression),
        STATEMENT: sum(1 for d in CATALOG if d.counts_as_statement),
        METHOD: sum(1 for d in CATALOG if d.counts_as_method),
    }


def spread_counts() -> dict[str, int]:
    return {
        SINGLE: sum(1 for d in CATALOG if d.spread in (SINGLE, SINGLE_OR_MULTIPLE)),
        MULTIPLE: sum(1 for d in CATALOG if d.spread in (MULTIPLE, SINGLE_OR_MULTIPLE)),
    }


def expand_pattern_ids(entries: list[str]) -> set[str]:
    """Expand a mixed list of family and sub-pattern ids; a leading '-' or
    '!' marks a denylist entry. Unknown ids raise ValueError."""
    allow: set[str] = set()
    deny: set[str] = set()
    for raw in entries:
        raw = raw.strip()
        if not raw:
            continue
        bucket = allow
        if raw[0] in "-!":
            bucket = deny
            raw = raw[1:]
        if raw in BY_ID:
            bucket.add(raw)
        elif raw in FAMILIES:
            bucket.update(d.pattern_id for d in CATALOG if d.family == raw)
        else:
            raise ValueError("unknown pattern id %r" % raw)
    base = allow if allow else {d.pattern_id for d in CATALOG}
    return base - deny
