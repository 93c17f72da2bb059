"""Tree edits, node distance, and normalized structural equality.

apply_edits never mutates its input: the tree is cloned, targets are located
in the clone through an identity map, and the edited clone is reindexed
before it is returned. Statement-level actions (insert/delete/wrap/move)
only make sense inside a block; anything else is an arity violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .nodes import AstNode, NodeKind, clone_tree, node_root, reindex

UPDATE = "update"
DELETE = "delete"
INSERT_BEFORE = "insert_before"
INSERT_AFTER = "insert_after"
WRAP = "wrap"
MOVE = "move"

ACTIONS = (UPDATE, DELETE, INSERT_BEFORE, INSERT_AFTER, WRAP, MOVE)


class EditError(Exception):
    pass


@dataclass
class AstEdit:
    """One edit against a specific node of a specific tree.

    wrap consumes ``extent`` consecutive sibling statements starting at the
    target and replaces them with the payload (which is expected to carry
    copies of the consumed statements in its body). move reinserts the
    target so that it ends up at index ``destination`` of the sibling list.
    """

    action: str
    target: AstNode
    payload: AstNode | None = None
    extent: int = 1
    destination: int | None = None

    def __post_init__(self):
        if self.action not in ACTIONS:
            raise EditError("unknown edit action %r" % self.action)


@dataclass
class Patch:
    """An ordered group of edits produced by one fix pattern."""

    edits: list[AstEdit]
    pattern_id: str
    donor_distance: int | None = None


def apply_edits(root: AstNode, edits: list[AstEdit]) -> AstNode:
    """Apply edits in order to a copy of the tree rooted at root."""
    mapping: dict[int, AstNode] = {}
    new_root = _clone_with_map(root, mapping)
    for edit in edits:
        target = mapping.get(id(edit.target))
        if target is None:
            raise EditError("edit target does not belong to the edited tree")
        if node_root(target) is not new_root:
            raise EditError("dangling edit target (removed by an earlier edit)")
        _apply_one(edit, target, mapping)
    reindex(new_root)
    _fill_spans(new_root)
    return new_root


def _clone_with_map(node: AstNode, mapping: dict[int, AstNode]) -> AstNode:
    copy = AstNode(
        kind=node.kind, label=node.label, literal=node.literal,
        children=[_clone_with_map(c, mapping) for c in node.children],
        span=node.span, inferred_type=node.inferred_type,
        preorder_index=node.preorder_index, resolved=node.resolved,
    )
    for child in copy.children:
        child.parent = copy
    mapping[id(node)] = copy
    return copy


def _apply_one(edit: AstEdit, target: AstNode, mapping: dict[int, AstNode]) -> None:
    parent = target.parent
    if parent is None:
        raise EditError("cannot edit the root node")
    index = _child_index(parent, target)

    if edit.action == UPDATE:
        if edit.payload is None:
            raise EditError("update needs a payload")
        replacement = clone_tree(edit.payload)
        replacement.parent = parent
        target.parent = None  # detach so later edits on it are caught
        parent.children[index] = replacement
        return

    if parent.kind != NodeKind.BLOCK:
        raise EditError("%s would break the arity of a %s node"
                        % (edit.action, parent.kind))

    if edit.action == DELETE:
        parent.children.pop(index).parent = None
    elif edit.action == INSERT_BEFORE:
        node = clone_tree(edit.payload)
        node.parent = parent
        parent.children.insert(index, node)
    elif edit.action == INSERT_AFTER:
        node = clone_tree(edit.payload)
        node.parent = parent
        parent.children.insert(index + 1, node)
    elif edit.action == WRAP:
        if edit.payload is None:
            raise EditError("wrap needs a payload")
        if index + edit.extent > len(parent.children):
            raise EditError("wrap extent exceeds the enclosing block")
        node = clone_tree(edit.payload)
        node.parent = parent
        for consumed in parent.children[index:index + edit.extent]:
            consumed.parent = None
        parent.children[index:index + edit.extent] = [node]
    elif edit.action == MOVE:
        if edit.destination is None:
            raise EditError("move needs a destination index")
        if not 0 <= edit.destination < len(parent.children):
            raise EditError("move destination out of range")
        parent.children.pop(index)
        parent.children.insert(edit.destination, target)


def _child_index(parent: AstNode, child: AstNode) -> int:
    for i, c in enumerate(parent.children):
        if c is child:
            return i
    raise EditError("corrupt parent link")


def _fill_spans(root: AstNode) -> None:
    """Give synthetic nodes (span (0, 0)) the span of their nearest located
    ancestor, a provenance hint only; real spans come from reparsing."""
    def walk(node: AstNode, inherited: tuple[int, int]):
        if node.span == (0, 0):
            node.span = inherited
        for child in node.children:
            walk(child, node.span)
    walk(root, root.span)


# ---------------------------------------------------------------------------
# distance

def ast_distance(a: AstNode, b: AstNode, metric: str = "path") -> int:
    """Distance between two nodes of one tree.

    "path" counts edges on the unique tree path through the lowest common
    ancestor; "preorder_delta" is the absolute preorder index difference,
    kept as a cheap alternative for experiments.
    """
    if metric == "preorder_delta":
        if node_root(a) is not node_root(b):
            raise ValueError("nodes from different files")
        return abs(a.preorder_index - b.preorder_index)
    if metric != "path":
        raise ValueError("unknown distance metric %r" % metric)
    depth_a = {}
    cur, d = a, 0
    while cur is not None:
        depth_a[id(cur)] = d
        cur = cur.parent
        d += 1
    cur, d = b, 0
    while cur is not None:
        if id(cur) in depth_a:
            return depth_a[id(cur)] + d
        cur = cur.parent
        d += 1
    raise ValueError("nodes from different files")


# ---------------------------------------------------------------------------
# normalized comparison

_COMMUTATIVE_EQ = ("==", "!=")


def canonical(node: AstNode):
    """Canonical comparison form: spans, indices and resolution dropped;
    negation over (in)equality folded; minus over a numeric literal folded;
    operands of == and != ordered canonically, likewise + over operands both
    typed int. Logical && and || keep their order (short-circuit effects)."""
    kids = tuple(canonical(c) for c in node.children)
    kind, label, lit = node.kind, node.label, node.literal

    if kind == NodeKind.PREFIX and label == "!" and kids:
        inner = kids[0]
        if inner[0] == NodeKind.INFIX and inner[1] in _COMMUTATIVE_EQ:
            flipped = "!=" if inner[1] == "==" else "=="
            return (NodeKind.INFIX, flipped, None,
                    tuple(sorted(inner[3], key=repr)))
    if kind == NodeKind.PREFIX and label == "-" and kids:
        inner = kids[0]
        if inner[0] == NodeKind.LITERAL and inner[1] in ("int", "float"):
            return (NodeKind.LITERAL, inner[1], -inner[2], ())
    if kind == NodeKind.INFIX and label in _COMMUTATIVE_EQ:
        kids = tuple(sorted(kids, key=repr))
    if kind == NodeKind.INFIX and label == "+":
        types = [c.inferred_type for c in node.children]
        if all(t is not None and t.kind == "int" for t in types):
            kids = tuple(sorted(kids, key=repr))
    return (kind, label, lit, kids)


def normalize_equal(a: AstNode, b: AstNode) -> bool:
    """Structural equality modulo the canonicalizations above."""
    return canonical(a) == canonical(b)
