"""AST node and type representations shared by every stage of the pipeline.

A single generic node class covers declarations, statements and expressions.
The kind tag plus an ordered child list is enough for the edit/match machinery
to stay uniform; role accessors for specific kinds live next to the consumers
that need them.
"""

from __future__ import annotations

from dataclasses import dataclass, field


# ---------------------------------------------------------------------------
# node kinds

class NodeKind:
    COMPILATION_UNIT = "compilation_unit"
    CLASS_DECL = "class_decl"
    FIELD_DECL = "field_decl"
    METHOD_DECL = "method_decl"
    CTOR_DECL = "ctor_decl"
    PARAM = "param"
    TYPE_REF = "type_ref"

    BLOCK = "block"
    VAR_DECL_STMT = "var_decl_stmt"
    ASSIGN_STMT = "assign_stmt"
    EXPR_STMT = "expr_stmt"
    IF_STMT = "if_stmt"
    WHILE_STMT = "while_stmt"
    FOR_STMT = "for_stmt"
    RETURN_STMT = "return_stmt"
    TRY_STMT = "try_stmt"
    CATCH_CLAUSE = "catch_clause"
    ASSERT_STMT = "assert_stmt"
    BREAK_STMT = "break_stmt"
    CONTINUE_STMT = "continue_stmt"
    SUPER_CTOR_STMT = "super_ctor_stmt"

    LITERAL = "literal"
    VAR_REF = "var_ref"
    THIS_REF = "this_ref"
    SUPER_REF = "super_ref"
    FIELD_ACCESS = "field_access"
    ARRAY_ACCESS = "array_access"
    ARRAY_CREATION = "array_creation"
    CLASS_CREATION = "class_creation"
    METHOD_CALL = "method_call"
    CAST = "cast"
    INSTANCEOF = "instanceof"
    INFIX = "infix"
    PREFIX = "prefix"
    COND_EXPR = "cond_expr"


# Flat aliases: pattern code reads better as IF_STMT than NodeKind.IF_STMT.
COMPILATION_UNIT = NodeKind.COMPILATION_UNIT
CLASS_DECL = NodeKind.CLASS_DECL
FIELD_DECL = NodeKind.FIELD_DECL
METHOD_DECL = NodeKind.METHOD_DECL
CTOR_DECL = NodeKind.CTOR_DECL
PARAM = NodeKind.PARAM
TYPE_REF = NodeKind.TYPE_REF
BLOCK = NodeKind.BLOCK
VAR_DECL_STMT = NodeKind.VAR_DECL_STMT
ASSIGN_STMT = NodeKind.ASSIGN_STMT
EXPR_STMT = NodeKind.EXPR_STMT
IF_STMT = NodeKind.IF_STMT
WHILE_STMT = NodeKind.WHILE_STMT
FOR_STMT = NodeKind.FOR_STMT
RETURN_STMT = NodeKind.RETURN_STMT
TRY_STMT = NodeKind.TRY_STMT
CATCH_CLAUSE = NodeKind.CATCH_CLAUSE
ASSERT_STMT = NodeKind.ASSERT_STMT
BREAK_STMT = NodeKind.BREAK_STMT
CONTINUE_STMT = NodeKind.CONTINUE_STMT
SUPER_CTOR_STMT = NodeKind.SUPER_CTOR_STMT
LITERAL = NodeKind.LITERAL
VAR_REF = NodeKind.VAR_REF
THIS_REF = NodeKind.THIS_REF
SUPER_REF = NodeKind.SUPER_REF
FIELD_ACCESS = NodeKind.FIELD_ACCESS
ARRAY_ACCESS = NodeKind.ARRAY_ACCESS
ARRAY_CREATION = NodeKind.ARRAY_CREATION
CLASS_CREATION = NodeKind.CLASS_CREATION
METHOD_CALL = NodeKind.METHOD_CALL
CAST = NodeKind.CAST
INSTANCEOF = NodeKind.INSTANCEOF
INFIX = NodeKind.INFIX
PREFIX = NodeKind.PREFIX
COND_EXPR = NodeKind.COND_EXPR

# Statement kinds carry statement identities for coverage and localization.
STATEMENT_KINDS = frozenset({
    NodeKind.VAR_DECL_STMT,
    NodeKind.ASSIGN_STMT,
    NodeKind.EXPR_STMT,
    NodeKind.IF_STMT,
    NodeKind.WHILE_STMT,
    NodeKind.FOR_STMT,
    NodeKind.RETURN_STMT,
    NodeKind.TRY_STMT,
    NodeKind.ASSERT_STMT,
    NodeKind.BREAK_STMT,
    NodeKind.CONTINUE_STMT,
    NodeKind.SUPER_CTOR_STMT,
})

EXPRESSION_KINDS = frozenset({
    NodeKind.LITERAL,
    NodeKind.VAR_REF,
    NodeKind.THIS_REF,
    NodeKind.SUPER_REF,
    NodeKind.FIELD_ACCESS,
    NodeKind.ARRAY_ACCESS,
    NodeKind.ARRAY_CREATION,
    NodeKind.CLASS_CREATION,
    NodeKind.METHOD_CALL,
    NodeKind.CAST,
    NodeKind.INSTANCEOF,
    NodeKind.INFIX,
    NodeKind.PREFIX,
    NodeKind.COND_EXPR,
})


# ---------------------------------------------------------------------------
# types

@dataclass(frozen=True)
class LangType:
    """Static type: one of boolean/int/float/String/void, an array, a class,
    or the type of the null literal."""

    kind: str                      # "boolean" | "int" | "float" | "String" |
                                   # "void" | "array" | "class" | "null"
    name: str | None = None        # class name when kind == "class"
    element: "LangType | None" = None  # element type when kind == "array"

    def __str__(self) -> str:
        if self.kind == "array":
            return str(self.element) + "[]"
        if self.kind == "class":
            return self.name or "?"
        return self.kind

    @property
    def is_numeric(self) -> bool:
        return self.kind in ("int", "float")

    @property
    def is_primitive(self) -> bool:
        return self.kind in ("boolean", "int", "float")

    @property
    def is_reference(self) -> bool:
        return self.kind in ("class", "array", "String", "null")


BOOLEAN = LangType("boolean")
INT = LangType("int")
FLOAT = LangType("float")
STRING = LangType("String")
VOID = LangType("void")
NULL = LangType("null")


def class_type(name: str) -> LangType:
    return LangType("class", name=name)


def array_type(element: LangType) -> LangType:
    return LangType("array", element=element)


# Name of the implicit root class every class extends; it supplies the
# built-in clone() used by field-copy fixes.
ROOT_CLASS = "Object"
EXCEPTION_CLASS = "Exception"


# ---------------------------------------------------------------------------
# nodes

@dataclass(eq=False)
class AstNode:
    """Generic syntax node.

    label carries the identifier/operator payload (method or variable name,
    operator symbol, literal type tag, canonical type text for TYPE_REF).
    literal carries the literal's Python value for LITERAL nodes.
    """

    kind: str
    label: str | None = None
    literal: object = None
    children: list["AstNode"] = field(default_factory=list)
    span: tuple[int, int] = (0, 0)
    inferred_type: LangType | None = None
    preorder_index: int = -1
    parent: "AstNode | None" = field(default=None, repr=False)
    resolved: object = field(default=None, repr=False)

    def walk(self):
        """Yield this node and all descendants in preorder."""
        yield self
        for child in self.children:
            yield from child.walk()

    def is_statement(self) -> bool:
        return self.kind in STATEMENT_KINDS

    def is_expression(self) -> bool:
        return self.kind in EXPRESSION_KINDS

    def __repr__(self) -> str:  # keep parent out to avoid cycles
        bits = [self.kind]
        if self.label is not None:
            bits.append(repr(self.label))
        if self.kind == NodeKind.LITERAL:
            bits.append(repr(self.literal))
        return "AstNode(%s, %d children)" % (", ".join(bits), len(self.children))


def reindex(root: AstNode) -> AstNode:
    """Assign preorder indices 0..N-1 and parent links over the whole tree."""
    for i, node in enumerate(root.walk()):
        node.preorder_index = i
        for child in node.children:
            child.parent = node
    root.parent = None
    return root


def clone_tree(node: AstNode) -> AstNode:
    """Structural deep copy. Parent links inside the copy are rebuilt;
    the copy's root parent is None. Analysis annotations are kept."""
    copy = AstNode(
        kind=node.kind,
        label=node.label,
        literal=node.literal,
        children=[clone_tree(c) for c in node.children],
        span=node.span,
        inferred_type=node.inferred_type,
        preorder_index=node.preorder_index,
        resolved=node.resolved,
    )
    for child in copy.children:
        child.parent = copy
    return copy


def node_root(node: AstNode) -> AstNode:
    cur = node
    while cur.parent is not None:
        cur = cur.parent
    return cur


def ancestors(node: AstNode):
    """Yield parent, grandparent, ... up to the root."""
    cur = node.parent
    while cur is not None:
        yield cur
        cur = cur.parent


def enclosing(node: AstNode, kind: str | tuple[str, ...]) -> AstNode | None:
    """Nearest ancestor of the given kind(s), or the node itself if it matches."""
    kinds = (kind,) if isinstance(kind, str) else kind
    if node.kind in kinds:
        return node
    for anc in ancestors(node):
        if anc.kind in kinds:
            return anc
    return None
