"""Deterministic source rendering for AstNode trees.

Parentheses are re-derived from precedence, so trees built by edits print
correctly without carrying grouping nodes. Structural equality implies
identical output, and reparsing the output reproduces the tree.
"""

from __future__ import annotations

from ..nodes import AstNode, NodeKind, ROOT_CLASS
from .lexer import escape_string

INDENT = "    "

# precedence levels, higher binds tighter
PREC_TERNARY = 1
PREC_OR = 2
PREC_AND = 3
PREC_EQ = 4
PREC_REL = 5
PREC_ADD = 6
PREC_MUL = 7
PREC_UNARY = 8
PREC_POSTFIX = 9

INFIX_PREC = {
    "||": PREC_OR, "&&": PREC_AND,
    "==": PREC_EQ, "!=": PREC_EQ,
    "<": PREC_REL, "<=": PREC_REL, ">": PREC_REL, ">=": PREC_REL,
    "+": PREC_ADD, "-": PREC_ADD,
    "*": PREC_MUL, "/": PREC_MUL, "%": PREC_MUL,
}


def pretty_print(node: AstNode) -> str:
    """Render a compilation unit (or any subtree) as MiniJ source text."""
    if node.kind == NodeKind.COMPILATION_UNIT:
        return "".join(_class_decl(c) for c in node.children)
    if node.kind == NodeKind.CLASS_DECL:
        return _class_decl(node)
    if node.is_statement() or node.kind == NodeKind.BLOCK:
        return "".join(_stmt(node, 0))
    return _expr(node, 0)


def _class_decl(node: AstNode) -> str:
    super_ref = node.children[0]
    head = "class " + node.label
    if super_ref.label != ROOT_CLASS:
        head += " extends " + super_ref.label
    lines = [head + " {\n"]
    for member in node.children[1:]:
        lines.extend(_member(member))
    lines.append("}\n")
    return "".join(lines)


def _member(node: AstNode) -> list[str]:
    if node.kind == NodeKind.FIELD_DECL:
        text = INDENT + node.children[0].label + " " + node.label
        if len(node.children) > 1:
            text += " = " + _expr(node.children[1], 0)
        return [text + ";\n"]
    if node.kind == NodeKind.CTOR_DECL:
        params = node.children[:-1]
        body = node.children[-1]
        head = INDENT + node.label + "(" + _params(params) + ") "
        return [head] + _block_lines(body, 1)
    # method
    rt = node.children[0]
    params = node.children[1:-1]
    body = node.children[-1]
    head = INDENT + rt.label + " " + node.label + "(" + _params(params) + ") "
    return [head] + _block_lines(body, 1)


def _params(params: list[AstNode]) -> str:
    return ", ".join(p.children[0].label + " " + p.label for p in params)


def _block_lines(block: AstNode, depth: int) -> list[str]:
    """Open brace through closing brace, the opener glued to the caller's
    line. depth is the indent level of the braces' owner."""
    lines = ["{\n"]
    for stmt in block.children:
        lines.extend(_stmt(stmt, depth + 1))
    lines.append(INDENT * depth + "}\n")
    return lines


def _stmt(node: AstNode, depth: int) -> list[str]:
    pad = INDENT * depth
    k = node.kind
    if k == NodeKind.BLOCK:
        return [pad] + _block_lines(node, depth)
    if k == NodeKind.VAR_DECL_STMT:
        return [pad + _var_decl_text(node) + ";\n"]
    if k == NodeKind.ASSIGN_STMT:
        return [pad + _assign_text(node) + ";\n"]
    if k == NodeKind.EXPR_STMT:
        return [pad + _expr(node.children[0], 0) + ";\n"]
    if k == NodeKind.RETURN_STMT:
        if node.children:
            return [pad + "return " + _expr(node.children[0], 0) + ";\n"]
        return [pad + "return;\n"]
    if k == NodeKind.ASSERT_STMT:
        return [pad + "assert(" + _expr(node.children[0], 0) + ");\n"]
    if k == NodeKind.BREAK_STMT:
        return [pad + "break;\n"]
    if k == NodeKind.CONTINUE_STMT:
        return [pad + "continue;\n"]
    if k == NodeKind.SUPER_CTOR_STMT:
        args = ", ".join(_expr(a, 0) for a in node.children)
        return [pad + "super(" + args + ");\n"]
    if k == NodeKind.IF_STMT:
        lines = [pad + "if (" + _expr(node.children[0], 0) + ") "]
        lines.extend(_block_lines(node.children[1], depth))
        if len(node.children) == 3:
            other = node.children[2]
            closer = lines.pop()  # re-open the closing brace line for else
            if other.kind == NodeKind.IF_STMT:
                chained = _stmt(other, depth)
                chained[0] = closer.rstrip("\n") + " else " + chained[0].lstrip()
                lines.extend(chained)
            else:
                lines.append(closer.rstrip("\n") + " else ")
                lines.extend(_block_lines(other, depth))
        return lines
    if k == NodeKind.WHILE_STMT:
        lines = [pad + "while (" + _expr(node.children[0], 0) + ") "]
        lines.extend(_block_lines(node.children[1], depth))
        return lines
    if k == NodeKind.FOR_STMT:
        init, cond, update, body = node.children
        if init.kind == NodeKind.VAR_DECL_STMT:
            init_text = _var_decl_text(init)
        else:
            init_text = _clause_text(init)
        head = (pad + "for (" + init_text + "; " + _expr(cond, 0) + "; "
                + _clause_text(update) + ") ")
        return [head] + _block_lines(body, depth)
    if k == NodeKind.TRY_STMT:
        body, handler = node.children
        lines = [pad + "try "] + _block_lines(body, depth)
        closer = lines.pop()
        lines.append(closer.rstrip("\n") + " catch (Exception " + handler.label + ") ")
        lines.extend(_block_lines(handler.children[0], depth))
        return lines
    raise ValueError("cannot print node kind %r as a statement" % k)


def _var_decl_text(node: AstNode) -> str:
    text = node.children[0].label + " " + node.label
    if len(node.children) > 1:
        text += " = " + _expr(node.children[1], 0)
    return text


def _assign_text(node: AstNode) -> str:
    return _expr(node.children[0], 0) + " = " + _expr(node.children[1], 0)


def _clause_text(node: AstNode) -> str:
    if node.kind == NodeKind.ASSIGN_STMT:
        return _assign_text(node)
    return _expr(node.children[0], 0)


def _expr(node: AstNode, min_prec: int) -> str:
    text, prec = _expr_prec(node)
    if prec < min_prec:
        return "(" + text + ")"
    return text


def _expr_prec(node: AstNode) -> tuple[str, int]:
    k = node.kind
    if k == NodeKind.LITERAL:
        return _literal_text(node), PREC_POSTFIX
    if k == NodeKind.VAR_REF:
        return node.label, PREC_POSTFIX
    if k == NodeKind.THIS_REF:
        return "this", PREC_POSTFIX
    if k == NodeKind.SUPER_REF:
        return "super", PREC_POSTFIX
    if k == NodeKind.FIELD_ACCESS:
        return _expr(node.children[0], PREC_POSTFIX) + "." + node.label, PREC_POSTFIX
    if k == NodeKind.ARRAY_ACCESS:
        arr = _expr(node.children[0], PREC_POSTFIX)
        return arr + "[" + _expr(node.children[1], 0) + "]", PREC_POSTFIX
    if k == NodeKind.METHOD_CALL:
        recv = _expr(node.children[0], PREC_POSTFIX)
        args = ", ".join(_expr(a, 0) for a in node.children[1:])
        return recv + "." + node.label + "(" + args + ")", PREC_POSTFIX
    if k == NodeKind.CLASS_CREATION:
        args = ", ".join(_expr(a, 0) for a in node.children)
        return "new " + node.label + "(" + args + ")", PREC_POSTFIX
    if k == NodeKind.ARRAY_CREATION:
        elem, size = node.children
        return "new " + elem.label + "[" + _expr(size, 0) + "]", PREC_POSTFIX
    if k == NodeKind.CAST:
        tnode, operand = node.children
        return "(" + tnode.label + ") " + _expr(operand, PREC_UNARY), PREC_UNARY
    if k == NodeKind.PREFIX:
        return node.label + _expr(node.children[0], PREC_UNARY), PREC_UNARY
    if k == NodeKind.INSTANCEOF:
        left = _expr(node.children[0], PREC_REL)
        return left + " instanceof " + node.children[1].label, PREC_REL
    if k == NodeKind.INFIX:
        prec = INFIX_PREC[node.label]
        left = _expr(node.children[0], prec)
        right = _expr(node.children[1], prec + 1)
        return left + " " + node.label + " " + right, prec
    if k == NodeKind.COND_EXPR:
        cond = _expr(node.children[0], PREC_OR)
        then = _expr(node.children[1], PREC_TERNARY)
        other = _expr(node.children[2], PREC_TERNARY)
        return cond + " ? " + then + " : " + other, PREC_TERNARY
    raise ValueError("cannot print node kind %r as an expression" % k)


def _literal_text(node: AstNode) -> str:
    tag = node.label
    if tag == "boolean":
        return "true" if node.literal else "false"
    if tag == "null":
        return "null"
    if tag == "String":
        return escape_string(node.literal)
    if tag == "float":
        return repr(float(node.literal))
    return str(node.literal)
