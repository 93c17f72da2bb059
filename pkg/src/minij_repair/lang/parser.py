"""Recursive-descent parser producing AstNode trees.

Notes on shape, fixed here so every later stage can rely on them:
  * parentheses group during parsing but leave no node behind;
  * a bare call ``m(x)`` is stored with an explicit ``this`` receiver;
  * every class has a superclass child, the implicit root when none is named;
  * method calls store the receiver as child 0, arguments after it.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..nodes import (
    AstNode,
    BOOLEAN,
    FLOAT,
    INT,
    LangType,
    NodeKind,
    ROOT_CLASS,
    STRING,
    VOID,
    array_type,
    class_type,
    reindex,
)
from .lexer import MiniJSyntaxError, Token, tokenize

PRIMITIVE_TYPE_WORDS = {"int": INT, "float": FLOAT, "boolean": BOOLEAN, "String": STRING}

# Tokens that may start the operand of a cast; used to tell ``(T) x`` from
# parenthesized expressions such as ``(a) + b``.
CAST_FOLLOW = frozenset({"ident", "int", "float", "string", "keyword", "(", "!"})
CAST_FOLLOW_KEYWORDS = frozenset({"this", "new", "super", "true", "false", "null"})


@dataclass
class SourceFile:
    """A parsed compilation unit: path, raw text, and its AST."""

    path: str
    text: str
    ast: AstNode


def parse(text: str, path: str = "<string>") -> SourceFile:
    parser = _Parser(tokenize(text, path), text, path)
    unit = parser.compilation_unit()
    reindex(unit)
    return SourceFile(path=path, text=text, ast=unit)


class _Parser:
    def __init__(self, tokens: list[Token], text: str, path: str):
        self.tokens = tokens
        self.text = text
        self.path = path
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.type != "eof":
            self.pos += 1
        return tok

    def at(self, ttype: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.type == ttype and (text is None or tok.text == text)

    def accept(self, ttype: str, text: str | None = None) -> Token | None:
        if self.at(ttype, text):
            return self.next()
        return None

    def expect(self, ttype: str, text: str | None = None) -> Token:
        tok = self.peek()
        if not self.at(ttype, text):
            want = text or ttype
            self.error("expected %r, found %r" % (want, tok.text or tok.type), tok)
        return self.next()

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise MiniJSyntaxError(message, self.path, tok.line, tok.col)

    def node(self, kind: str, start: Token, end_offset: int, **kw) -> AstNode:
        return AstNode(kind=kind, span=(start.offset, end_offset), **kw)

    def end_of(self, tok: Token) -> int:
        return tok.offset + len(tok.text)

    # -- declarations --------------------------------------------------------

    def compilation_unit(self) -> AstNode:
        start = self.peek()
        classes = []
        while not self.at("eof"):
            classes.append(self.class_decl())
        return AstNode(
            kind=NodeKind.COMPILATION_UNIT,
            children=classes,
            span=(0, len(self.text)),
        ) if classes else self.node(NodeKind.COMPILATION_UNIT, start, len(self.text))

    def class_decl(self) -> AstNode:
        start = self.expect("keyword", "class")
        name = self.expect("ident")
        if self.accept("keyword", "extends"):
            sup = self.expect("ident")
            super_ref = self.type_ref_node(class_type(sup.text), sup, self.end_of(sup))
        else:
            super_ref = AstNode(
                kind=NodeKind.TYPE_REF,
                label=ROOT_CLASS,
                inferred_type=class_type(ROOT_CLASS),
                span=(name.offset, self.end_of(name)),
            )
        self.expect("{")
        members = [super_ref]
        while not self.at("}"):
            members.append(self.member(name.text))
        close = self.expect("}")
        return self.node(
            NodeKind.CLASS_DECL, start, self.end_of(close),
            label=name.text, children=members,
        )

    def member(self, class_name: str) -> AstNode:
        start = self.peek()
        if self.at("ident", class_name) and self.peek(1).type == "(":
            return self.ctor_decl()
        if self.at("keyword", "void"):
            self.next()
            rt_node = self.type_ref_node(VOID, start, self.end_of(start))
            return self.method_decl(start, rt_node)
        rt_node = self.type_ref()
        name = self.expect("ident")
        if self.at("("):
            self.pos -= 1  # put the name back for method_decl
            return self.method_decl(start, rt_node)
        # field declaration
        children = [rt_node]
        if self.accept("="):
            children.append(self.expression())
        semi = self.expect(";")
        return self.node(
            NodeKind.FIELD_DECL, start, self.end_of(semi),
            label=name.text, children=children,
        )

    def ctor_decl(self) -> AstNode:
        name = self.expect("ident")
        params = self.param_list()
        body = self.block()
        return self.node(
            NodeKind.CTOR_DECL, name, body.span[1],
            label=name.text, children=params + [body],
        )

    def method_decl(self, start: Token, rt_node: AstNode) -> AstNode:
        name = self.expect("ident")
        params = self.param_list()
        body = self.block()
        return self.node(
            NodeKind.METHOD_DECL, start, body.span[1],
            label=name.text, children=[rt_node] + params + [body],
        )

    def param_list(self) -> list[AstNode]:
        self.expect("(")
        params = []
        if not self.at(")"):
            while True:
                pstart = self.peek()
                ptype = self.type_ref()
                pname = self.expect("ident")
                params.append(self.node(
                    NodeKind.PARAM, pstart, self.end_of(pname),
                    label=pname.text, children=[ptype],
                ))
                if not self.accept(","):
                    break
        self.expect(")")
        return params

    # -- types ---------------------------------------------------------------

    def looks_like_type(self) -> bool:
        tok = self.peek()
        if tok.type == "keyword" and tok.text in PRIMITIVE_TYPE_WORDS:
            return True
        return tok.type == "ident"

    def type_ref(self) -> AstNode:
        start = self.peek()
        if start.type == "keyword" and start.text in PRIMITIVE_TYPE_WORDS:
            self.next()
            lt = PRIMITIVE_TYPE_WORDS[start.text]
        elif start.type == "ident":
            self.next()
            lt = class_type(start.text)
        else:
            self.error("expected a type", start)
        end = self.end_of(start)
        while self.at("[") and self.peek(1).type == "]":
            self.next()
            close = self.next()
            lt = array_type(lt)
            end = self.end_of(close)
        return self.type_ref_node(lt, start, end)

    def type_ref_node(self, lt: LangType, start: Token, end: int) -> AstNode:
        return AstNode(
            kind=NodeKind.TYPE_REF, label=str(lt), inferred_type=lt,
            span=(start.offset, end),
        )

    # -- statements ------------------------------------------------------------

    def block(self) -> AstNode:
        start = self.expect("{")
        stmts = []
        while not self.at("}"):
            stmts.append(self.statement())
        close = self.expect("}")
        return self.node(NodeKind.BLOCK, start, self.end_of(close), children=stmts)

    def statement(self) -> AstNode:
        tok = self.peek()
        if tok.type == "keyword":
            handler = {
                "if": self.if_stmt, "while": self.while_stmt, "for": self.for_stmt,
                "return": self.return_stmt, "try": self.try_stmt,
                "assert": self.assert_stmt,
            }.get(tok.text)
            if handler:
                return handler()
            if tok.text == "break":
                self.next()
                semi = self.expect(";")
                return self.node(NodeKind.BREAK_STMT, tok, self.end_of(semi))
            if tok.text == "continue":
                self.next()
                semi = self.expect(";")
                return self.node(NodeKind.CONTINUE_STMT, tok, self.end_of(semi))
            if tok.text == "super" and self.peek(1).type == "(":
                return self.super_ctor_stmt()
            if tok.text in PRIMITIVE_TYPE_WORDS:
                return self.var_decl_stmt()
        if self.is_decl_ahead():
            return self.var_decl_stmt()
        return self.expr_or_assign_stmt()

    def is_decl_ahead(self) -> bool:
        """True when the upcoming tokens read as ``Type name`` rather than an
        expression; resolves the ``Foo x = ..`` vs ``foo.x = ..`` ambiguity."""
        if not self.at("ident"):
            return False
        k = 1
        while self.peek(k).type == "[" and self.peek(k + 1).type == "]":
            k += 2
        return self.peek(k).type == "ident"

    def var_decl_stmt(self) -> AstNode:
        start = self.peek()
        tnode = self.type_ref()
        name = self.expect("ident")
        children = [tnode]
        if self.accept("="):
            children.append(self.expression())
        semi = self.expect(";")
        return self.node(
            NodeKind.VAR_DECL_STMT, start, self.end_of(semi),
            label=name.text, children=children,
        )

    def if_stmt(self) -> AstNode:
        start = self.expect("keyword", "if")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        then = self.block()
        children = [cond, then]
        end = then.span[1]
        if self.accept("keyword", "else"):
            if self.at("keyword", "if"):
                other = self.if_stmt()
            else:
                other = self.block()
            children.append(other)
            end = other.span[1]
        return self.node(NodeKind.IF_STMT, start, end, children=children)

    def while_stmt(self) -> AstNode:
        start = self.expect("keyword", "while")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        body = self.block()
        return self.node(NodeKind.WHILE_STMT, start, body.span[1], children=[cond, body])

    def for_stmt(self) -> AstNode:
        start = self.expect("keyword", "for")
        self.expect("(")
        if self.looks_like_type() and (self.peek().type != "ident" or self.is_decl_ahead()):
            init = self.var_decl_stmt()
        else:
            init = self.assign_clause(terminator=";")
        cond = self.expression()
        self.expect(";")
        update = self.assign_clause(terminator=")")
        self.expect(")")
        body = self.block()
        return self.node(
            NodeKind.FOR_STMT, start, body.span[1],
            children=[init, cond, update, body],
        )

    def assign_clause(self, terminator: str) -> AstNode:
        """An assignment or call used as a for-clause (no trailing ';')."""
        start = self.peek()
        expr = self.expression()
        if self.accept("="):
            value = self.expression()
            end = value.span[1]
            node = self.node(NodeKind.ASSIGN_STMT, start, end, children=[expr, value])
        else:
            if expr.kind not in (NodeKind.METHOD_CALL, NodeKind.CLASS_CREATION):
                self.error("expected assignment or call", start)
            node = self.node(NodeKind.EXPR_STMT, start, expr.span[1], children=[expr])
        if terminator == ";":
            self.expect(";")
        return node

    def return_stmt(self) -> AstNode:
        start = self.expect("keyword", "return")
        children = []
        if not self.at(";"):
            children.append(self.expression())
        semi = self.expect(";")
        return self.node(NodeKind.RETURN_STMT, start, self.end_of(semi), children=children)

    def try_stmt(self) -> AstNode:
        start = self.expect("keyword", "try")
        body = self.block()
        self.expect("keyword", "catch")
        self.expect("(")
        exc_type = self.expect("ident")
        if exc_type.text != "Exception":
            self.error("catch clauses take the Exception type", exc_type)
        exc_name = self.expect("ident")
        self.expect(")")
        handler_block = self.block()
        handler = AstNode(
            kind=NodeKind.CATCH_CLAUSE, label=exc_name.text,
            children=[handler_block],
            span=(exc_type.offset, handler_block.span[1]),
        )
        return self.node(NodeKind.TRY_STMT, start, handler_block.span[1],
                         children=[body, handler])

    def assert_stmt(self) -> AstNode:
        start = self.expect("keyword", "assert")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        semi = self.expect(";")
        return self.node(NodeKind.ASSERT_STMT, start, self.end_of(semi), children=[cond])

    def super_ctor_stmt(self) -> AstNode:
        start = self.expect("keyword", "super")
        args = self.arg_list()
        semi = self.expect(";")
        return self.node(NodeKind.SUPER_CTOR_STMT, start, self.end_of(semi), children=args)

    def expr_or_assign_stmt(self) -> AstNode:
        start = self.peek()
        expr = self.expression()
        if self.accept("="):
            value = self.expression()
            semi = self.expect(";")
            return self.node(NodeKind.ASSIGN_STMT, start, self.end_of(semi),
                             children=[expr, value])
        if expr.kind not in (NodeKind.METHOD_CALL, NodeKind.CLASS_CREATION):
            self.error("expression is not a statement", start)
        semi = self.expect(";")
        return self.node(NodeKind.EXPR_STMT, start, self.end_of(semi), children=[expr])

    # -- expressions -------------------------------------------------------------

    def expression(self) -> AstNode:
        return self.ternary()

    def ternary(self) -> AstNode:
        cond = self.or_expr()
        if self.accept("?"):
            then = self.expression()
            self.expect(":")
            other = self.expression()
            return AstNode(
                kind=NodeKind.COND_EXPR, children=[cond, then, other],
                span=(cond.span[0], other.span[1]),
            )
        return cond

    def binary_level(self, ops: tuple[str, ...], sub) -> AstNode:
        left = sub()
        while self.peek().type in ops:
            op = self.next()
            right = sub()
            left = AstNode(
                kind=NodeKind.INFIX, label=op.text, children=[left, right],
                span=(left.span[0], right.span[1]),
            )
        return left

    def or_expr(self) -> AstNode:
        return self.binary_level(("||",), self.and_expr)

    def and_expr(self) -> AstNode:
        return self.binary_level(("&&",), self.eq_expr)

    def eq_expr(self) -> AstNode:
        return self.binary_level(("==", "!="), self.rel_expr)

    def rel_expr(self) -> AstNode:
        left = self.binary_level(("<", "<=", ">", ">="), self.add_expr)
        while self.at("keyword", "instanceof"):
            self.next()
            tnode = self.type_ref()
            left = AstNode(
                kind=NodeKind.INSTANCEOF, children=[left, tnode],
                span=(left.span[0], tnode.span[1]),
            )
        return left

    def add_expr(self) -> AstNode:
        return self.binary_level(("+", "-"), self.mul_expr)

    def mul_expr(self) -> AstNode:
        return self.binary_level(("*", "/", "%"), self.unary)

    def unary(self) -> AstNode:
        tok = self.peek()
        if tok.type in ("-", "!"):
            self.next()
            operand = self.unary()
            return AstNode(
                kind=NodeKind.PREFIX, label=tok.text, children=[operand],
                span=(tok.offset, operand.span[1]),
            )
        if tok.type == "(" and self.is_cast_ahead():
            self.next()
            tnode = self.type_ref()
            self.expect(")")
            operand = self.unary()
            return AstNode(
                kind=NodeKind.CAST, children=[tnode, operand],
                span=(tok.offset, operand.span[1]),
            )
        return self.postfix()

    def is_cast_ahead(self) -> bool:
        """Decide whether '(' opens a cast. Primitive type names always do;
        for ``(Name)`` or ``(Name[])`` the token after ')' must be able to
        start an operand (so ``(a) - b`` stays a subtraction)."""
        first = self.peek(1)
        k = 2
        if first.type == "keyword" and first.text in PRIMITIVE_TYPE_WORDS:
            pass
        elif first.type == "ident":
            pass
        else:
            return False
        while self.peek(k).type == "[" and self.peek(k + 1).type == "]":
            k += 2
        if self.peek(k).type != ")":
            return False
        if first.type == "keyword":
            return True
        after = self.peek(k + 1)
        if after.type == "keyword":
            return after.text in CAST_FOLLOW_KEYWORDS
        return after.type in CAST_FOLLOW and after.type != "keyword"

    def postfix(self) -> AstNode:
        expr = self.primary()
        while True:
            if self.accept("."):
                name = self.expect("ident")
                if self.at("("):
                    args = self.arg_list()
                    end = self.end_of(self.tokens[self.pos - 1])
                    expr = AstNode(
                        kind=NodeKind.METHOD_CALL, label=name.text,
                        children=[expr] + args, span=(expr.span[0], end),
                    )
                else:
                    expr = AstNode(
                        kind=NodeKind.FIELD_ACCESS, label=name.text,
                        children=[expr], span=(expr.span[0], self.end_of(name)),
                    )
                continue
            if self.at("[") and self.peek(1).type != "]":
                self.next()
                index = self.expression()
                close = self.expect("]")
                expr = AstNode(
                    kind=NodeKind.ARRAY_ACCESS, children=[expr, index],
                    span=(expr.span[0], self.end_of(close)),
                )
                continue
            return expr

    def arg_list(self) -> list[AstNode]:
        self.expect("(")
        args = []
        if not self.at(")"):
            while True:
                args.append(self.expression())
                if not self.accept(","):
                    break
        self.expect(")")
        return args

    def primary(self) -> AstNode:
        tok = self.peek()
        if tok.type == "int":
            self.next()
            return self.node(NodeKind.LITERAL, tok, self.end_of(tok),
                             label="int", literal=tok.value)
        if tok.type == "float":
            self.next()
            return self.node(NodeKind.LITERAL, tok, self.end_of(tok),
                             label="float", literal=tok.value)
        if tok.type == "string":
            self.next()
            return self.node(NodeKind.LITERAL, tok, self.end_of(tok),
                             label="String", literal=tok.value)
        if tok.type == "keyword":
            if tok.text in ("true", "false"):
                self.next()
                return self.node(NodeKind.LITERAL, tok, self.end_of(tok),
                                 label="boolean", literal=tok.text == "true")
            if tok.text == "null":
                self.next()
                return self.node(NodeKind.LITERAL, tok, self.end_of(tok),
                                 label="null", literal=None)
            if tok.text == "this":
                self.next()
                return self.node(NodeKind.THIS_REF, tok, self.end_of(tok))
            if tok.text == "super":
                self.next()
                self.expect(".")
                name = self.expect("ident")
                receiver = self.node(NodeKind.SUPER_REF, tok, self.end_of(tok))
                args = self.arg_list()
                end = self.end_of(self.tokens[self.pos - 1])
                return AstNode(
                    kind=NodeKind.METHOD_CALL, label=name.text,
                    children=[receiver] + args, span=(tok.offset, end),
                )
            if tok.text == "new":
                return self.creation()
        if tok.type == "(":
            self.next()
            inner = self.expression()
            self.expect(")")
            return inner
        if tok.type == "ident":
            self.next()
            if self.at("("):
                # bare call: give it an explicit this receiver
                receiver = AstNode(kind=NodeKind.THIS_REF,
                                   span=(tok.offset, tok.offset))
                args = self.arg_list()
                end = self.end_of(self.tokens[self.pos - 1])
                return AstNode(
                    kind=NodeKind.METHOD_CALL, label=tok.text,
                    children=[receiver] + args, span=(tok.offset, end),
                )
            return self.node(NodeKind.VAR_REF, tok, self.end_of(tok), label=tok.text)
        self.error("expected an expression", tok)

    def creation(self) -> AstNode:
        start = self.expect("keyword", "new")
        tok = self.peek()
        if tok.type == "keyword" and tok.text in PRIMITIVE_TYPE_WORDS:
            # `new String()` builds an empty string; other type keywords
            # only ever introduce array creations
            if tok.text == "String" and self.tokens[self.pos + 1].text == "(":
                self.next()
                args = self.arg_list()
                end = self.end_of(self.tokens[self.pos - 1])
                return AstNode(kind=NodeKind.CLASS_CREATION, label="String",
                               children=args, span=(start.offset, end))
            base = self.type_ref_for_creation()
            return self.array_creation(start, base)
        name = self.expect("ident")
        if self.at("["):
            lt: LangType = class_type(name.text)
            tnode = self.type_ref_node(lt, name, self.end_of(name))
            return self.array_creation(start, tnode)
        args = self.arg_list()
        end = self.end_of(self.tokens[self.pos - 1])
        return AstNode(
            kind=NodeKind.CLASS_CREATION, label=name.text, children=args,
            span=(start.offset, end),
        )

    def type_ref_for_creation(self) -> AstNode:
        tok = self.next()
        return self.type_ref_node(PRIMITIVE_TYPE_WORDS[tok.text], tok, self.end_of(tok))

    def array_creation(self, start: Token, element: AstNode) -> AstNode:
        # multi-dimensional element types: new int[][] is not supported,
        # only a single sized dimension over a (possibly array) element type
        self.expect("[")
        size = self.expression()
        close = self.expect("]")
        return AstNode(
            kind=NodeKind.ARRAY_CREATION, children=[element, size],
            span=(start.offset, self.end_of(close)),
        )
