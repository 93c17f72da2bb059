"""Lexer and parser behaviour: token shapes, grammar coverage, error spans."""

import pytest

from minij_repair.lang.lexer import MiniJSyntaxError, tokenize
from minij_repair.lang.parser import parse
from minij_repair.lang.typecheck import MiniJTypeError, type_check
from minij_repair.nodes import NodeKind


def first(root, kind):
    for node in root.walk():
        if node.kind == kind:
            return node
    raise AssertionError("no %s node" % kind)


class TestLexer:
    def test_token_stream(self):
        toks = tokenize("int x = 40 + 2;")
        assert [t.text for t in toks[:-1]] == ["int", "x", "=", "40", "+", "2", ";"]
        assert toks[-1].type == "eof"

    def test_keywords_vs_identifiers(self):
        toks = tokenize("classy class")
        assert toks[0].type == "ident"
        assert toks[1].type == "keyword"

    def test_literal_values(self):
        toks = tokenize('40 2.5 "hi" true null')
        assert [t.type for t in toks[:-1]] == ["int", "float", "string",
                                               "keyword", "keyword"]
        assert toks[0].value == 40
        assert toks[1].value == 2.5
        assert toks[2].value == "hi"

    def test_string_escapes(self):
        toks = tokenize('"a\\"b\\n"')
        assert toks[0].value == 'a"b\n'

    def test_comments_are_skipped(self):
        plain = [t.type for t in tokenize("1")]
        commented = [t.type for t in tokenize("// note\n1")]
        assert plain == commented

    def test_line_and_column(self):
        toks = tokenize("a\n  b")
        assert (toks[0].line, toks[0].col) == (1, 1)
        assert (toks[1].line, toks[1].col) == (2, 3)

    def test_unterminated_string(self):
        with pytest.raises(MiniJSyntaxError):
            tokenize('"oops')

    def test_stray_character(self):
        with pytest.raises(MiniJSyntaxError):
            tokenize("int x = @;")


class TestParser:
    def test_class_shape(self):
        unit = parse("class A { int f; int get() { return this.f; } }")
        cls = unit.ast.children[0]
        assert cls.kind == NodeKind.CLASS_DECL
        assert cls.label == "A"
        assert first(cls, NodeKind.METHOD_DECL).label == "get"

    def test_precedence(self):
        unit = parse("class A { int m() { return 1 + 2 * 3; } }")
        top = first(unit.ast, NodeKind.RETURN_STMT).children[0]
        assert top.label == "+"
        assert top.children[1].label == "*"

    def test_parenthesized_grouping(self):
        unit = parse("class A { int m() { return (1 + 2) * 3; } }")
        top = first(unit.ast, NodeKind.RETURN_STMT).children[0]
        assert top.label == "*"
        assert top.children[0].label == "+"

    def test_control_statements(self):
        unit = parse("""
        class A {
            int m(int n) {
                int s = 0;
                for (int i = 0; i < n; i = i + 1) {
                    if (i == 2) {
                        continue;
                    }
                    while (s < 10) {
                        s = s + i;
                        break;
                    }
                }
                try {
                    s = s + 1;
                } catch (Exception e) {
                    return -1;
                }
                return s;
            }
        }
        """)
        for kind in (NodeKind.FOR_STMT, NodeKind.WHILE_STMT, NodeKind.IF_STMT,
                     NodeKind.TRY_STMT, NodeKind.BREAK_STMT,
                     NodeKind.CONTINUE_STMT):
            assert first(unit.ast, kind) is not None

    def test_new_string_is_class_creation(self):
        unit = parse("class A { String m() { return new String(); } }")
        creation = first(unit.ast, NodeKind.CLASS_CREATION)
        assert creation.label == "String"

    def test_new_string_with_argument_fails_typecheck(self):
        unit = parse('class A { String m() { return new String("x"); } }')
        with pytest.raises(MiniJTypeError):
            type_check([unit])

    def test_array_creation_and_access(self):
        unit = parse("""
        class A {
            int m() {
                int[] xs = new int[3];
                xs[0] = 5;
                return xs[0] + xs.length;
            }
        }
        """)
        assert first(unit.ast, NodeKind.ARRAY_CREATION) is not None
        assert first(unit.ast, NodeKind.ARRAY_ACCESS) is not None

    def test_instanceof_and_cast(self):
        unit = parse("""
        class B { }
        class A {
            int m(B b) {
                if (b instanceof B) {
                    B c = (B) b;
                    return 1;
                }
                return 0;
            }
        }
        """)
        assert first(unit.ast, NodeKind.INSTANCEOF) is not None
        assert first(unit.ast, NodeKind.CAST) is not None

    def test_missing_semicolon_reports_position(self):
        with pytest.raises(MiniJSyntaxError) as err:
            parse("class A { int m() { return 1 } }")
        assert "1:30" in str(err.value)

    def test_super_calls(self):
        unit = parse("""
        class A {
            int v;
            A(int v0) {
                this.v = v0;
            }
            A copy() {
                return this;
            }
        }
        class B extends A {
            B(int v0) {
                super(v0);
            }
            A copy() {
                A c = (B) super.copy();
                return c;
            }
        }
        """)
        assert first(unit.ast, NodeKind.SUPER_CTOR_STMT) is not None
        assert first(unit.ast, NodeKind.SUPER_REF) is not None

    def test_spans_cover_source(self):
        text = "class A { int m() { return 1 + 2; } }"
        unit = parse(text)
        for node in unit.ast.walk():
            lo, hi = node.span
            assert 0 <= lo <= hi <= len(text)

    def test_statement_markers(self):
        unit = parse("class A { void m() { int x = 1; x = 2; } }")
        decl = first(unit.ast, NodeKind.VAR_DECL_STMT)
        assert decl.is_statement()
        assert not decl.is_expression()
        ref = first(unit.ast, NodeKind.VAR_REF)
        assert ref.is_expression()
