"""Pretty-printer round-trip: parse(print(ast)) is a fixpoint."""

from hypothesis import given, settings
from hypothesis import strategies as st

from minij_repair.edits import normalize_equal
from minij_repair.fuzz import random_source
from minij_repair.lang.parser import parse
from minij_repair.lang.printer import pretty_print

SAMPLE = """
class Acc {
    int total;
    Acc(int seed) {
        this.total = seed;
    }
    int bump(int by) {
        if (by > 0 && this.total < 100) {
            this.total = this.total + by;
        } else {
            this.total = this.total - 1;
        }
        return this.total;
    }
    float share(int parts) {
        float f = (float) this.total / parts;
        return f;
    }
    String tag() {
        String s = new String();
        while (this.total > 9) {
            this.total = this.total / 10;
            s = s + "x";
        }
        return s + this.total;
    }
}
"""


def roundtrip(text: str) -> None:
    once = pretty_print(parse(text).ast)
    again = pretty_print(parse(once).ast)
    assert once == again
    assert normalize_equal(parse(text).ast, parse(once).ast)


def test_sample_roundtrip():
    roundtrip(SAMPLE)


def test_printed_form_is_stable():
    once = pretty_print(parse(SAMPLE).ast)
    assert once == pretty_print(parse(once).ast)


def test_else_and_nesting():
    roundtrip("""
    class A {
        int m(int x) {
            if (x > 0) {
                if (x > 10) {
                    return 2;
                }
                return 1;
            } else {
                return 0;
            }
        }
    }
    """)


def test_negative_literals_and_casts():
    roundtrip("""
    class A {
        float m(int[] xs) {
            int k = -3;
            float f = (float) (k + xs[0]) / 2.0;
            return -f;
        }
    }
    """)


def test_string_escapes_survive():
    roundtrip('class A { String m() { return "a\\"b\\n\\\\"; } }')


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_fuzzed_roundtrip(seed):
    """Every generated program prints to a parseable fixpoint."""
    roundtrip(random_source(seed))
