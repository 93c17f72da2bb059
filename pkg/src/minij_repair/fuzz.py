"""Seeded generator of small, type-correct MiniJ programs.

Used by property tests (parse/print round-trips) and by the candidate
type-safety check, which needs many syntactically diverse programs whose
statements can all be handed to the pattern matchers. Programs are built
directly as source text, tracking variable types so the result always
type-checks; division and modulo are left out so fuzzed code is also safe
to execute.
"""

from __future__ import annotations

import random

from .lang.parser import parse
from .lang.typecheck import Program, type_check

_TYPES = ("int", "float", "boolean", "String")
_WORDS = ("ash", "bay", "cod", "dew", "elm", "fig", "gum", "hay")


class _Fuzzer:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.counter = 0

    def name(self, base: str) -> str:
        self.counter += 1
        return "%s%d" % (base, self.counter)

    # -- expressions ----------------------------------------------------

    def expr(self, want: str, scope: dict[str, str], depth: int) -> str:
        rng = self.rng
        names = [n for n, t in scope.items() if t == want]
        if depth <= 0 or (names and rng.random() < 0.3):
            if names and rng.random() < 0.6:
                return rng.choice(names)
            return self.literal(want)
        if want == "int":
            op = rng.choice(("+", "-", "*"))
            return "(%s %s %s)" % (self.expr("int", scope, depth - 1), op,
                                   self.expr("int", scope, depth - 1))
        if want == "float":
            op = rng.choice(("+", "-", "*"))
            left = self.expr(rng.choice(("float", "int")), scope, depth - 1)
            return "(%s %s %s)" % (left, op, self.expr("float", scope, depth - 1))
        if want == "boolean":
            roll = rng.random()
            if roll < 0.5:
                op = rng.choice(("<", "<=", ">", ">=", "==", "!="))
                return "(%s %s %s)" % (self.expr("int", scope, depth - 1), op,
                                       self.expr("int", scope, depth - 1))
            if roll < 0.7:
                return "(!%s)" % self.expr("boolean", scope, depth - 1)
            op = rng.choice(("&&", "||"))
            return "(%s %s %s)" % (self.expr("boolean", scope, depth - 1), op,
                                   self.expr("boolean", scope, depth - 1))
        return "(%s + %s)" % (self.expr("String", scope, depth - 1),
                              self.expr(rng.choice(("String", "int")),
                                        scope, depth - 1))

    def literal(self, want: str) -> str:
        rng = self.rng
        if want == "int":
            return str(rng.randint(0, 9))
        if want == "float":
            return "%d.%d" % (rng.randint(0, 9), rng.randint(0, 9))
        if want == "boolean":
            return rng.choice(("true", "false"))
        return '"%s"' % rng.choice(_WORDS)

    # -- statements -----------------------------------------------------

    def stmts(self, scope: dict[str, str], budget: int, indent: str) -> list[str]:
        out: list[str] = []
        while budget > 0:
            budget -= 1
            roll = self.rng.random()
            if roll < 0.45 or not scope:
                t = self.rng.choice(_TYPES)
                n = self.name("v")
                out.append("%s%s %s = %s;" % (indent, t, n,
                                              self.expr(t, scope, 2)))
                scope[n] = t
            elif roll < 0.7:
                n = self.rng.choice(sorted(scope))
                out.append("%s%s = %s;" % (indent, n,
                                           self.expr(scope[n], scope, 2)))
            elif roll < 0.9 and budget >= 1:
                cond = self.expr("boolean", scope, 1)
                body = self.stmts(dict(scope), 1, indent + "    ")
                budget -= 1
                out.append("%sif (%s) {" % (indent, cond))
                out.extend(body)
                out.append("%s}" % indent)
            else:
                # bounded counting loop, always terminates
                i = self.name("i")
                bound = self.rng.randint(1, 4)
                out.append("%sint %s = 0;" % (indent, i))
                out.append("%swhile (%s < %d) {" % (indent, i, bound))
                out.append("%s    %s = %s + 1;" % (indent, i, i))
                out.append("%s}" % indent)
                scope[i] = "int"
        return out

    def method(self, fields: dict[str, str], budget: int) -> list[str]:
        rng = self.rng
        ret = rng.choice(_TYPES + ("void",))
        params = {}
        for _ in range(rng.randint(0, 2)):
            params[self.name("p")] = rng.choice(_TYPES)
        sig = ", ".join("%s %s" % (t, n) for n, t in params.items())
        lines = ["    %s %s(%s) {" % (ret, self.name("m"), sig)]
        scope = dict(fields)
        scope.update(params)
        lines.extend(self.stmts(scope, budget, "        "))
        if ret != "void":
            lines.append("        return %s;" % self.expr(ret, scope, 2))
        lines.append("    }")
        return lines

    def source(self) -> str:
        rng = self.rng
        fields = {self.name("f"): rng.choice(_TYPES)
                  for _ in range(rng.randint(0, 2))}
        lines = ["class Fuzz {"]
        for n, t in fields.items():
            lines.append("    %s %s;" % (t, n))
        remaining = rng.randint(4, 12)
        while remaining > 0:
            chunk = min(remaining, rng.randint(2, 5))
            lines.extend(self.method(fields, chunk))
            remaining -= chunk
        lines.append("}")
        return "\n".join(lines) + "\n"


def random_source(seed: int) -> str:
    return _Fuzzer(random.Random(seed)).source()


def random_program(seed: int, path: str = "src/Fuzz.mj") -> Program:
    return type_check([parse(random_source(seed), path)])
