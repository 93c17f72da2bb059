"""Hand-rolled lexer for MiniJ source text."""

from __future__ import annotations

from dataclasses import dataclass


KEYWORDS = frozenset({
    "class", "extends", "if", "else", "while", "for", "return",
    "try", "catch", "new", "instanceof", "this", "super",
    "true", "false", "null",
    "int", "float", "boolean", "String", "void",
    "assert", "break", "continue",
})

# Longest symbols first so the scanner is greedy.
SYMBOLS = (
    "==", "!=", "<=", ">=", "&&", "||",
    "+", "-", "*", "/", "%", "<", ">", "=", "!",
    "(", ")", "{", "}", "[", "]", ";", ",", ".", "?", ":",
)

ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "\\": "\\"}
UNESCAPES = {v: "\\" + k for k, v in ESCAPES.items()}


class MiniJSyntaxError(Exception):
    """Lexing or parsing failure with a source location."""

    def __init__(self, message: str, path: str, line: int, col: int):
        super().__init__("%s:%d:%d: %s" % (path, line, col, message))
        self.path = path
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    type: str          # "ident" | "keyword" | "int" | "float" | "string" | symbol | "eof"
    text: str
    value: object      # decoded literal value where applicable
    offset: int
    line: int
    col: int


def tokenize(text: str, path: str = "<string>") -> list[Token]:
    tokens: list[Token] = []
    i = 0
    line = 1
    line_start = 0
    n = len(text)

    def err(msg: str, at: int):
        raise MiniJSyntaxError(msg, path, line, at - line_start + 1)

    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            line_start = i
            continue
        if ch in " \t\r":
            i += 1
            continue
        if text.startswith("//", i):
            j = text.find("\n", i)
            i = n if j < 0 else j
            continue
        if text.startswith("/*", i):
            j = text.find("*/", i + 2)
            if j < 0:
                err("unterminated block comment", i)
            line += text.count("\n", i, j)
            if "\n" in text[i:j]:
                line_start = text.rfind("\n", i, j) + 1
            i = j + 2
            continue

        start = i
        col = i - line_start + 1

        if ch.isalpha() or ch == "_":
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            word = text[start:i]
            ttype = "keyword" if word in KEYWORDS else "ident"
            tokens.append(Token(ttype, word, word, start, line, col))
            continue

        if ch.isdigit():
            while i < n and text[i].isdigit():
                i += 1
            is_float = False
            if i < n and text[i] == "." and i + 1 < n and text[i + 1].isdigit():
                is_float = True
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            if i < n and text[i] in "eE":
                j = i + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    is_float = True
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
            word = text[start:i]
            if is_float:
                tokens.append(Token("float", word, float(word), start, line, col))
            else:
                tokens.append(Token("int", word, int(word), start, line, col))
            continue

        if ch == '"':
            i += 1
            parts: list[str] = []
            while True:
                if i >= n or text[i] == "\n":
                    err("unterminated string literal", start)
                c = text[i]
                if c == '"':
                    i += 1
                    break
                if c == "\\":
                    if i + 1 >= n or text[i + 1] not in ESCAPES:
                        err("bad escape sequence", i)
                    parts.append(ESCAPES[text[i + 1]])
                    i += 2
                    continue
                parts.append(c)
                i += 1
            tokens.append(Token("string", text[start:i], "".join(parts), start, line, col))
            continue

        for sym in SYMBOLS:
            if text.startswith(sym, i):
                i += len(sym)
                tokens.append(Token(sym, sym, sym, start, line, col))
                break
        else:
            err("unexpected character %r" % ch, i)

    tokens.append(Token("eof", "", None, n, line, n - line_start + 1))
    return tokens


def escape_string(value: str) -> str:
    """Render a Python string as a MiniJ string literal."""
    out = ['"']
    for ch in value:
        out.append(UNESCAPES.get(ch, ch))
    out.append('"')
    return "".join(out)
