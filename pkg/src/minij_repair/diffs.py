"""Unified-diff generation and application for ground-truth patches.

Generation delegates to difflib; application is a small context-verified
hunk applier. Only the plain unified format is supported: `--- a/<path>`,
`+++ b/<path>`, `@@ -l,n +l,n @@`. Every source file we produce ends with a
newline, so the no-newline marker is rejected rather than handled.
"""

from __future__ import annotations

import difflib
import re
from dataclasses import dataclass, field


class DiffError(Exception):
    pass


_HUNK_RE = re.compile(r"^@@ -(\d+)(?:,(\d+))? \+(\d+)(?:,(\d+))? @@")


@dataclass
class Hunk:
    old_start: int
    old_len: int
    new_start: int
    new_len: int
    lines: list[str] = field(default_factory=list)  # "+x", "-x", " x"


def make_patch(old_text: str, new_text: str, path: str) -> str:
    diff = difflib.unified_diff(
        old_text.splitlines(keepends=True), new_text.splitlines(keepends=True),
        fromfile="a/" + path, tofile="b/" + path)
    return "".join(diff)


def _strip_prefix(name: str) -> str:
    name = name.split("\t")[0].strip()
    for prefix in ("a/", "b/"):
        if name.startswith(prefix):
            return name[len(prefix):]
    return name


def parse_patch(text: str) -> dict[str, list[Hunk]]:
    """Group hunks by target path. Raises DiffError on malformed input."""
    files: dict[str, list[Hunk]] = {}
    current: list[Hunk] | None = None
    hunk: Hunk | None = None
    lines = text.splitlines(keepends=True)
    i = 0
    while i < len(lines):
        line = lines[i]
        if line.startswith("--- "):
            if i + 1 >= len(lines) or not lines[i + 1].startswith("+++ "):
                raise DiffError("file header without +++ line")
            path = _strip_prefix(lines[i + 1][4:])
            current = files.setdefault(path, [])
            hunk = None
            i += 2
            continue
        m = _HUNK_RE.match(line)
        if m:
            if current is None:
                raise DiffError("hunk before any file header")
            hunk = Hunk(
                old_start=int(m.group(1)),
                old_len=int(m.group(2)) if m.group(2) is not None else 1,
                new_start=int(m.group(3)),
                new_len=int(m.group(4)) if m.group(4) is not None else 1)
            current.append(hunk)
            i += 1
            continue
        if line.startswith("\\"):
            raise DiffError("files without trailing newlines are not supported")
        if hunk is not None and line[:1] in ("+", "-", " "):
            hunk.lines.append(line)
            i += 1
            continue
        if line.strip() == "":
            i += 1
            continue
        raise DiffError("unrecognized patch line: %r" % line.rstrip("\n"))
    return files


def apply_hunks(old_text: str, hunks: list[Hunk]) -> str:
    old_lines = old_text.splitlines(keepends=True)
    out: list[str] = []
    pos = 0
    for hunk in hunks:
        # a zero-length source range anchors *after* old_start lines
        start = hunk.old_start if hunk.old_len == 0 else hunk.old_start - 1
        if start < pos or start > len(old_lines):
            raise DiffError("hunk out of order or out of range")
        out.extend(old_lines[pos:start])
        pos = start
        for raw in hunk.lines:
            tag, text = raw[0], raw[1:]
            if tag in (" ", "-"):
                if pos >= len(old_lines) or old_lines[pos] != text:
                    raise DiffError(
                        "context mismatch at line %d: expected %r, found %r"
                        % (pos + 1, text,
                           old_lines[pos] if pos < len(old_lines) else "<eof>"))
                if tag == " ":
                    out.append(text)
                pos += 1
            elif tag == "+":
                out.append(text)
            else:
                raise DiffError("bad hunk line tag %r" % tag)
    out.extend(old_lines[pos:])
    return "".join(out)


def apply_patch(texts: dict[str, str], patch_text: str) -> dict[str, str]:
    """Apply a (possibly multi-file) unified diff to a text mapping."""
    result = dict(texts)
    for path, hunks in parse_patch(patch_text).items():
        if path not in result:
            raise DiffError("patch targets unknown file %r" % path)
        result[path] = apply_hunks(result[path], hunks)
    return result
