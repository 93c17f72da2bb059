"""On-disk bug corpus: layout, loading, and load-time invariant checks.

A bug directory holds `src/*.mj`, `tests/suite.mj`, `fix.patch` (unified
diff of the ground-truth fix against the buggy sources) and `bug.toml`
(keys: id, buggy_files, buggy_lines = [[file, line], ...], and optionally
expected_pattern). Loading verifies the advertised invariants: the buggy
program fails at least one test, the patched program passes all of them,
and every buggy line maps to a statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import tomli

from .diffs import DiffError, apply_patch
from .lang.interp import DEFAULT_TEST_TIMEOUT, StmtId, run_tests
from .lang.lexer import MiniJSyntaxError
from .lang.parser import parse
from .lang.typecheck import MiniJTypeError, Program, type_check

SUITE_PATH = "tests/suite.mj"


class CorpusError(Exception):
    pass


@dataclass
class BugCase:
    bug_id: str
    root: Path
    sources: dict[str, str]            # relative path -> buggy text
    suite_text: str
    fix_patch: str
    buggy_lines: list[tuple[str, int]]
    expected_pattern: str | None = None

    @property
    def suite_path(self) -> str:
        return SUITE_PATH

    def _build(self, texts: dict[str, str]) -> Program:
        files = [parse(text, path) for path, text in texts.items()]
        files.append(parse(self.suite_text, SUITE_PATH))
        return type_check(files)

    def program(self) -> Program:
        """A fresh buggy program; callers may annotate/patch it freely."""
        return self._build(self.sources)

    def fixed_texts(self) -> dict[str, str]:
        return apply_patch(self.sources, self.fix_patch)

    def fixed_program(self) -> Program:
        return self._build(self.fixed_texts())

    def buggy_statement_ids(self, program: Program) -> list[StmtId]:
        """Map each declared (file, line) to the outermost statement starting
        on that line."""
        out = []
        for path, line in self.buggy_lines:
            try:
                src = program.file(path)
            except KeyError:
                raise CorpusError(
                    "%s: buggy_lines names unknown file %r" % (self.bug_id, path))
            hits = []
            for sub in src.ast.walk():
                if not sub.is_statement():
                    continue
                start_line = src.text.count("\n", 0, sub.span[0]) + 1
                if start_line == line:
                    hits.append(sub)
            if not hits:
                raise CorpusError(
                    "%s: no statement starts on %s:%d" % (self.bug_id, path, line))
            outermost = min(hits, key=lambda n: n.preorder_index)
            out.append((path, outermost.preorder_index))
        return out


def _read_toml(path: Path, bug_id: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomli.load(fh)
    except (OSError, tomli.TOMLDecodeError) as exc:
        raise CorpusError("%s: cannot read bug.toml: %s" % (bug_id, exc))


def load_bug(bug_dir: Path, verify: bool = True,
             test_timeout: float = DEFAULT_TEST_TIMEOUT) -> BugCase:
    bug_dir = Path(bug_dir)
    bug_id = bug_dir.name
    meta_path = bug_dir / "bug.toml"
    if not meta_path.is_file():
        raise CorpusError("%s: missing bug.toml" % bug_id)
    meta = _read_toml(meta_path, bug_id)
    for key in ("id", "buggy_files", "buggy_lines"):
        if key not in meta:
            raise CorpusError("%s: bug.toml lacks required key %r" % (bug_id, key))
    if meta["id"] != bug_id:
        raise CorpusError("%s: bug.toml id %r does not match directory name"
                          % (bug_id, meta["id"]))

    src_dir = bug_dir / "src"
    sources = {}
    if src_dir.is_dir():
        for f in sorted(src_dir.glob("*.mj")):
            sources["src/" + f.name] = f.read_text()
    if not sources:
        raise CorpusError("%s: no source files under src/" % bug_id)
    suite_file = bug_dir / SUITE_PATH
    if not suite_file.is_file():
        raise CorpusError("%s: missing %s" % (bug_id, SUITE_PATH))
    patch_file = bug_dir / "fix.patch"
    if not patch_file.is_file():
        raise CorpusError("%s: missing fix.patch" % bug_id)

    for name in meta["buggy_files"]:
        if name not in sources:
            raise CorpusError("%s: buggy_files entry %r not in src/" % (bug_id, name))
    buggy_lines = []
    for item in meta["buggy_lines"]:
        if (not isinstance(item, list) or len(item) != 2
                or not isinstance(item[0], str) or not isinstance(item[1], int)):
            raise CorpusError("%s: buggy_lines entries must be [file, line]" % bug_id)
        buggy_lines.append((item[0], item[1]))
    if not buggy_lines:
        raise CorpusError("%s: buggy_lines is empty" % bug_id)

    bug = BugCase(
        bug_id=bug_id, root=bug_dir, sources=sources,
        suite_text=suite_file.read_text(), fix_patch=patch_file.read_text(),
        buggy_lines=buggy_lines,
        expected_pattern=meta.get("expected_pattern"))

    if verify:
        verify_bug(bug, test_timeout)
    return bug


def verify_bug(bug: BugCase, test_timeout: float = DEFAULT_TEST_TIMEOUT) -> None:
    """Check the three load-time invariants, naming the bug on failure."""
    try:
        buggy = bug.program()
    except (MiniJSyntaxError, MiniJTypeError) as exc:
        raise CorpusError("%s: buggy program does not build: %s" % (bug.bug_id, exc))
    bug.buggy_statement_ids(buggy)

    traces = run_tests(buggy, SUITE_PATH, test_timeout)
    if not any(t.failing for t in traces):
        raise CorpusError("%s: bug does not reproduce (all tests pass)" % bug.bug_id)

    try:
        fixed = bug.fixed_program()
    except DiffError as exc:
        raise CorpusError("%s: fix.patch does not apply: %s" % (bug.bug_id, exc))
    except (MiniJSyntaxError, MiniJTypeError) as exc:
        raise CorpusError("%s: patched program does not build: %s"
                          % (bug.bug_id, exc))
    fixed_traces = run_tests(fixed, SUITE_PATH, test_timeout)
    bad = [t.test_name for t in fixed_traces if t.failing]
    if bad:
        raise CorpusError("%s: ground truth leaves failing tests: %s"
                          % (bug.bug_id, ", ".join(sorted(bad))))


def load_corpus(root: Path, verify: bool = True,
                test_timeout: float = DEFAULT_TEST_TIMEOUT) -> list[BugCase]:
    root = Path(root)
    if not root.is_dir():
        raise CorpusError("corpus root %s is not a directory" % root)
    bugs = []
    for entry in sorted(root.iterdir()):
        if entry.name.startswith(".") or not entry.is_dir():
            continue
        bugs.append(load_bug(entry, verify=verify, test_timeout=test_timeout))
    return bugs
