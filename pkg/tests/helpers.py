"""Small builders shared by the test modules."""

from minij_repair.lang.parser import parse
from minij_repair.lang.typecheck import Program, type_check

SUITE = "tests/suite.mj"


def build(files: dict[str, str]) -> Program:
    """Parse and type-check a path->text mapping into a Program."""
    return type_check([parse(text, path) for path, text in files.items()])


def single(source: str, suite: str | None = None) -> Program:
    files = {"src/Main.mj": source}
    if suite is not None:
        files[SUITE] = suite
    return build(files)
