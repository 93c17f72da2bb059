"""MiniJ language frontend: lexing, parsing, checking, printing, running."""

from .lexer import MiniJSyntaxError, tokenize
from .parser import SourceFile, parse
from .printer import pretty_print
from .typecheck import (
    ClassTable,
    MethodInfo,
    MiniJTypeError,
    Program,
    assignable,
    enclosing_class,
    enclosing_method,
    method_return_type,
    type_check,
)
from .interp import (
    ArrayV,
    AssertFailure,
    CoverageTrace,
    DEFAULT_TEST_TIMEOUT,
    Interpreter,
    MiniJRuntimeError,
    ObjectV,
    StmtId,
    discover_tests,
    run_tests,
)

__all__ = [
    "ArrayV", "AssertFailure", "ClassTable", "CoverageTrace",
    "DEFAULT_TEST_TIMEOUT", "Interpreter", "MethodInfo", "MiniJRuntimeError",
    "MiniJSyntaxError", "MiniJTypeError", "ObjectV", "Program", "SourceFile",
    "StmtId", "assignable", "discover_tests", "enclosing_class",
    "enclosing_method", "method_return_type", "parse", "pretty_print",
    "run_tests", "tokenize", "type_check",
]
