"""Tree-walking evaluator with per-statement coverage recording.

Execution semantics pinned here:
  * int is 64-bit two's complement with wrapping arithmetic, division
    truncates toward zero, and dividing by zero is a crash;
  * float is IEEE binary64, division by zero yields infinities or NaN;
  * String comparison with == is by value, object comparison is by identity;
  * a failed assert is its own outcome and cannot be caught in-language,
    every runtime crash can be caught by try/catch.

Each test gets a fresh heap, its own wall-clock deadline, and a coverage
trace of statement execution counts, keyed by (file path, preorder index).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from ..nodes import AstNode, LangType, NodeKind, ROOT_CLASS
from .typecheck import MethodInfo, Program

INT_MIN = -(2 ** 63)
INT_MAX = 2 ** 63 - 1
MAX_CALL_DEPTH = 160

StmtId = tuple[str, int]


class MiniJRuntimeError(Exception):
    """In-language crash: null dereference, bad cast, index out of bounds,
    division by zero, missing return, negative array size, stack overflow."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class AssertFailure(Exception):
    pass


class TimeoutSignal(Exception):
    pass


class _Return(Exception):
    def __init__(self, value):
        self.value = value


class _Break(Exception):
    pass


class _Continue(Exception):
    pass


@dataclass
class ObjectV:
    class_name: str
    fields: dict[str, object] = field(default_factory=dict)


@dataclass
class ArrayV:
    element: LangType
    items: list


@dataclass
class CoverageTrace:
    """Outcome and per-statement execution counts for a single test run."""

    test_name: str
    verdict: str  # "passed" | "failed" | "crashed" | "timed-out"
    counts: dict[StmtId, int]

    @property
    def failing(self) -> bool:
        return self.verdict != "passed"


def wrap64(v: int) -> int:
    return ((v - INT_MIN) & (2 ** 64 - 1)) + INT_MIN


def default_for(lt: LangType):
    if lt.kind == "int":
        return 0
    if lt.kind == "float":
        return 0.0
    if lt.kind == "boolean":
        return False
    return None


def stringify(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, int):
        return str(value)
    if value is None:
        return "null"
    return str(value)


class Interpreter:
    def __init__(self, program: Program, record_paths: frozenset[str],
                 deadline: float):
        self.program = program
        self.table = program.classes
        self.record_paths = record_paths
        self.deadline = deadline
        self.counts: dict[StmtId, int] = {}
        self.depth = 0
        self.stmt_ids: dict[int, StmtId] = {}
        for f in program.files:
            if f.path not in record_paths:
                continue
            for node in f.ast.walk():
                if node.is_statement():
                    self.stmt_ids[id(node)] = (f.path, node.preorder_index)

    # -- object lifecycle ----------------------------------------------------

    def instantiate(self, class_name: str, ctor: MethodInfo | None,
                    args: list) -> ObjectV:
        if class_name == "String":
            return ""  # new String() is the empty string
        obj = ObjectV(class_name=class_name)
        for info in self.table.hierarchy(class_name):
            for fname, (ftype, _) in info.fields.items():
                obj.fields.setdefault(fname, default_for(ftype))
        self.run_ctor(obj, class_name, ctor, args)
        return obj

    def run_ctor(self, obj: ObjectV, class_name: str,
                 ctor: MethodInfo | None, args: list) -> None:
        info = self.table.get(class_name)
        body_stmts: list[AstNode] = []
        env = _Env(obj)
        if ctor is not None and ctor.node is not None:
            for (pname, _), value in zip(ctor.params, args):
                env.declare(pname, value)
            body_stmts = ctor.node.children[-1].children
        # explicit super(...) call decides the superclass constructor
        if body_stmts and body_stmts[0].kind == NodeKind.SUPER_CTOR_STMT:
            super_stmt = body_stmts[0]
            self.record(super_stmt)
            super_args = [self.eval(a, env) for a in super_stmt.children]
            if info.super_name is not None and info.super_name != ROOT_CLASS:
                self.run_ctor(obj, info.super_name, super_stmt.resolved, super_args)
            body_stmts = body_stmts[1:]
        elif info.super_name is not None and info.super_name != ROOT_CLASS:
            self.run_ctor(obj, info.super_name, None, [])
        # field initializers, then the remaining constructor body
        if info.node is not None:
            for member in info.node.children[1:]:
                if member.kind == NodeKind.FIELD_DECL and len(member.children) > 1:
                    obj.fields[member.label] = self.eval(member.children[1], env)
        for stmt in body_stmts:
            try:
                self.exec(stmt, env)
            except _Return:
                break

    # -- dispatch ---------------------------------------------------------------

    def dispatch(self, runtime_class: str, static: MethodInfo) -> MethodInfo:
        """Leaf-most override of the statically resolved signature."""
        want = tuple(str(t) for t in static.param_types)
        for info in self.table.hierarchy(runtime_class):
            for m in info.methods:
                if m.name == static.name and \
                        tuple(str(t) for t in m.param_types) == want:
                    return m
        return static

    def invoke(self, receiver: ObjectV, method: MethodInfo, args: list):
        if method.node is None:
            if method.name == "clone":
                return ObjectV(class_name=receiver.class_name,
                               fields=dict(receiver.fields))
            raise MiniJRuntimeError("internal", "builtin %r" % method.name)
        self.depth += 1
        if self.depth > MAX_CALL_DEPTH:
            self.depth -= 1
            raise MiniJRuntimeError("stack_overflow", "call depth exceeded")
        try:
            env = _Env(receiver)
            for (pname, _), value in zip(method.params, args):
                env.declare(pname, value)
            try:
                for stmt in method.node.children[-1].children:
                    self.exec(stmt, env)
            except _Return as r:
                return r.value
            if method.return_type.kind == "void":
                return None
            raise MiniJRuntimeError(
                "missing_return",
                "method %s.%s finished without returning" % (method.owner, method.name))
        finally:
            self.depth -= 1

    # -- statements ---------------------------------------------------------------

    def record(self, node: AstNode) -> None:
        if time.monotonic() > self.deadline:
            raise TimeoutSignal()
        sid = self.stmt_ids.get(id(node))
        if sid is not None:
            self.counts[sid] = self.counts.get(sid, 0) + 1

    def exec(self, node: AstNode, env: "_Env") -> None:
        self.record(node)
        k = node.kind
        if k == NodeKind.VAR_DECL_STMT:
            value = (self.eval(node.children[1], env) if len(node.children) > 1
                     else default_for(node.children[0].inferred_type))
            value = self.coerce(value, node.children[0].inferred_type)
            env.declare(node.label, value)
        elif k == NodeKind.ASSIGN_STMT:
            self.assign(node.children[0], self.eval(node.children[1], env), env)
        elif k == NodeKind.EXPR_STMT:
            self.eval(node.children[0], env)
        elif k == NodeKind.IF_STMT:
            if self.eval(node.children[0], env):
                self.exec_block(node.children[1], env)
            elif len(node.children) == 3:
                other = node.children[2]
                if other.kind == NodeKind.IF_STMT:
                    self.exec(other, env)
                else:
                    self.exec_block(other, env)
        elif k == NodeKind.WHILE_STMT:
            while True:
                if time.monotonic() > self.deadline:
                    raise TimeoutSignal()
                if not self.eval(node.children[0], env):
                    break
                try:
                    self.exec_block(node.children[1], env)
                except _Break:
                    break
                except _Continue:
                    continue
        elif k == NodeKind.FOR_STMT:
            init, cond, update, body = node.children
            env.push()
            try:
                self.exec(init, env)
                while True:
                    if time.monotonic() > self.deadline:
                        raise TimeoutSignal()
                    if not self.eval(cond, env):
                        break
                    try:
                        self.exec_block(body, env)
                    except _Break:
                        break
                    except _Continue:
                        pass
                    self.exec(update, env)
            finally:
                env.pop()
        elif k == NodeKind.RETURN_STMT:
            raise _Return(self.eval(node.children[0], env) if node.children else None)
        elif k == NodeKind.TRY_STMT:
            body, handler = node.children
            try:
                self.exec_block(body, env)
            except MiniJRuntimeError:
                env.push()
                try:
                    env.declare(handler.label, ObjectV(class_name="Exception"))
                    for stmt in handler.children[0].children:
                        self.exec(stmt, env)
                finally:
                    env.pop()
        elif k == NodeKind.ASSERT_STMT:
            if not self.eval(node.children[0], env):
                raise AssertFailure()
        elif k == NodeKind.BREAK_STMT:
            raise _Break()
        elif k == NodeKind.CONTINUE_STMT:
            raise _Continue()
        elif k == NodeKind.SUPER_CTOR_STMT:
            # only reachable as a constructor head; handled in run_ctor
            raise MiniJRuntimeError("internal", "super(...) outside constructor head")
        else:
            raise MiniJRuntimeError("internal", "cannot execute %r" % k)

    def exec_block(self, block: AstNode, env: "_Env") -> None:
        env.push()
        try:
            for stmt in block.children:
                self.exec(stmt, env)
        finally:
            env.pop()

    def assign(self, target: AstNode, value, env: "_Env") -> None:
        value = self.coerce(value, target.inferred_type)
        if target.kind == NodeKind.VAR_REF:
            if target.resolved and target.resolved[0] == "field":
                env.this.fields[target.label] = value
            else:
                env.set(target.label, value)
        elif target.kind == NodeKind.FIELD_ACCESS:
            obj = self.eval(target.children[0], env)
            if obj is None:
                raise MiniJRuntimeError("null_deref",
                                        "field %r of null" % target.label)
            obj.fields[target.label] = value
        elif target.kind == NodeKind.ARRAY_ACCESS:
            arr = self.eval(target.children[0], env)
            idx = self.eval(target.children[1], env)
            if arr is None:
                raise MiniJRuntimeError("null_deref", "indexing null")
            if not 0 <= idx < len(arr.items):
                raise MiniJRuntimeError("index_oob",
                                        "index %d out of bounds" % idx)
            arr.items[idx] = self.coerce(value, arr.element)
        else:
            raise MiniJRuntimeError("internal", "bad assignment target")

    def coerce(self, value, lt: LangType | None):
        if lt is not None and lt.kind == "float" and isinstance(value, int) \
                and not isinstance(value, bool):
            return float(value)
        return value

    # -- expressions ------------------------------------------------------------

    def eval(self, node: AstNode, env: "_Env"):
        k = node.kind
        if k == NodeKind.LITERAL:
            return node.literal
        if k == NodeKind.VAR_REF:
            if node.resolved and node.resolved[0] == "field":
                return env.this.fields[node.label]
            return env.get(node.label)
        if k == NodeKind.THIS_REF:
            return env.this
        if k == NodeKind.FIELD_ACCESS:
            recv = self.eval(node.children[0], env)
            if node.label == "length":
                rt = node.children[0].inferred_type
                if rt is not None and rt.kind in ("array", "String"):
                    if recv is None:
                        raise MiniJRuntimeError("null_deref", "length of null")
                    return len(recv.items if isinstance(recv, ArrayV) else recv)
            if recv is None:
                raise MiniJRuntimeError("null_deref",
                                        "field %r of null" % node.label)
            return recv.fields[node.label]
        if k == NodeKind.ARRAY_ACCESS:
            arr = self.eval(node.children[0], env)
            idx = self.eval(node.children[1], env)
            if arr is None:
                raise MiniJRuntimeError("null_deref", "indexing null")
            if not 0 <= idx < len(arr.items):
                raise MiniJRuntimeError("index_oob", "index %d out of bounds" % idx)
            return arr.items[idx]
        if k == NodeKind.ARRAY_CREATION:
            size = self.eval(node.children[1], env)
            if size < 0:
                raise MiniJRuntimeError("neg_array_size", "length %d" % size)
            elem = node.children[0].inferred_type
            return ArrayV(element=elem, items=[default_for(elem)] * size)
        if k == NodeKind.CLASS_CREATION:
            if node.label == "String":
                return ""
            args = [self.eval(a, env) for a in node.children]
            ctor: MethodInfo | None = node.resolved
            if ctor is not None:
                args = [self.coerce(v, t) for v, t in zip(args, ctor.param_types)]
            return self.instantiate(node.label, ctor, args)
        if k == NodeKind.METHOD_CALL:
            return self.eval_call(node, env)
        if k == NodeKind.CAST:
            return self.eval_cast(node, env)
        if k == NodeKind.INSTANCEOF:
            value = self.eval(node.children[0], env)
            if value is None:
                return False
            target = node.children[1].inferred_type.name
            return self.table.is_subclass(value.class_name, target)
        if k == NodeKind.INFIX:
            return self.eval_infix(node, env)
        if k == NodeKind.PREFIX:
            value = self.eval(node.children[0], env)
            if node.label == "-":
                return wrap64(-value) if isinstance(value, int) else -value
            return not value
        if k == NodeKind.COND_EXPR:
            branch = node.children[1 if self.eval(node.children[0], env) else 2]
            return self.coerce(self.eval(branch, env), node.inferred_type)
        raise MiniJRuntimeError("internal", "cannot evaluate %r" % k)

    def eval_call(self, node: AstNode, env: "_Env"):
        method: MethodInfo = node.resolved
        receiver_node = node.children[0]
        args = [self.eval(a, env) for a in node.children[1:]]
        args = [self.coerce(v, t) for v, t in zip(args, method.param_types)]
        if receiver_node.kind == NodeKind.SUPER_REF:
            return self.invoke(env.this, method, args)  # static super dispatch
        receiver = self.eval(receiver_node, env)
        if receiver is None:
            raise MiniJRuntimeError("null_deref", "call %r on null" % node.label)
        return self.invoke(receiver, self.dispatch(receiver.class_name, method), args)

    def eval_cast(self, node: AstNode, env: "_Env"):
        tnode, operand = node.children
        target = tnode.inferred_type
        value = self.eval(operand, env)
        if target.kind == "int":
            if isinstance(value, float):
                if math.isnan(value):
                    return 0
                if value >= INT_MAX:
                    return INT_MAX
                if value <= INT_MIN:
                    return INT_MIN
                return int(value)
            return value
        if target.kind == "float":
            return float(value)
        if target.kind == "class":
            if value is None:
                return None
            if not self.table.is_subclass(value.class_name, target.name):
                raise MiniJRuntimeError(
                    "bad_cast", "cannot cast %s to %s" % (value.class_name, target.name))
            return value
        return value

    def eval_infix(self, node: AstNode, env: "_Env"):
        op = node.label
        # short-circuit forms first
        if op == "&&":
            return bool(self.eval(node.children[0], env)) and \
                bool(self.eval(node.children[1], env))
        if op == "||":
            return bool(self.eval(node.children[0], env)) or \
                bool(self.eval(node.children[1], env))
        a = self.eval(node.children[0], env)
        b = self.eval(node.children[1], env)
        if op == "+" and node.inferred_type is not None \
                and node.inferred_type.kind == "String":
            return stringify(a) + stringify(b)
        if op in ("==", "!="):
            eq = self.values_equal(a, b)
            return eq if op == "==" else not eq
        if op in ("<", "<=", ">", ">="):
            return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
        both_int = isinstance(a, int) and isinstance(b, int) \
            and not isinstance(a, bool) and not isinstance(b, bool)
        if both_int:
            return self.int_arith(op, a, b)
        return self.float_arith(op, float(a), float(b))

    def values_equal(self, a, b) -> bool:
        if isinstance(a, (ObjectV, ArrayV)) or isinstance(b, (ObjectV, ArrayV)):
            return a is b
        if a is None or b is None:
            return a is b
        if isinstance(a, str) or isinstance(b, str):
            return a == b
        return a == b  # numerics and booleans

    def int_arith(self, op: str, a: int, b: int) -> int:
        if op == "+":
            return wrap64(a + b)
        if op == "-":
            return wrap64(a - b)
        if op == "*":
            return wrap64(a * b)
        if b == 0:
            raise MiniJRuntimeError("div_zero", "integer division by zero")
        q = a // b
        if q < 0 and q * b != a:
            q += 1  # floor -> truncation toward zero
        if op == "/":
            return wrap64(q)
        return wrap64(a - q * b)

    def float_arith(self, op: str, a: float, b: float) -> float:
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            if b == 0.0:
                if a == 0.0 or math.isnan(a):
                    return math.nan
                return math.inf if (a > 0) == (math.copysign(1.0, b) > 0) else -math.inf
            return a / b
        if b == 0.0:
            return math.nan
        return math.fmod(a, b)


class _Env:
    """Scope stack for one activation; assignments write through to the
    declaring scope."""

    __slots__ = ("this", "scopes")

    def __init__(self, this: ObjectV | None):
        self.this = this
        self.scopes: list[dict] = [{}]

    def push(self) -> None:
        self.scopes.append({})

    def pop(self) -> None:
        self.scopes.pop()

    def declare(self, name: str, value) -> None:
        self.scopes[-1][name] = value

    def get(self, name: str):
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        raise MiniJRuntimeError("internal", "unbound variable %r" % name)

    def set(self, name: str, value) -> None:
        for scope in reversed(self.scopes):
            if name in scope:
                scope[name] = value
                return
        raise MiniJRuntimeError("internal", "unbound variable %r" % name)


DEFAULT_TEST_TIMEOUT = 0.1  # seconds per test


def discover_tests(program: Program, suite_path: str) -> list[tuple[str, str, MethodInfo]]:
    """(class name, test name, method) triples in declaration order."""
    suite = program.file(suite_path)
    found = []
    for cls in suite.ast.children:
        info = program.classes.get(cls.label)
        for m in info.methods:
            if m.name.startswith("test_") and not m.params:
                found.append((cls.label, m.name, m))
    return found


def run_tests(program: Program, suite_path: str,
              per_test_timeout: float = DEFAULT_TEST_TIMEOUT,
              record_paths: frozenset[str] | None = None) -> list[CoverageTrace]:
    """Execute every test_* method in the suite file against the program.

    Coverage is recorded for statements of the given files (by default all
    files except the suite itself), so localization never ranks test code.
    """
    if record_paths is None:
        record_paths = frozenset(f.path for f in program.files) - {suite_path}
    traces = []
    for class_name, test_name, method in discover_tests(program, suite_path):
        interp = Interpreter(program, record_paths,
                             deadline=time.monotonic() + per_test_timeout)
        verdict = "passed"
        try:
            holder = interp.instantiate(class_name, _pick_default_ctor(program, class_name), [])
            interp.invoke(holder, method, [])
        except AssertFailure:
            verdict = "failed"
        except MiniJRuntimeError:
            verdict = "crashed"
        except RecursionError:
            # deeply recursive candidate programs can exhaust the host stack
            # before the interpreter's own call-depth guard fires
            verdict = "crashed"
        except TimeoutSignal:
            verdict = "timed-out"
        traces.append(CoverageTrace(test_name="%s.%s" % (class_name, test_name),
                                    verdict=verdict, counts=interp.counts))
    return traces


def _pick_default_ctor(program: Program, class_name: str) -> MethodInfo | None:
    for ctor in program.classes.get(class_name).ctors:
        if not ctor.params:
            return ctor
    return None
