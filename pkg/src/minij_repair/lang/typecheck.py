"""Static checking: class table construction and expression typing.

Checking annotates expression nodes in place with inferred types and
resolved call targets, and returns a Program that bundles the files with
the class table. Reachability and definite-return analysis are out of
scope; a body that falls off the end of a value-returning method fails at
run time instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..nodes import (
    AstNode,
    BOOLEAN,
    EXCEPTION_CLASS,
    FLOAT,
    INT,
    LangType,
    NodeKind,
    NULL,
    ROOT_CLASS,
    STRING,
    VOID,
    ancestors,
    array_type,
    class_type,
    enclosing,
)
from .parser import SourceFile

ARITH_OPS = ("+", "-", "*", "/", "%")
REL_OPS = ("<", "<=", ">", ">=")
EQ_OPS = ("==", "!=")
LOGIC_OPS = ("&&", "||")


class MiniJTypeError(Exception):
    def __init__(self, message: str, path: str = "<string>", offset: int = 0,
                 text: str = ""):
        line = text.count("\n", 0, offset) + 1
        col = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__("%s:%d:%d: %s" % (path, line, col, message))
        self.path = path
        self.offset = offset


@dataclass
class MethodInfo:
    name: str
    owner: str
    params: list[tuple[str, LangType]]
    return_type: LangType
    node: AstNode | None = None     # None for the built-in clone
    is_ctor: bool = False

    @property
    def param_types(self) -> tuple[LangType, ...]:
        return tuple(t for _, t in self.params)


@dataclass
class ClassInfo:
    name: str
    super_name: str | None
    node: AstNode | None = None
    fields: dict[str, tuple[LangType, AstNode]] = field(default_factory=dict)
    methods: list[MethodInfo] = field(default_factory=list)
    ctors: list[MethodInfo] = field(default_factory=list)


class ClassTable:
    def __init__(self):
        root = ClassInfo(name=ROOT_CLASS, super_name=None)
        root.methods.append(MethodInfo(
            name="clone", owner=ROOT_CLASS, params=[],
            return_type=class_type(ROOT_CLASS),
        ))
        self.classes: dict[str, ClassInfo] = {
            ROOT_CLASS: root,
            EXCEPTION_CLASS: ClassInfo(name=EXCEPTION_CLASS, super_name=ROOT_CLASS),
        }

    def __contains__(self, name: str) -> bool:
        return name in self.classes

    def get(self, name: str) -> ClassInfo:
        return self.classes[name]

    def hierarchy(self, name: str):
        """Yield ClassInfo from the class itself up to the root."""
        while name is not None:
            info = self.classes[name]
            yield info
            name = info.super_name

    def is_subclass(self, sub: str, sup: str) -> bool:
        """True when sub == sup or sub transitively extends sup."""
        return any(info.name == sup for info in self.hierarchy(sub))

    def related(self, a: str, b: str) -> bool:
        return self.is_subclass(a, b) or self.is_subclass(b, a)

    def lookup_field(self, cls: str, name: str) -> tuple[LangType, str] | None:
        for info in self.hierarchy(cls):
            if name in info.fields:
                return info.fields[name][0], info.name
        return None

    def lookup_methods(self, cls: str, name: str) -> list[MethodInfo]:
        """Visible methods with the given name, leaf-most override first."""
        seen: set[tuple] = set()
        found = []
        for info in self.hierarchy(cls):
            for m in info.methods:
                if m.name != name:
                    continue
                key = (m.name, tuple(str(t) for t in m.param_types))
                if key in seen:
                    continue
                seen.add(key)
                found.append(m)
        return found

    def user_classes(self) -> list[ClassInfo]:
        return [c for c in self.classes.values()
                if c.name not in (ROOT_CLASS, EXCEPTION_CLASS)]


def assignable(src: LangType, dst: LangType, table: ClassTable) -> bool:
    """Widening assignment compatibility: identical types, int into float,
    subclass into superclass, or null into any reference type."""
    if src == dst:
        return True
    if src.kind == "int" and dst.kind == "float":
        return True
    if src.kind == "class" and dst.kind == "class":
        return table.is_subclass(src.name, dst.name)
    if src.kind == "null" and dst.is_reference and dst.kind != "null":
        return True
    return False


@dataclass
class Program:
    """Type-checked group of source files sharing one class table."""

    files: list[SourceFile]
    classes: ClassTable

    def file(self, path: str) -> SourceFile:
        for f in self.files:
            if f.path == path:
                return f
        raise KeyError(path)

    def statements(self):
        """Yield (stmt_id, node) for every statement, files in given order."""
        for f in self.files:
            for node in f.ast.walk():
                if node.is_statement():
                    yield (f.path, node.preorder_index), node

    def statement_at(self, stmt_id: tuple[str, int]) -> AstNode:
        path, index = stmt_id
        for node in self.file(path).ast.walk():
            if node.preorder_index == index:
                if not node.is_statement():
                    raise KeyError("node %d in %s is not a statement" % (index, path))
                return node
        raise KeyError("no node %d in %s" % (index, path))


def type_check(files: list[SourceFile]) -> Program:
    table = ClassTable()
    _collect_classes(files, table)
    checker = _Checker(table)
    for f in files:
        checker.check_file(f)
    return Program(files=files, classes=table)


def _collect_classes(files: list[SourceFile], table: ClassTable) -> None:
    declared: dict[str, SourceFile] = {}
    for f in files:
        for cls in f.ast.children:
            if cls.label in table or cls.label in declared:
                raise MiniJTypeError("duplicate class %r" % cls.label,
                                     f.path, cls.span[0], f.text)
            declared[cls.label] = f
    for f in files:
        for cls in f.ast.children:
            super_name = cls.children[0].label
            if super_name not in declared and super_name != ROOT_CLASS:
                raise MiniJTypeError("unknown superclass %r" % super_name,
                                     f.path, cls.span[0], f.text)
            info = ClassInfo(name=cls.label, super_name=super_name, node=cls)
            table.classes[cls.label] = info
    # hierarchy must be acyclic before any lookup walks it
    for name in declared:
        seen = set()
        cur: str | None = name
        while cur is not None:
            if cur in seen:
                f = declared[name]
                raise MiniJTypeError("inheritance cycle through %r" % name,
                                     f.path, 0, f.text)
            seen.add(cur)
            cur = table.get(cur).super_name
    for f in files:
        for cls in f.ast.children:
            info = table.get(cls.label)
            for member in cls.children[1:]:
                if member.kind == NodeKind.FIELD_DECL:
                    ftype = member.children[0].inferred_type
                    if member.label in info.fields:
                        raise MiniJTypeError("duplicate field %r" % member.label,
                                             f.path, member.span[0], f.text)
                    info.fields[member.label] = (ftype, member)
                elif member.kind == NodeKind.METHOD_DECL:
                    params = [(p.label, p.children[0].inferred_type)
                              for p in member.children[1:-1]]
                    info.methods.append(MethodInfo(
                        name=member.label, owner=cls.label, params=params,
                        return_type=member.children[0].inferred_type, node=member,
                    ))
                elif member.kind == NodeKind.CTOR_DECL:
                    params = [(p.label, p.children[0].inferred_type)
                              for p in member.children[:-1]]
                    info.ctors.append(MethodInfo(
                        name=cls.label, owner=cls.label, params=params,
                        return_type=class_type(cls.label), node=member, is_ctor=True,
                    ))


class _Checker:
    def __init__(self, table: ClassTable):
        self.table = table
        self.file: SourceFile | None = None

    def fail(self, message: str, node: AstNode):
        raise MiniJTypeError(message, self.file.path, node.span[0], self.file.text)

    def valid_type(self, lt: LangType, node: AstNode):
        if lt.kind == "class" and lt.name not in self.table:
            self.fail("unknown type %r" % lt.name, node)
        if lt.kind == "array":
            self.valid_type(lt.element, node)

    def check_file(self, f: SourceFile) -> None:
        self.file = f
        for cls in f.ast.children:
            self.check_class(cls)

    def check_class(self, cls: AstNode) -> None:
        info = self.table.get(cls.label)
        for member in cls.children[1:]:
            if member.kind == NodeKind.FIELD_DECL:
                self.valid_type(member.children[0].inferred_type, member)
                if len(member.children) > 1:
                    scope = _Scope(owner=cls.label)
                    t = self.expr(member.children[1], scope)
                    ftype = member.children[0].inferred_type
                    if not assignable(t, ftype, self.table):
                        self.fail("cannot initialize %s field with %s" % (ftype, t),
                                  member)
            elif member.kind == NodeKind.METHOD_DECL:
                rt = member.children[0].inferred_type
                if rt.kind != "void":
                    self.valid_type(rt, member)
                self.check_body(member.children[1:-1], member.children[-1],
                                cls.label, rt, is_ctor=False)
            elif member.kind == NodeKind.CTOR_DECL:
                self.check_body(member.children[:-1], member.children[-1],
                                cls.label, VOID, is_ctor=True)

    def check_body(self, params: list[AstNode], body: AstNode, owner: str,
                   return_type: LangType, is_ctor: bool) -> None:
        scope = _Scope(owner=owner, return_type=return_type, is_ctor=is_ctor)
        for p in params:
            self.valid_type(p.children[0].inferred_type, p)
            if p.label in scope.vars:
                self.fail("duplicate parameter %r" % p.label, p)
            scope.vars[p.label] = p.children[0].inferred_type
        self.block(body, scope)

    # -- statements -----------------------------------------------------------

    def block(self, node: AstNode, scope: "_Scope") -> None:
        for i, stmt in enumerate(node.children):
            self.stmt(stmt, scope, at_ctor_head=(scope.is_ctor and i == 0
                                                 and node.parent.kind == NodeKind.CTOR_DECL))

    def stmt(self, node: AstNode, scope: "_Scope", at_ctor_head: bool = False) -> None:
        k = node.kind
        if k == NodeKind.VAR_DECL_STMT:
            lt = node.children[0].inferred_type
            self.valid_type(lt, node)
            if node.label in scope.vars:
                self.fail("duplicate variable %r" % node.label, node)
            if len(node.children) > 1:
                t = self.expr(node.children[1], scope)
                if not assignable(t, lt, self.table):
                    self.fail("cannot assign %s to %s %r" % (t, lt, node.label), node)
            scope.vars[node.label] = lt
        elif k == NodeKind.ASSIGN_STMT:
            target, value = node.children
            if target.kind not in (NodeKind.VAR_REF, NodeKind.FIELD_ACCESS,
                                   NodeKind.ARRAY_ACCESS):
                self.fail("target is not assignable", node)
            tt = self.expr(target, scope)
            vt = self.expr(value, scope)
            if not assignable(vt, tt, self.table):
                self.fail("cannot assign %s to %s" % (vt, tt), node)
        elif k == NodeKind.EXPR_STMT:
            self.expr(node.children[0], scope)
        elif k == NodeKind.IF_STMT:
            self.require_boolean(node.children[0], scope)
            self.block(node.children[1], scope.child())
            if len(node.children) == 3:
                other = node.children[2]
                if other.kind == NodeKind.IF_STMT:
                    self.stmt(other, scope)
                else:
                    self.block(other, scope.child())
        elif k == NodeKind.WHILE_STMT:
            self.require_boolean(node.children[0], scope)
            self.block(node.children[1], scope.child(in_loop=True))
        elif k == NodeKind.FOR_STMT:
            init, cond, update, body = node.children
            inner = scope.child(in_loop=True)
            self.stmt(init, inner)
            self.require_boolean(cond, inner)
            self.stmt(update, inner)
            self.block(body, inner)
        elif k == NodeKind.RETURN_STMT:
            if scope.is_ctor:
                if node.children:
                    self.fail("constructors cannot return a value", node)
            elif scope.return_type.kind == "void":
                if node.children:
                    self.fail("void method cannot return a value", node)
            else:
                if not node.children:
                    self.fail("missing return value", node)
                t = self.expr(node.children[0], scope)
                if not assignable(t, scope.return_type, self.table):
                    self.fail("cannot return %s from %s method"
                              % (t, scope.return_type), node)
        elif k == NodeKind.TRY_STMT:
            body, handler = node.children
            self.block(body, scope.child())
            hscope = scope.child()
            if handler.label in hscope.vars:
                self.fail("duplicate variable %r" % handler.label, handler)
            hscope.vars[handler.label] = class_type(EXCEPTION_CLASS)
            self.block(handler.children[0], hscope)
        elif k == NodeKind.ASSERT_STMT:
            self.require_boolean(node.children[0], scope)
        elif k in (NodeKind.BREAK_STMT, NodeKind.CONTINUE_STMT):
            if not scope.in_loop:
                self.fail("%s outside a loop" % ("break" if k == NodeKind.BREAK_STMT
                                                 else "continue"), node)
        elif k == NodeKind.SUPER_CTOR_STMT:
            if not at_ctor_head:
                self.fail("super(...) must be the first constructor statement", node)
            args = [self.expr(a, scope) for a in node.children]
            sup = self.table.get(scope.owner).super_name
            ctor = self.resolve_ctor(sup, args, node)
            node.resolved = ctor
        else:
            self.fail("unexpected statement kind %r" % k, node)

    def require_boolean(self, node: AstNode, scope: "_Scope") -> None:
        t = self.expr(node, scope)
        if t.kind != "boolean":
            self.fail("condition must be boolean, found %s" % t, node)

    # -- expressions -----------------------------------------------------------

    def expr(self, node: AstNode, scope: "_Scope") -> LangType:
        t = self._expr(node, scope)
        node.inferred_type = t
        return t

    def _expr(self, node: AstNode, scope: "_Scope") -> LangType:
        k = node.kind
        if k == NodeKind.LITERAL:
            return {"int": INT, "float": FLOAT, "boolean": BOOLEAN,
                    "String": STRING, "null": NULL}[node.label]
        if k == NodeKind.VAR_REF:
            if node.label in scope.vars:
                node.resolved = ("local", node.label)
                return scope.vars[node.label]
            hit = self.table.lookup_field(scope.owner, node.label) if scope.owner else None
            if hit:
                node.resolved = ("field", hit[1])
                return hit[0]
            self.fail("unknown variable %r" % node.label, node)
        if k == NodeKind.THIS_REF:
            if not scope.owner:
                self.fail("this outside a class", node)
            return class_type(scope.owner)
        if k == NodeKind.SUPER_REF:
            self.fail("super is only valid as a call receiver", node)
        if k == NodeKind.FIELD_ACCESS:
            recv = self.expr(node.children[0], scope)
            if node.label == "length" and recv.kind in ("array", "String"):
                return INT
            if recv.kind == "class":
                hit = self.table.lookup_field(recv.name, node.label)
                if hit:
                    node.resolved = ("field", hit[1])
                    return hit[0]
                self.fail("class %s has no field %r" % (recv.name, node.label), node)
            self.fail("cannot access field %r on %s" % (node.label, recv), node)
        if k == NodeKind.ARRAY_ACCESS:
            arr = self.expr(node.children[0], scope)
            idx = self.expr(node.children[1], scope)
            if arr.kind != "array":
                self.fail("cannot index %s" % arr, node)
            if idx.kind != "int":
                self.fail("array index must be int, found %s" % idx, node)
            return arr.element
        if k == NodeKind.ARRAY_CREATION:
            elem = node.children[0].inferred_type
            self.valid_type(elem, node)
            size = self.expr(node.children[1], scope)
            if size.kind != "int":
                self.fail("array size must be int, found %s" % size, node)
            return array_type(elem)
        if k == NodeKind.CLASS_CREATION:
            if node.label == "String":
                if node.children:
                    self.fail("new String takes no arguments", node)
                return STRING
            if node.label not in self.table:
                self.fail("unknown class %r" % node.label, node)
            args = [self.expr(a, scope) for a in node.children]
            ctor = self.resolve_ctor(node.label, args, node)
            node.resolved = ctor
            return class_type(node.label)
        if k == NodeKind.METHOD_CALL:
            return self.call(node, scope)
        if k == NodeKind.CAST:
            tnode, operand = node.children
            target = tnode.inferred_type
            self.valid_type(target, node)
            src = self.expr(operand, scope)
            if self.cast_ok(src, target):
                return target
            self.fail("cannot cast %s to %s" % (src, target), node)
        if k == NodeKind.INSTANCEOF:
            src = self.expr(node.children[0], scope)
            target = node.children[1].inferred_type
            if target.kind != "class":
                self.fail("instanceof needs a class type", node)
            self.valid_type(target, node)
            if src.kind not in ("class", "null"):
                self.fail("instanceof needs a class-typed operand, found %s" % src,
                          node)
            return BOOLEAN
        if k == NodeKind.INFIX:
            return self.infix(node, scope)
        if k == NodeKind.PREFIX:
            t = self.expr(node.children[0], scope)
            if node.label == "-":
                if not t.is_numeric:
                    self.fail("unary - needs a numeric operand, found %s" % t, node)
                return t
            if t.kind != "boolean":
                self.fail("! needs a boolean operand, found %s" % t, node)
            return BOOLEAN
        if k == NodeKind.COND_EXPR:
            self.require_boolean(node.children[0], scope)
            a = self.expr(node.children[1], scope)
            b = self.expr(node.children[2], scope)
            merged = self.merge_types(a, b)
            if merged is None:
                self.fail("branches have incompatible types %s and %s" % (a, b), node)
            return merged
        self.fail("unexpected expression kind %r" % k, node)

    def infix(self, node: AstNode, scope: "_Scope") -> LangType:
        op = node.label
        a = self.expr(node.children[0], scope)
        b = self.expr(node.children[1], scope)
        if op == "+" and (a.kind == "String" or b.kind == "String"):
            stringable = ("String", "int", "float", "boolean")
            if a.kind in stringable and b.kind in stringable:
                return STRING
            self.fail("cannot concatenate %s and %s" % (a, b), node)
        if op in ARITH_OPS:
            if a.is_numeric and b.is_numeric:
                return FLOAT if "float" in (a.kind, b.kind) else INT
            self.fail("operator %r needs numeric operands, found %s and %s"
                      % (op, a, b), node)
        if op in REL_OPS:
            if a.is_numeric and b.is_numeric:
                return BOOLEAN
            self.fail("operator %r needs numeric operands, found %s and %s"
                      % (op, a, b), node)
        if op in EQ_OPS:
            if self.comparable(a, b):
                return BOOLEAN
            self.fail("cannot compare %s and %s" % (a, b), node)
        if op in LOGIC_OPS:
            if a.kind == "boolean" and b.kind == "boolean":
                return BOOLEAN
            self.fail("operator %r needs boolean operands, found %s and %s"
                      % (op, a, b), node)
        self.fail("unknown operator %r" % op, node)

    def comparable(self, a: LangType, b: LangType) -> bool:
        if a.is_numeric and b.is_numeric:
            return True
        if a.kind == "boolean" and b.kind == "boolean":
            return True
        if a.kind == "null" or b.kind == "null":
            return a.is_reference and b.is_reference
        if a.kind == "String" and b.kind == "String":
            return True
        if a.kind == "class" and b.kind == "class":
            return self.table.related(a.name, b.name)
        if a.kind == "array" and b.kind == "array":
            return a == b
        return False

    def cast_ok(self, src: LangType, target: LangType) -> bool:
        if src == target:
            return True
        if src.is_numeric and target.is_numeric:
            return True
        if src.kind == "null":
            return target.is_reference
        if src.kind == "class" and target.kind == "class":
            return self.table.related(src.name, target.name)
        return False

    def merge_types(self, a: LangType, b: LangType) -> LangType | None:
        if a == b:
            return a
        if a.is_numeric and b.is_numeric:
            return FLOAT
        if a.kind == "null" and b.is_reference:
            return b
        if b.kind == "null" and a.is_reference:
            return a
        if a.kind == "class" and b.kind == "class":
            if self.table.is_subclass(a.name, b.name):
                return b
            if self.table.is_subclass(b.name, a.name):
                return a
        return None

    def call(self, node: AstNode, scope: "_Scope") -> LangType:
        receiver = node.children[0]
        args = [self.expr(a, scope) for a in node.children[1:]]
        if receiver.kind == NodeKind.SUPER_REF:
            if not scope.owner:
                self.fail("super outside a class", node)
            cls = self.table.get(scope.owner).super_name
        else:
            rtype = self.expr(receiver, scope)
            if rtype.kind != "class":
                self.fail("cannot call %r on %s" % (node.label, rtype), node)
            cls = rtype.name
        method = self.resolve_method(cls, node.label, args, node)
        node.resolved = method
        return method.return_type

    def resolve_method(self, cls: str, name: str, args: list[LangType],
                       node: AstNode) -> MethodInfo:
        candidates = self.table.lookup_methods(cls, name)
        chosen = self.pick_overload(candidates, args)
        if chosen is None:
            self.fail("no applicable method %s(%s) on %s"
                      % (name, ", ".join(map(str, args)), cls), node)
        return chosen

    def resolve_ctor(self, cls: str, args: list[LangType],
                     node: AstNode) -> MethodInfo | None:
        ctors = self.table.get(cls).ctors
        if not ctors:
            if args:
                self.fail("class %s has no constructor taking %d arguments"
                          % (cls, len(args)), node)
            return None     # implicit default constructor
        chosen = self.pick_overload(ctors, args)
        if chosen is None:
            self.fail("no applicable constructor %s(%s)"
                      % (cls, ", ".join(map(str, args))), node)
        return chosen

    def pick_overload(self, candidates: list[MethodInfo],
                      args: list[LangType]) -> MethodInfo | None:
        """Applicable = matching arity with assignable arguments; prefer the
        overload with the most exact parameter types, earliest declared wins."""
        best = None
        best_score = -1
        for m in candidates:
            if len(m.params) != len(args):
                continue
            if not all(assignable(a, p, self.table)
                       for a, p in zip(args, m.param_types)):
                continue
            score = sum(1 for a, p in zip(args, m.param_types) if a == p)
            if score > best_score:
                best, best_score = m, score
        return best


@dataclass
class _Scope:
    owner: str | None = None
    return_type: LangType = VOID
    is_ctor: bool = False
    in_loop: bool = False
    vars: dict[str, LangType] = field(default_factory=dict)

    def child(self, in_loop: bool | None = None) -> "_Scope":
        # block-scoped: inner declarations stay inside, and redeclaring any
        # visible name is rejected, so there is no shadowing to interpret
        return _Scope(owner=self.owner, return_type=self.return_type,
                      is_ctor=self.is_ctor,
                      in_loop=self.in_loop if in_loop is None else in_loop,
                      vars=dict(self.vars))


def enclosing_method(node: AstNode) -> AstNode | None:
    """Nearest enclosing method or constructor declaration."""
    for anc in [node] + list(ancestors(node)):
        if anc.kind in (NodeKind.METHOD_DECL, NodeKind.CTOR_DECL):
            return anc
    return None


def enclosing_class(node: AstNode) -> AstNode | None:
    return enclosing(node, NodeKind.CLASS_DECL)


def method_return_type(method: AstNode) -> LangType:
    if method.kind == NodeKind.CTOR_DECL:
        return VOID
    return method.children[0].inferred_type
