"""A small expression language for map components.

Grammar (standard precedence, ``^`` binds tightest and is right-associative)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | "+" unary | power
    power  := atom ("^" unary)?
    atom   := INT | NAME | NAME "(" expr ")" | "(" expr ")"

Names resolve, in order, to the imaginary unit ``i``, bound parameters, and
variables of the evaluation space.  ``sqrt`` is the only function and is
available in series mode only.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from sympy.polys.domains import QQ_I

from .algebra.poly import Poly
from .algebra.rational import RationalFn
from .algebra.scalars import Scalar, to_scalar
from .algebra.series import TruncSeries, sqrt_series
from .algebra.space import VariableSpace
from .errors import BranchError, ExpressionError


@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple[int, int]


@dataclass(frozen=True)
class Name:
    ident: str
    pos: tuple[int, int]


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"
    pos: tuple[int, int]


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: tuple[int, int]


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: tuple[int, int]


Node = Union[Num, Name, Call, Neg, BinOp]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))")
_FUNCS = {"sqrt"}


def _tokenize(text: str):
    toks = []
    pos = 0
    line, line_start = 1, 0
    n = len(text)
    while pos < n:
        if text[pos] in " \t\r\n":
            if text[pos] == "\n":
                line, line_start = line + 1, pos + 1
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ExpressionError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), (line, col)))
        pos = m.end()
    toks.append(("end", "", (line, pos - line_start + 1)))
    return toks


class _Parser:
    _BINARY = {"+": 10, "-": 10, "*": 20, "/": 20}

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value or kind == "end" and value:
            got = "end of input" if kind == "end" else repr(v)
            raise ExpressionError(f"expected {value!r}, got {got}", *pos)

    def parse(self) -> Node:
        node = self.expr(0)
        kind, v, pos = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected {v!r}", *pos)
        return node

    def expr(self, min_bp: int) -> Node:
        left = self.unary()
        while True:
            kind, v, pos = self.peek()
            bp = self._BINARY.get(v) if kind == "op" else None
            if bp is None or bp <= min_bp:
                return left
            self.take()
            right = self.expr(bp)
            left = BinOp(v, left, right, pos)

    def unary(self) -> Node:
        kind, v, pos = self.peek()
        if kind == "op" and v in "+-":
            self.take()
            operand = self.unary()
            return Neg(operand, pos) if v == "-" else operand
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, v, pos = self.peek()
        if kind == "op" and v == "^":
            self.take()
            return BinOp("^", base, self.unary(), pos)
        return base

    def atom(self) -> Node:
        kind, v, pos = self.take()
        if kind == "int":
            return Num(int(v), pos)
        if kind == "name":
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "(":
                if v not in _FUNCS:
                    raise ExpressionError(f"unknown function {v!r}", *pos)
                self.take()
                arg = self.expr(0)
                self.expect(")")
                return Call(v, arg, pos)
            return Name(v, pos)
        if kind == "op" and v == "(":
            inner = self.expr(0)
            self.expect(")")
            return inner
        got = "end of input" if kind == "end" else repr(v)
        raise ExpressionError(f"unexpected {got}", *pos)


def parse_expression(text: str) -> Node:
    """Parse ``text`` into an expression tree; raises :class:`ExpressionError`."""
    return _Parser(text).parse()


def free_names(node: Node) -> set[str]:
    if isinstance(node, Name):
        return {node.ident}
    if isinstance(node, Num):
        return set()
    if isinstance(node, (Neg, Call)):
        return free_names(node.operand if isinstance(node, Neg) else node.arg)
    return free_names(node.left) | free_names(node.right)


# evaluation -----------------------------------------------------------------

class _Ctx:
    def __init__(self, space, mode, order, params, holomorphic_only):
        if mode not in ("rational", "series"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "series" and order is None:
            raise ValueError("series mode needs an order")
        self.space = space
        self.mode = mode
        self.order = order
        self.params = {k: to_scalar(v) for k, v in (params or {}).items()}
        self.allowed = set(space.holo) if holomorphic_only else set(space.names)
        self.alias = {}
        # a lone z1 (or z) may be written either way
        if "z1" in self.allowed and "z" not in space.names and "z2" not in space.names:
            self.alias["z"] = "z1"
        if "z1b" in self.allowed and "zb" not in space.names and "z2b" not in space.names:
            self.alias["zb"] = "z1b"

    def lift(self, x):
        """Promote a scalar to the mode's function type."""
        if isinstance(x, (RationalFn, TruncSeries)):
            return x
        if self.mode == "series":
            return TruncSeries.const(self.space, x, self.order)
        return RationalFn.const(self.space, x)


def _is_scalar(x) -> bool:
    return not isinstance(x, (RationalFn, TruncSeries, Poly))


def _eval(node: Node, ctx: _Ctx):
    if isinstance(node, Num):
        return QQ_I(node.value, 0)
    if isinstance(node, Name):
        name = ctx.alias.get(node.ident, node.ident)
        if name == "i":
            return QQ_I(0, 1)
        if name in ctx.params:
            return ctx.params[name]
        if name in ctx.allowed:
            if ctx.mode == "series":
                return TruncSeries.var(ctx.space, name, ctx.order)
            return RationalFn.var(ctx.space, name)
        if name in ctx.space.names:
            raise ExpressionError(f"variable {name!r} is not allowed here (components must be holomorphic)", *node.pos)
        raise ExpressionError(f"unknown identifier {node.ident!r}", *node.pos)
    if isinstance(node, Neg):
        return -_eval(node.operand, ctx)
    if isinstance(node, Call):
        arg = _eval(node.arg, ctx)
        if ctx.mode != "series":
            raise ExpressionError("sqrt is only available in series mode", *node.pos)
        try:
            return sqrt_series(ctx.lift(arg))
        except BranchError as exc:
            raise BranchError(f"{exc} (sqrt at line {node.pos[0]}, column {node.pos[1]})") from None
    a = _eval(node.left, ctx)
    b = _eval(node.right, ctx)
    op = node.op
    if op == "^":
        if not _is_scalar(b) or b.y != 0 or b.x.denominator != 1 or b.x < 0:
            raise ExpressionError("exponent must be a non-negative integer constant", *node.pos)
        e = int(b.x)
        return a ** e if not _is_scalar(a) else a ** e
    if _is_scalar(a) and _is_scalar(b):
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if b == QQ_I.zero:
            raise ExpressionError("division by zero", *node.pos)
        return a / b
    a, b = ctx.lift(a), ctx.lift(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    try:
        return a / b
    except ZeroDivisionError:
        raise ExpressionError("division by zero (or by a series without constant term)", *node.pos) from None


def evaluate(tree: Node | str, space: VariableSpace, *, mode: str = "rational", order: int | None = None,
             params: Mapping[str, object] | None = None, holomorphic_only: bool = True):
    """Evaluate an expression into a RationalFn (rational mode) or TruncSeries (series mode)."""
    if isinstance(tree, str):
        tree = parse_expression(tree)
    ctx = _Ctx(space, mode, order, params, holomorphic_only)
    return ctx.lift(_eval(tree, ctx))


def parse_function(text: str, space: VariableSpace) -> RationalFn:
    """Parse a canonical serialization (any variable of ``space``) back into a RationalFn."""
    return evaluate(text, space, mode="rational", holomorphic_only=False)


__all__ = ["BinOp", "Call", "Name", "Neg", "Node", "Num", "evaluate", "free_names", "parse_expression",
           "parse_function", "Scalar"]
