"""Weighted-truncated power series at the origin.

Weights come from the variable space (``z``-type variables weight 1, ``w``
weight 2 for the hyperquadric models); a series of order ``K`` keeps every
term of weighted degree ``<= K``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from sympy.polys.domains import QQ_I

from ..errors import BranchError
from .poly import Poly, format_poly
from .rational import RationalFn
from .scalars import gq, to_scalar
from .space import SpaceMismatch, VariableSpace


def _truncate(elem, weights, order):
    return elem.ring.from_dict(
        {m: c for m, c in elem.terms() if sum(a * b for a, b in zip(m, weights)) <= order}
    ) if elem else elem


class TruncSeries:
    """A polynomial jet modulo terms of weighted degree ``> order``."""

    __slots__ = ("space", "_p", "order")

    def __init__(self, space: VariableSpace, elem, order: int, *, _clean: bool = False):
        self.space = space
        self.order = order
        self._p = elem if _clean else _truncate(elem, space.weight_vector, order)

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "TruncSeries":
        return cls(p.space, p._p, order)

    @classmethod
    def from_rational(cls, f: RationalFn, order: int) -> "TruncSeries":
        num = cls.from_poly(f.num, order)
        den = cls.from_poly(f.den, order)
        return num / den

    @classmethod
    def const(cls, space: VariableSpace, c, order: int) -> "TruncSeries":
        return cls(space, space.ring.ground_new(to_scalar(c)), order)

    @classmethod
    def var(cls, space: VariableSpace, name: str, order: int) -> "TruncSeries":
        return cls(space, space.gen(name), order)

    @property
    def poly(self) -> Poly:
        return Poly(self.space, self._p)

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.space != self.space:
                raise SpaceMismatch(f"{self.space!r} vs {other.space!r}")
            return other
        if isinstance(other, Poly):
            return TruncSeries.from_poly(other, self.order)
        if isinstance(other, RationalFn):
            return TruncSeries.from_rational(other, self.order)
        return TruncSeries.const(self.space, other, self.order)

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        k = min(self.order, o.order)
        return TruncSeries(self.space, self._p + o._p, k, _clean=k == self.order == o.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.space, -self._p, self.order, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        k = min(self.order, o.order)
        w = self.space.weight_vector
        ring = self.space.ring
        # truncated product: skip pairs whose weight already exceeds k
        a = [(m, c, sum(x * y for x, y in zip(m, w))) for m, c in self._p.terms()]
        b = [(m, c, sum(x * y for x, y in zip(m, w))) for m, c in o._p.terms()]
        out: dict = {}
        for ma, ca, wa in a:
            if wa > k:
                continue
            for mb, cb, wb in b:
                if wa + wb > k:
                    continue
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, QQ_I.zero) + ca * cb
        out = {m: c for m, c in out.items() if c != QQ_I.zero}
        return TruncSeries(self.space, ring.from_dict(out) if out else ring.zero, k, _clean=True)

    __rmul__ = __mul__

    def mul_exact(self, p: Poly) -> "TruncSeries":
        """Product with an exact polynomial; a factor of weighted order ``m`` adds ``m`` to the known order."""
        if p.is_zero:
            return TruncSeries(self.space, self.space.ring.zero, self.order, _clean=True)
        k = self.order + int(p.weighted_order())
        return TruncSeries(self.space, self._p * p._p, k)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("non-negative integer powers only")
        out = TruncSeries.const(self.space, 1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def constant_term(self):
        return self._p.coeff(1) if self._p else QQ_I.zero

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        c = self.constant_term()
        if c == QQ_I.zero:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        u = self * (QQ_I.one / c) - 1  # positive weighted order
        out = TruncSeries.const(self.space, 1, self.order)
        term = out
        # 1/(1+u) = sum (-u)^k; weighted order of u is >= 1 so order+1 terms suffice
        for _ in range(self.order):
            term = term * (-u)
            if term.is_zero:
                break
            out = out + term
        return out * (QQ_I.one / c)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            k = min(self.order, other.order)
            w = self.space.weight_vector
            return self.space == other.space and _truncate(self._p, w, k) == _truncate(other._p, w, k)
        try:
            return self == self._coerce(other)
        except (SpaceMismatch, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.space, self._p, self.order))

    @property
    def is_zero(self) -> bool:
        return not self._p

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.space, self._p, min(order, self.order))

    # calculus -------------------------------------------------------------
    def conj(self) -> "TruncSeries":
        return TruncSeries(self.space, self.poly.conj()._p, self.order, _clean=True)

    def diff(self, name: str) -> "TruncSeries":
        wt = self.space.weight_vector[self.space.index[name]]
        return TruncSeries(self.space, self._p.diff(self.space.gen(name)), self.order - wt)

    def is_holomorphic(self) -> bool:
        return self.poly.is_holomorphic()

    def free_of(self, *names: str) -> bool:
        return self.poly.free_of(*names)

    def evaluate_origin(self):
        return self.constant_term()

    def __str__(self) -> str:
        return f"{format_poly(self.poly)} + O_wt({self.order + 1})"

    def __repr__(self) -> str:
        return f"TruncSeries({self})"


def sqrt_series(s: TruncSeries) -> TruncSeries:
    """Principal square root of a series with constant term exactly 1."""
    if s.constant_term() != QQ_I.one:
        raise BranchError("square root needs constant term 1 (principal branch)")
    u = s - 1
    out = TruncSeries.const(s.space, 1, s.order)
    term = TruncSeries.const(s.space, 1, s.order)
    coeff = Fraction(1)
    for k in range(1, s.order + 1):
        coeff = coeff * (Fraction(1, 2) - (k - 1)) / k
        term = term * u
        if term.is_zero:
            break
        out = out + term * gq(coeff)
    return out


def substitute_series(p: Poly, bindings: Mapping[str, TruncSeries], space: VariableSpace, order: int) -> TruncSeries:
    """Evaluate polynomial ``p`` at series ``bindings`` (unbound names carried by name)."""
    vals = {}
    for name in p.variables():
        if name in bindings:
            vals[name] = bindings[name]
        else:
            vals[name] = TruncSeries.var(space, name, order)
    pow_cache: dict = {}

    def power(name, e):
        key = (name, e)
        if key not in pow_cache:
            pow_cache[key] = vals[name] ** e
        return pow_cache[key]

    names = p.space.names
    total = TruncSeries.const(space, 0, order)
    for m, c in p.terms():
        term = TruncSeries.const(space, c, order)
        for k, e in enumerate(m):
            if e:
                term = term * power(names[k], e)
        total = total + term
    return total


def divide_linear_series(p: TruncSeries, d: Poly, v: str) -> tuple[TruncSeries, TruncSeries]:
    """Series analogue of :func:`divide_linear`.

    ``d`` must be linear in ``v`` with constant coefficient and weighted-
    homogeneous of weight ``wd``; the quotient is then exact through order
    ``p.order - wd`` and the remainder through ``p.order``.
    """
    from .rational import divide_linear

    q, r = divide_linear(p.poly, d, v)
    wd = d.weighted_degree()
    return TruncSeries(p.space, q._p, p.order - wd), TruncSeries(p.space, r._p, p.order)


def series_lift(expr, order: int, space: VariableSpace | None = None, params=None) -> TruncSeries:
    """Expand a closed-form expression with radicals into a truncated series.

    ``expr`` is an expression string (see :mod:`crmaps.expr`) or a parsed tree;
    square roots take the principal branch and need constant term 1.
    """
    from ..expr import evaluate, parse_expression

    tree = parse_expression(expr) if isinstance(expr, str) else expr
    if space is None:
        space = VariableSpace.make(["z"], weights={"z": 1})
    return evaluate(tree, space, mode="series", order=order, params=params or {})
