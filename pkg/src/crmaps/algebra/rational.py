"""Rational functions in canonical reduced form, substitution and linear division."""
from __future__ import annotations

from typing import Mapping, Union

from sympy.polys.domains import QQ_I

from ..errors import PreconditionError
from .poly import Poly, format_poly
from .scalars import ScalarLike, to_scalar
from .space import SpaceMismatch, VariableSpace


_FACTOR_CACHE: dict = {}


def _monic(b):
    lc = b.LC
    return (b, QQ_I.one) if lc == QQ_I.one else (b.quo_ground(lc), lc)


def _factor(p) -> tuple[object, dict]:
    """``p = c * prod(b**e)`` with monic irreducible ``b`` (cached)."""
    if p.is_ground:
        return p.LC, {}
    hit = _FACTOR_CACHE.get(p)
    if hit is None:
        c, fl = p.factor_list()
        out: dict = {}
        for b, e in fl:
            b, lc = _monic(b)
            c = c * lc ** e
            out[b] = out.get(b, 0) + e
        hit = (c, tuple(out.items()))
        if len(_FACTOR_CACHE) > 20000:
            _FACTOR_CACHE.clear()
        _FACTOR_CACHE[p] = hit
    return hit[0], dict(hit[1])


def _divides_maybe(b, n) -> bool:
    # cheap degree filter before the division algorithm
    db, dn = b.degrees(), n.degrees()
    return all(x <= y for x, y in zip(db, dn))


def _reduce(n, fac: dict):
    """Divide ``n`` by the bases of ``fac`` as far as possible; returns ``(n, remaining)``."""
    out = {}
    if not n:
        return n, out
    for b, e in fac.items():
        while e > 0 and _divides_maybe(b, n):
            q, r = n.div(b)
            if r:
                break
            n, e = q, e - 1
        if e > 0:
            out[b] = e
    return n, out


def _sort_key(item):
    b, _ = item
    return (len(b), str(b))


class RationalFn:
    """``num/den`` in a unique reduced form.

    The denominator is stored factored into monic irreducible polynomials
    ``b**e`` none of which divides the numerator, so ``==`` decides equality
    and no multivariate gcd is ever needed; new factors enter only through
    division and are found by factorization.
    """

    __slots__ = ("space", "_n", "_f", "_dc")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is not None and num.space != den.space:
            raise SpaceMismatch(f"{num.space!r} vs {den.space!r}")
        self.space = num.space
        self._dc = None
        if den is None:
            self._n, self._f = num._p, ()
            return
        if not den._p:
            raise ZeroDivisionError("rational function with zero denominator")
        c, fac = _factor(den._p)
        n, rest = _reduce(num._p.quo_ground(c), fac)
        self._set(n, rest)

    def _set(self, n, fac: dict):
        self._n = n
        self._f = () if not n else tuple(sorted(((b, e) for b, e in fac.items() if e > 0), key=_sort_key))

    @classmethod
    def _make(cls, space, n, fac: dict, reduced: bool = False) -> "RationalFn":
        obj = cls.__new__(cls)
        obj.space = space
        obj._dc = None
        if not reduced:
            n, fac = _reduce(n, fac)
        obj._set(n, fac)
        return obj

    @classmethod
    def of(cls, x: "RationalFn | Poly") -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        return cls(x)

    @classmethod
    def const(cls, space: VariableSpace, c: ScalarLike) -> "RationalFn":
        return cls.of(Poly.const(space, c))

    @classmethod
    def var(cls, space: VariableSpace, name: str) -> "RationalFn":
        return cls.of(Poly.var(space, name))

    @property
    def num(self) -> Poly:
        return Poly(self.space, self._n)

    @property
    def _d(self):
        if self._dc is None:
            d = self.space.ring.one
            for b, e in self._f:
                d = d * b ** e
            self._dc = d
        return self._dc

    @property
    def den(self) -> Poly:
        return Poly(self.space, self._d)

    def den_factors(self) -> list[tuple[Poly, int]]:
        return [(Poly(self.space, b), e) for b, e in self._f]

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            if other.space != self.space:
                raise SpaceMismatch(f"{self.space!r} vs {other.space!r}")
            return other
        if isinstance(other, Poly):
            if other.space != self.space:
                raise SpaceMismatch(f"{self.space!r} vs {other.space!r}")
            return RationalFn.of(other)
        return RationalFn.const(self.space, other)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if _is_series(other):
            return NotImplemented
        o = self._coerce(other)
        if not o._n:
            return self
        if not self._n:
            return o
        if self._f == o._f:
            return RationalFn._make(self.space, self._n + o._n, dict(self._f))
        fa, fb = dict(self._f), dict(o._f)
        lcm = dict(fa)
        for b, e in fb.items():
            lcm[b] = max(lcm.get(b, 0), e)
        one = self.space.ring.one
        ma, mb = one, one
        for b, e in lcm.items():
            if e > fa.get(b, 0):
                ma = ma * b ** (e - fa.get(b, 0))
            if e > fb.get(b, 0):
                mb = mb * b ** (e - fb.get(b, 0))
        return RationalFn._make(self.space, self._n * ma + o._n * mb, lcm)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._make(self.space, -self._n, dict(self._f), reduced=True)

    def __sub__(self, other):
        if _is_series(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if _is_series(other):
            return NotImplemented
        if not isinstance(other, (RationalFn, Poly)):
            c = to_scalar(other)
            return RationalFn._make(self.space, self._n * c, dict(self._f), reduced=True)
        o = self._coerce(other)
        if not self._f and not o._f:
            return RationalFn._make(self.space, self._n * o._n, {}, reduced=True)
        a, fb = _reduce(self._n, dict(o._f))
        c, fa = _reduce(o._n, dict(self._f))
        for b, e in fb.items():
            fa[b] = fa.get(b, 0) + e
        return RationalFn._make(self.space, a * c, fa, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if not self._n:
            raise ZeroDivisionError("inverse of the zero function")
        c, fac = _factor(self._n)
        return RationalFn._make(self.space, self._d.quo_ground(c), fac, reduced=True)

    def __truediv__(self, other):
        if not isinstance(other, (RationalFn, Poly)):
            c = to_scalar(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return RationalFn._make(self.space, self._n.quo_ground(c), dict(self._f), reduced=True)
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("integer powers only")
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RationalFn.const(self.space, 1)
        return RationalFn._make(self.space, self._n ** k, {b: e * k for b, e in self._f}, reduced=True)

    def __eq__(self, other):
        if _is_series(other):
            return NotImplemented
        try:
            o = self._coerce(other)
        except (SpaceMismatch, TypeError, ValueError):
            return False
        return self._n == o._n and self._f == o._f

    def __hash__(self):
        return hash((self.space, self._n, self._f))

    # structure --------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self._n

    @property
    def is_polynomial(self) -> bool:
        return not self._f

    @property
    def is_constant(self) -> bool:
        return self._n.is_ground and not self._f

    def constant_value(self):
        if not self.is_constant:
            raise ValueError("not a constant")
        return self._n.coeff(1) if self._n else QQ_I.zero

    def free_of(self, *names: str) -> bool:
        return self.num.free_of(*names) and all(Poly(self.space, b).free_of(*names) for b, _ in self._f)

    def is_holomorphic(self) -> bool:
        return self.free_of(*self.space.conj_holo)

    def variables(self) -> set[str]:
        out = self.num.variables()
        for b, _ in self._f:
            out |= Poly(self.space, b).variables()
        return out

    # calculus -------------------------------------------------------------
    def conj(self) -> "RationalFn":
        n = self.num.conj()._p
        fac: dict = {}
        for b, e in self._f:
            cb, lc = _monic(Poly(self.space, b).conj()._p)
            n = n.quo_ground(lc ** e)
            fac[cb] = fac.get(cb, 0) + e
        return RationalFn._make(self.space, n, fac, reduced=True)

    def is_real(self) -> bool:
        return self.conj() == self

    def diff(self, name: str) -> "RationalFn":
        g = self.space.gen(name)
        moving = [(b, e, b.diff(g)) for b, e in self._f]
        moving = [(b, e, db) for b, e, db in moving if db]
        dn = self._n.diff(g)
        if not moving:
            return RationalFn._make(self.space, dn, dict(self._f), reduced=True)
        one = self.space.ring.one
        prod = one
        for b, _, _ in moving:
            prod = prod * b
        total = dn * prod
        for k, (b, e, db) in enumerate(moving):
            rest = one
            for j, (c, _, _) in enumerate(moving):
                if j != k:
                    rest = rest * c
            total = total - self._n * db * rest * e
        fac = dict(self._f)
        for b, _, _ in moving:
            fac[b] += 1
        return RationalFn._make(self.space, total, fac)

    def evaluate(self, point: Mapping[str, object]):
        d = self.den.evaluate(point)
        if d == QQ_I.zero:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / d

    def to_space(self, space: VariableSpace) -> "RationalFn":
        if space == self.space:
            return self
        n = self.num.to_space(space)._p
        fac: dict = {}
        for b, e in self._f:
            nb, lc = _monic(Poly(self.space, b).to_space(space)._p)
            n = n.quo_ground(lc ** e)
            fac[nb] = fac.get(nb, 0) + e
        return RationalFn._make(space, n, fac, reduced=True)

    def __str__(self) -> str:
        if not self._f:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFn({self})"


def _is_series(x) -> bool:
    from .series import TruncSeries

    return isinstance(x, TruncSeries)


Function = Union[Poly, RationalFn]


def as_rational(x, space: VariableSpace | None = None) -> RationalFn:
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, Poly):
        return RationalFn.of(x)
    if space is None:
        raise TypeError("a space is needed to lift a scalar")
    return RationalFn.const(space, x)


def substitute(p: Function, bindings: Mapping[str, Function], space: VariableSpace | None = None) -> RationalFn:
    """Compose ``p`` with ``bindings`` (variable name -> function in a common space).

    Variables of ``p`` without a binding are carried over by name into the
    target space.  Partner variables are not bound automatically: callers that
    substitute a holomorphic map bind both ``v`` and ``conj(v)``.
    """
    if isinstance(p, RationalFn):
        out = substitute(p.num, bindings, space)
        for b, e in p.den_factors():
            sb = substitute(b, bindings, space)
            if sb.is_zero:
                raise ZeroDivisionError("substitution makes the denominator vanish identically")
            out = out * sb.inverse() ** e
        return out
    vals = {k: as_rational(v) for k, v in bindings.items()}
    if space is None:
        spaces = {v.space for v in vals.values()}
        if len(spaces) > 1:
            raise SpaceMismatch(f"bindings live in several spaces: {spaces}")
        space = spaces.pop() if spaces else p.space
    src = p.space
    ring = space.ring
    used = p.variables()
    images = {}
    group_fac: dict = {}
    for name in used:
        if name in vals:
            f = vals[name]
            if f.space != space:
                raise SpaceMismatch(f"binding for {name} lives in {f.space!r}, expected {space!r}")
            images[name] = (f._n, f._d)
            group_fac[f._d] = dict(f._f)
        else:
            if name not in space:
                raise SpaceMismatch(f"unbound variable {name!r} is not in {space!r}")
            images[name] = (space.gen(name), ring.one)
    # group variables sharing a denominator so its power is taken once
    groups: dict = {}
    for name, (_, d) in images.items():
        if d != ring.one:
            groups.setdefault(d, []).append(src.index[name])
    group_max = {d: max((sum(m[k] for k in idx) for m in p._p.keys()), default=0) for d, idx in groups.items()}
    pow_cache: dict = {}

    def power(key, base, e):
        if e == 0:
            return ring.one
        k = (key, e)
        if k not in pow_cache:
            pow_cache[k] = base ** e
        return pow_cache[k]

    pos = {src.index[n]: n for n in used}
    total = ring.zero
    for m, c in p._p.terms():
        term = ring.ground_new(c)
        for k, e in enumerate(m):
            if e:
                name = pos[k]
                term = term * power(("n", name), images[name][0], e)
        for d, idx in groups.items():
            deficit = group_max[d] - sum(m[k] for k in idx)
            if deficit:
                term = term * power(("d", d), d, deficit)
        total += term
    fac: dict = {}
    for d, e in group_max.items():
        if e:
            for b, k in group_fac[d].items():
                fac[b] = fac.get(b, 0) + k * e
    return RationalFn._make(space, total, fac)


def divide_linear(p: Poly, d: Poly, v: str) -> tuple[Poly, Poly]:
    """Divide ``p`` by ``d`` viewed as a degree-one polynomial in ``v``.

    Returns ``(q, r)`` with ``p = q*d + r`` and ``r`` free of ``v``.  The
    coefficient of ``v`` in ``d`` must be a nonzero constant.
    """
    if p.space != d.space:
        raise SpaceMismatch(f"{p.space!r} vs {d.space!r}")
    if d.degree(v) != 1:
        raise PreconditionError(f"divisor is not linear in {v}")
    lead = d.coeff_in(v, 1)
    if not lead.is_constant:
        raise PreconditionError(f"coefficient of {v} in the divisor is not constant")
    c = lead.constant_value()
    a = -d.coeff_in(v, 0) / c  # root: v = a
    n = p.degree(v)
    if n < 1:
        return Poly.const(p.space, 0), p
    coeffs = [p.coeff_in(v, k) for k in range(n + 1)]
    q = [None] * n
    q[n - 1] = coeffs[n]
    for k in range(n - 1, 0, -1):
        q[k - 1] = coeffs[k] + a * q[k]
    r = coeffs[0] + a * q[0]
    x = Poly.var(p.space, v)
    quot = Poly.const(p.space, 0)
    for k in range(n - 1, -1, -1):
        quot = quot * x + q[k]
    return quot / c, r
