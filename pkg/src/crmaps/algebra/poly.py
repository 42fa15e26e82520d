"""Sparse multivariate polynomials over the Gaussian rationals."""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from sympy.polys.domains import QQ_I
from sympy.polys.orderings import grlex

from .scalars import ScalarLike, conj, fmt_scalar, to_scalar
from .space import SpaceMismatch, VariableSpace


class Poly:
    """An immutable polynomial in the variables of a :class:`VariableSpace`.

    Thin wrapper around a sympy ``PolyElement`` over ``QQ_I``; the wrapper
    carries the space (for conjugation and naming) and gives value semantics.
    """

    __slots__ = ("space", "_p")

    def __init__(self, space: VariableSpace, elem):
        self.space = space
        self._p = elem

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, space: VariableSpace, c: ScalarLike) -> "Poly":
        return cls(space, space.ring.ground_new(to_scalar(c)))

    @classmethod
    def var(cls, space: VariableSpace, name: str) -> "Poly":
        return cls(space, space.gen(name))

    @classmethod
    def from_terms(cls, space: VariableSpace, terms: Mapping[tuple, ScalarLike]) -> "Poly":
        ring = space.ring
        return cls(space, ring.from_dict({m: to_scalar(c) for m, c in terms.items()}))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.space != self.space:
                raise SpaceMismatch(f"{self.space!r} vs {other.space!r}")
            return other
        return Poly.const(self.space, other)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if _defer(other):
            return NotImplemented
        return Poly(self.space, self._p + self._coerce(other)._p)

    __radd__ = __add__

    def __sub__(self, other):
        if _defer(other):
            return NotImplemented
        return Poly(self.space, self._p - self._coerce(other)._p)

    def __rsub__(self, other):
        return Poly(self.space, self._coerce(other)._p - self._p)

    def __mul__(self, other):
        if _defer(other):
            return NotImplemented
        return Poly(self.space, self._p * self._coerce(other)._p)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(self.space, -self._p)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        return Poly(self.space, self._p ** k)

    def __truediv__(self, other):
        if isinstance(other, Poly) or _defer(other):
            from .rational import RationalFn

            return RationalFn.of(self) / other
        c = to_scalar(other)
        return Poly(self.space, self._p.quo_ground(c))

    def __rtruediv__(self, other):
        from .rational import RationalFn

        return RationalFn.of(Poly.const(self.space, other)) / self

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.space == other.space and self._p == other._p
        if _defer(other):
            return NotImplemented
        try:
            return self._p == self.space.ring.ground_new(to_scalar(other))
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.space, self._p))

    # structure ------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self._p

    @property
    def is_constant(self) -> bool:
        return self._p.is_ground

    def constant_value(self):
        """The value at the origin (coefficient of the empty monomial)."""
        return self._p.coeff(1) if self._p else QQ_I.zero

    def terms(self) -> Iterator[tuple[tuple[int, ...], object]]:
        return iter(self._p.terms())

    def __len__(self) -> int:
        return len(self._p)

    def degree(self, name: str) -> int:
        if self.is_zero:
            return -1
        return self._p.degree(self.space.gen(name))

    def total_degree(self) -> int:
        return max((sum(m) for m in self._p.keys()), default=-1)

    def weighted_order(self) -> int:
        """Smallest weighted degree of a term (``inf`` for the zero polynomial)."""
        w = self.space.weight_vector
        return min((sum(a * b for a, b in zip(m, w)) for m in self._p.keys()), default=float("inf"))

    def weighted_degree(self) -> int:
        w = self.space.weight_vector
        return max((sum(a * b for a, b in zip(m, w)) for m in self._p.keys()), default=-1)

    def free_of(self, *names: str) -> bool:
        idx = [self.space.index[n] for n in names]
        return all(m[k] == 0 for m in self._p.keys() for k in idx)

    def variables(self) -> set[str]:
        used = set()
        for m in self._p.keys():
            used.update(self.space.names[k] for k, e in enumerate(m) if e)
        return used

    def is_holomorphic(self) -> bool:
        return self.free_of(*self.space.conj_holo)

    def coeff_in(self, name: str, k: int) -> "Poly":
        """Coefficient of ``name**k`` as a polynomial free of ``name``."""
        j = self.space.index[name]
        ring = self.space.ring
        out = {}
        for m, c in self._p.terms():
            if m[j] == k:
                mm = list(m)
                mm[j] = 0
                out[tuple(mm)] = c
        return Poly(self.space, ring.from_dict(out) if out else ring.zero)

    # calculus ---------------------------------------------------------------
    def conj(self) -> "Poly":
        perm = self.space.partner_perm
        ring = self.space.ring
        d = {tuple(m[perm[k]] for k in range(len(m))): conj(c) for m, c in self._p.terms()}
        return Poly(self.space, ring.from_dict(d) if d else ring.zero)

    def diff(self, name: str) -> "Poly":
        return Poly(self.space, self._p.diff(self.space.gen(name)))

    def is_real(self) -> bool:
        return self.conj() == self

    def evaluate(self, point: Mapping[str, object]):
        """Exact value at ``point`` (a full assignment ``name -> scalar``)."""
        vals = [to_scalar(point[n]) for n in self.space.names]
        total = QQ_I.zero
        for m, c in self._p.terms():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = t * v ** e
            total += t
        return total

    def partial_evaluate(self, values: Mapping[str, object]) -> "Poly":
        p = self._p
        for name, v in values.items():
            p = p.subs(self.space.gen(name), to_scalar(v))
        return Poly(self.space, p)

    def to_space(self, space: VariableSpace) -> "Poly":
        """Re-embed into ``space`` by variable name (all used names must exist there)."""
        if space == self.space:
            return self
        src = self.space.names
        used = {k for m in self._p.keys() for k, e in enumerate(m) if e}
        missing = [src[k] for k in used if src[k] not in space.index]
        if missing:
            raise SpaceMismatch(f"variables {missing} do not exist in {space!r}")
        pos = {k: space.index[src[k]] for k in used}
        nv = len(space.names)
        d = {}
        for m, c in self._p.terms():
            mm = [0] * nv
            for k, e in enumerate(m):
                if e:
                    mm[pos[k]] = e
            d[tuple(mm)] = c
        ring = space.ring
        return Poly(space, ring.from_dict(d) if d else ring.zero)

    # formatting -----------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _defer(other) -> bool:
    # let RationalFn / TruncSeries handle mixed arithmetic
    from .rational import RationalFn
    from .series import TruncSeries

    return isinstance(other, (RationalFn, TruncSeries))


def _monomial_str(names, m) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_terms(names: Iterable[str], terms) -> str:
    """Canonical rendering of ``(monomial, coeff)`` pairs in descending grlex order."""
    names = tuple(names)
    items = sorted(terms, key=lambda t: grlex(t[0]), reverse=True)
    if not items:
        return "0"
    out = []
    for m, c in items:
        mon = _monomial_str(names, m)
        cs = fmt_scalar(c)
        if not mon:
            term = f"({cs})" if " " in cs else cs
        elif cs == "1":
            term = mon
        elif cs == "-1":
            term = "-" + mon
        elif " " in cs:
            term = f"({cs})*{mon}"
        else:
            term = f"{cs}*{mon}"
        if out:
            out.append(" - " + term[1:] if term.startswith("-") else " + " + term)
        else:
            out.append(term)
    return "".join(out)


def format_poly(p: Poly) -> str:
    return format_terms(p.space.names, p.terms())
