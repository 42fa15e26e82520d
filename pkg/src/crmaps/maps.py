"""Holomorphic map germs between model hypersurfaces and the mapping-equation quotient."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .algebra.poly import Poly
from .algebra.rational import RationalFn, divide_linear, substitute
from .algebra.scalars import Scalar, real_sign
from .algebra.series import TruncSeries, divide_linear_series, substitute_series
from .algebra.space import conj_name
from .errors import MapCheckError, PreconditionError, StructuralError, UnsupportedError
from .hypersurface import Hypersurface, SurfacePoint


class Side(str, Enum):
    PRESERVING = "preserving"
    REVERSING = "reversing"
    DEGENERATE = "degenerate"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True, eq=False)
class HoloMap:
    """A holomorphic map ``source -> target`` given by its ambient components.

    In series mode every component is a :class:`TruncSeries` at the origin of
    one common order; in rational mode components are :class:`RationalFn`.
    """

    source: Hypersurface
    target: Hypersurface
    components: tuple
    mode: str = "rational"
    order: int | None = None
    base: SurfacePoint | None = None
    name: str = ""

    def __post_init__(self):
        if len(self.components) != self.target.ambient_dim:
            raise StructuralError(
                f"{len(self.components)} components given, target {self.target.label()} needs {self.target.ambient_dim}")
        if self.mode not in ("rational", "series"):
            raise StructuralError(f"unknown mode {self.mode!r}")
        space = self.source.space
        for k, c in enumerate(self.components):
            if c.space != space:
                raise StructuralError(f"component {k} lives in {c.space!r}, not the source space")
            if not c.is_holomorphic():
                raise StructuralError(f"component {k} depends on antiholomorphic variables")
            if self.mode == "series":
                if not isinstance(c, TruncSeries):
                    raise StructuralError("series maps need TruncSeries components")
                if c.order != self.order:
                    raise StructuralError("series components must share one truncation order")
            elif not isinstance(c, RationalFn):
                raise StructuralError("rational maps need RationalFn components")
        if self.mode == "series" and self.base is not None and any(v for v in self.base.coords):
            raise UnsupportedError("series maps are expanded at the origin only")

    # construction ------------------------------------------------------------
    @classmethod
    def rational(cls, source, target, components: Sequence, *, base=None, name="") -> "HoloMap":
        comps = tuple(_as_rational(c, source) for c in components)
        return cls(source, target, comps, "rational", None, base, name)

    @classmethod
    def series(cls, source, target, components: Sequence, order: int, *, name="") -> "HoloMap":
        comps = tuple(_as_series(c, source, order) for c in components)
        return cls(source, target, comps, "series", order, None, name)

    @property
    def base_point(self) -> SurfacePoint:
        return self.base if self.base is not None else self.source.origin()

    @property
    def is_series(self) -> bool:
        return self.mode == "series"

    def as_series(self, order: int) -> "HoloMap":
        """Expand at the origin to the given weighted order."""
        if self.is_series:
            if order > self.order:
                raise PreconditionError(f"cannot raise the order from {self.order} to {order}")
            return HoloMap.series(self.source, self.target, [c.truncate(order) for c in self.components], order,
                                  name=self.name)
        if self.base is not None and any(v for v in self.base.coords):
            raise UnsupportedError("series expansion is only available at the origin")
        return HoloMap.series(self.source, self.target,
                              [TruncSeries.from_rational(c, order) for c in self.components], order, name=self.name)

    # evaluation ----------------------------------------------------------------
    def bindings(self) -> dict:
        """Target variable -> component, and each conjugate variable -> conjugate component."""
        out = {}
        for v, c in zip(self.target.space.holo, self.components):
            out[v] = c
            out[conj_name(v)] = c.conj()
        return out

    def pullback(self, f: Poly):
        """``f o H`` for a polynomial ``f`` on the target space."""
        if f.space != self.target.space:
            raise StructuralError("pullback needs a function on the target space")
        if self.is_series:
            return substitute_series(f, self.bindings(), self.source.space, self.order)
        return substitute(f, self.bindings(), self.source.space)

    def __call__(self, p: SurfacePoint) -> tuple[Scalar, ...]:
        if self.is_series:
            if any(v for v in p.coords):
                raise UnsupportedError("a truncated series can only be evaluated exactly at the origin")
            return tuple(c.constant_term() for c in self.components)
        amb = p.ambient()
        return tuple(c.evaluate(amb) for c in self.components)

    def image(self, p: SurfacePoint) -> SurfacePoint:
        """``H(p)`` as a point of the target (checked to lie on it)."""
        return self.target.point(self(p))

    def __repr__(self):
        label = self.name or "HoloMap"
        comps = ", ".join(str(c) for c in self.components)
        return f"{label}[{self.source.label()} -> {self.target.label()}]({comps})"


def _as_rational(c, source: Hypersurface) -> RationalFn:
    if isinstance(c, RationalFn):
        return c
    if isinstance(c, Poly):
        return RationalFn.of(c)
    if isinstance(c, str):
        from .expr import evaluate

        return evaluate(c, source.space)
    return RationalFn.const(source.space, c)


def _as_series(c, source: Hypersurface, order: int) -> TruncSeries:
    if isinstance(c, TruncSeries):
        return c.truncate(order) if c.order > order else c
    if isinstance(c, Poly):
        return TruncSeries.from_poly(c, order)
    if isinstance(c, RationalFn):
        return TruncSeries.from_rational(c, order)
    if isinstance(c, str):
        from .expr import evaluate

        return evaluate(c, source.space, mode="series", order=order)
    return TruncSeries.const(source.space, c, order)


@dataclass(frozen=True, eq=False)
class QuotientResult:
    """Outcome of the mapping-equation check ``rho_target o H = Q * rho_source``.

    ``Q`` is exact in rational mode and valid through weighted order
    ``order - 2`` in series mode (the remainder is checked through ``order``).
    """

    map: HoloMap
    Q: RationalFn | TruncSeries
    maps_into: bool
    side: Side
    remainder: Poly | TruncSeries

    @property
    def degenerate(self) -> bool:
        return self.side is Side.DEGENERATE

    def value_at(self, p: SurfacePoint):
        if isinstance(self.Q, TruncSeries):
            if any(v for v in p.coords):
                raise UnsupportedError("series quotient is exact only at the origin")
            return self.Q.constant_term()
        amb = p.ambient()
        if not self.Q.den.evaluate(amb):
            raise PreconditionError(f"the map is not defined at {p}")
        return self.Q.evaluate(amb)

    def side_at(self, p: SurfacePoint) -> Side:
        if self.Q.is_zero:
            return Side.DEGENERATE
        s = real_sign(self.value_at(p))
        return Side.PRESERVING if s > 0 else Side.REVERSING if s < 0 else Side.UNDETERMINED


def check_maps_into(H: HoloMap, *, strict: bool = True) -> QuotientResult:
    """Divide ``rho_target o H`` by ``rho_source`` (in ``wb``) and certify a zero remainder.

    With ``strict`` a nonzero remainder raises :class:`MapCheckError`;
    otherwise it is reported through ``maps_into``.
    """
    S = H.source
    rho = S.rho
    if H.is_series:
        P = H.pullback(H.target.rho)
        q, r = divide_linear_series(P, rho, "wb")
        on_surface = S.restrict(r)
        ok = on_surface.is_zero
        Q = q
    else:
        P = H.pullback(H.target.rho)
        q, r = divide_linear(P.num, rho, "wb")
        on_surface = S.restrict(r)
        ok = on_surface.is_zero
        Q = RationalFn(q, P.den)
    if not ok:
        if strict:
            raise MapCheckError(f"map does not send {S.label()} into {H.target.label()}")
        return QuotientResult(H, Q, False, Side.UNDETERMINED, r)
    side = Side.DEGENERATE if Q.is_zero else None
    if side is None:
        if H.is_series:
            c = Q.constant_term()
        else:
            amb = H.base_point.ambient()
            if not Q.den.evaluate(amb):
                raise PreconditionError(f"the map is not defined at its base point {H.base_point}")
            c = Q.evaluate(amb)
        s = real_sign(c)
        side = Side.PRESERVING if s > 0 else Side.REVERSING if s < 0 else Side.UNDETERMINED
    return QuotientResult(H, Q, True, side, r)


def transversal_at(H: HoloMap, p: SurfacePoint, result: QuotientResult | None = None) -> bool:
    """Exact test ``Q(p) != 0``."""
    if p.surface != H.source:
        raise PreconditionError("point lies on a different hypersurface")
    if H.source.rho.evaluate(p.ambient()):
        raise PreconditionError(f"{p} is not on {H.source.label()}")
    result = result or check_maps_into(H)
    if result.Q.is_zero:
        return False
    return bool(result.value_at(p))


def compose(G: HoloMap, H: HoloMap) -> HoloMap:
    """``G o H``; series mode if either operand is a series."""
    if H.target != G.source:
        raise StructuralError(f"cannot compose: {H.target.label()} is not {G.source.label()}")
    if not (G.is_series or H.is_series):
        binds = {v: c for v, c in zip(G.source.space.holo, H.components)}
        comps = [substitute(c, binds, H.source.space) for c in G.components]
        return HoloMap(H.source, G.target, tuple(comps), "rational", None, H.base,
                       f"{G.name or 'G'}o{H.name or 'H'}")
    order = min(k for k in (G.order, H.order) if k is not None)
    Hs = H.as_series(order) if not H.is_series or H.order != order else H
    if any(c.constant_term() for c in Hs.components):
        raise PreconditionError("series composition needs the inner map to fix the origin")
    # the truncation stays exact only if the inner map does not lower weights
    wts = dict(G.source.space.weights)
    for v, c in zip(G.source.space.holo, Hs.components):
        if not c.is_zero and c.poly.weighted_order() < wts.get(v, 1):
            raise PreconditionError(f"component for {v} has weighted order below the weight of {v}")
    if G.is_series:
        outer = [c.truncate(order).poly for c in G.components]
    else:
        if G.base is not None and any(v for v in G.base.coords):
            raise PreconditionError("series base mismatch: outer map is not based at the origin")
        outer = [TruncSeries.from_rational(c, order).poly for c in G.components]
    binds = {v: c for v, c in zip(G.source.space.holo, Hs.components)}
    comps = [substitute_series(p, binds, H.source.space, order) for p in outer]
    return HoloMap(H.source, G.target, tuple(comps), "series", order, None, f"{G.name or 'G'}o{H.name or 'H'}")


def identity(S: Hypersurface) -> HoloMap:
    return HoloMap.rational(S, S, [Poly.var(S.space, v) for v in S.space.holo], name="id")


__all__ = ["HoloMap", "QuotientResult", "Side", "check_maps_into", "compose", "identity", "transversal_at"]
