"""Hyperquadric and Winkelmann model hypersurfaces.

Coordinates: a hyperquadric in C^{n+1} uses ``z1..zn, w``; a Winkelmann
hypersurface in C^{n+2} uses ``z1..zn, zeta, w``.  Conjugates append ``b``.
Both defining functions have the form ``(w - wb)/2i - phi`` with ``phi`` free
of ``w``, so the surface is parametrized by the remaining coordinates and a
real ``t`` via ``w = t + i*phi``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .algebra.poly import Poly
from .algebra.rational import RationalFn, substitute
from .algebra.scalars import I, ONE, Scalar, conj, gq, to_scalar
from .algebra.series import TruncSeries, substitute_series
from .algebra.space import VariableSpace, conj_name
from .errors import ParameterError, PreconditionError


class Kind(str, Enum):
    HYPERQUADRIC = "hyperquadric"
    WINKELMANN = "winkelmann"


_HALF_OVER_I = gq(0, Fraction(-1, 2))  # 1/(2i)


def _partner(space: VariableSpace, v: str) -> str:
    if v in space.holo:
        return conj_name(v)
    if v in space.real:
        return v
    return v[:-1]


@dataclass(frozen=True, eq=False)
class FrameVector:
    """A holomorphic-type derivation ``sum c_v d/dv`` with polynomial coefficients."""

    space: VariableSpace
    coeffs: tuple[tuple[str, Poly], ...]

    def apply(self, f):
        out = None
        for v, c in self.coeffs:
            d = f.diff(v)
            if c.is_constant and c.constant_value() == ONE:
                term = d
            elif isinstance(d, TruncSeries):
                term = d.mul_exact(c)
            else:
                term = c * d
            out = term if out is None else out + term
        return out

    __call__ = apply

    def conj(self) -> "FrameVector":
        return FrameVector(self.space, tuple((_partner(self.space, v), c.conj()) for v, c in self.coeffs))

    def coefficient(self, v: str) -> Poly:
        for name, c in self.coeffs:
            if name == v:
                return c
        return Poly.const(self.space, 0)

    def combine(self, weights: Sequence, others: Sequence["FrameVector"]) -> "FrameVector":
        """``sum weights[k]*others[k]`` (constant weights)."""
        acc: dict[str, Poly] = {}
        for a, fv in zip(weights, others):
            a = to_scalar(a)
            if not a:
                continue
            for v, c in fv.coeffs:
                acc[v] = acc.get(v, Poly.const(self.space, 0)) + c * a
        order = [v for v in self.space.names if v in acc and not acc[v].is_zero]
        return FrameVector(self.space, tuple((v, acc[v]) for v in order))

    def __repr__(self):
        parts = [f"({c})*d/d{v}" for v, c in self.coeffs]
        return " + ".join(parts)


@dataclass(frozen=True)
class SurfacePoint:
    """Exact point of a hypersurface: ambient holomorphic coordinates plus ``t = Re w``."""

    surface: "Hypersurface"
    coords: tuple[Scalar, ...]

    @property
    def t(self):
        return gq(self.coords[-1].x)

    def ambient(self) -> dict[str, Scalar]:
        names = self.surface.space.holo
        out = dict(zip(names, self.coords))
        out.update({conj_name(n): conj(v) for n, v in zip(names, self.coords)})
        return out

    def on_surface(self) -> dict[str, Scalar]:
        """Assignment for functions on the surface space ``(z, zb, ..., t)``."""
        amb = self.ambient()
        out = {n: amb[n] for n in self.surface.surface_space.names if n != "t"}
        out["t"] = self.t
        return out

    def __repr__(self):
        from .algebra.scalars import fmt_scalar

        inner = ", ".join(f"{n}={fmt_scalar(v)}" for n, v in zip(self.surface.space.holo, self.coords))
        return f"SurfacePoint({inner})"


@dataclass(frozen=True, eq=False)
class Hypersurface:
    kind: Kind
    n: int
    signature: int
    epsilon: tuple[int, ...]
    space: VariableSpace
    rho: Poly
    phi_ambient: Poly = field(repr=False)

    # shape -------------------------------------------------------------------
    @property
    def cr_dim(self) -> int:
        return self.n if self.kind is Kind.HYPERQUADRIC else self.n + 1

    @property
    def ambient_dim(self) -> int:
        return len(self.space.holo)

    @property
    def coords(self) -> tuple[str, ...]:
        """Holomorphic coordinates other than ``w`` (frame directions)."""
        return tuple(v for v in self.space.holo if v != "w")

    def __eq__(self, other):
        return isinstance(other, Hypersurface) and (self.kind, self.n, self.epsilon) == (other.kind, other.n, other.epsilon)

    def __hash__(self):
        return hash((self.kind, self.n, self.epsilon))

    def label(self) -> str:
        if self.kind is Kind.HYPERQUADRIC:
            return f"H^{2 * self.n + 1}_{self.signature}"
        return f"W^{2 * self.n + 3}_{self.signature}"

    def __repr__(self):
        return f"Hypersurface({self.label()}, epsilon={list(self.epsilon)})"

    # surface parametrization ----------------------------------------------------
    @cached_property
    def surface_space(self) -> VariableSpace:
        w = dict(self.space.weights)
        weights = {v: w.get(v, 1) for v in self.coords}
        weights["t"] = w.get("w", 2)
        return VariableSpace.make(self.coords, real=("t",), weights=weights)

    @cached_property
    def phi(self) -> Poly:
        """``Im w`` on the surface as a polynomial in the surface space."""
        return self.phi_ambient.to_space(self.surface_space)

    @cached_property
    def _restriction(self):
        S = self.surface_space
        t = Poly.var(S, "t")
        ph = self.phi
        binds = {"w": t + ph * I, "wb": t - ph * I}
        for v in self.coords:
            binds[v] = Poly.var(S, v)
            binds[conj_name(v)] = Poly.var(S, conj_name(v))
        return binds

    def restrict(self, f):
        """Pull an ambient function back to the surface via ``w = t + i*phi``."""
        if isinstance(f, TruncSeries):
            binds = {k: TruncSeries.from_poly(v, f.order) for k, v in self._restriction.items()}
            return substitute_series(f.poly, binds, self.surface_space, f.order)
        if isinstance(f, Poly):
            f = RationalFn.of(f)
        return substitute(f, self._restriction, self.surface_space)

    def lift_point(self, free: Mapping[str, object] | Sequence, t=0) -> SurfacePoint:
        """Point with the given non-``w`` coordinates and ``Re w = t``."""
        if not isinstance(free, Mapping):
            free = dict(zip(self.coords, free))
        missing = [v for v in self.coords if v not in free]
        if missing:
            raise PreconditionError(f"missing free coordinates {missing}")
        t = to_scalar(t)
        if t.y != 0:
            raise PreconditionError("t must be real")
        vals = {v: to_scalar(free[v]) for v in self.coords}
        assign = dict(vals)
        assign.update({conj_name(v): conj(x) for v, x in vals.items()})
        im_w = self.phi_ambient.evaluate({**assign, "w": 0, "wb": 0})
        w = t + I * im_w
        return SurfacePoint(self, tuple(vals[v] if v != "w" else w for v in self.space.holo))

    def point(self, coords: Sequence) -> SurfacePoint:
        """Wrap full ambient coordinates, checking that ``rho`` vanishes there."""
        vals = tuple(to_scalar(c) for c in coords)
        if len(vals) != self.ambient_dim:
            raise PreconditionError(f"expected {self.ambient_dim} coordinates")
        p = SurfacePoint(self, vals)
        if self.rho.evaluate(p.ambient()):
            raise PreconditionError(f"{p} is not on {self.label()}")
        return p

    def origin(self) -> SurfacePoint:
        return self.lift_point({v: 0 for v in self.coords}, 0)

    def random_points(self, count: int, rng: random.Random | None = None, size: int = 3) -> list[SurfacePoint]:
        """Pseudo-random exact surface points with small Gaussian-rational coordinates."""
        rng = rng or random.Random(0)

        def rnd():
            return gq(Fraction(rng.randint(-size, size), rng.randint(1, size)),
                      Fraction(rng.randint(-size, size), rng.randint(1, size)))

        return [self.lift_point({v: rnd() for v in self.coords}, Fraction(rng.randint(-size, size), rng.randint(1, size)))
                for _ in range(count)]


def _winkel_eps(n: int, ell: int) -> tuple[int, ...]:
    return tuple(-1 if k < ell - 1 else 1 for k in range(n - 1))


def make_hypersurface(kind: Kind | str, n: int, signature: int | None = None,
                      epsilon: Sequence[int] | None = None) -> Hypersurface:
    """Build ``H^{2n+1}_l`` or ``W^{2n+3}_l``.

    ``epsilon`` overrides the standard sign vector (length ``n`` for a
    hyperquadric, ``n-1`` for Winkelmann); ``signature`` is then derived.
    """
    kind = Kind(kind)
    if n < 1:
        raise ParameterError("dimension must be at least 1")
    if kind is Kind.HYPERQUADRIC:
        if epsilon is None:
            ell = 0 if signature is None else signature
            if not 0 <= ell <= n / 2:
                raise ParameterError(f"hyperquadric signature must satisfy 0 <= l <= n/2, got l={ell}, n={n}")
            eps = tuple(-1 if k < ell else 1 for k in range(n))
        else:
            eps = tuple(int(e) for e in epsilon)
            if len(eps) != n or any(e not in (-1, 1) for e in eps):
                raise ParameterError("epsilon must be n entries of +-1")
            ell = eps.count(-1)
            if signature is not None and signature != ell:
                raise ParameterError("signature disagrees with epsilon")
        holo = [f"z{k + 1}" for k in range(n)] + ["w"]
        space = VariableSpace.make(holo, weights={**{f"z{k + 1}": 1 for k in range(n)}, "w": 2})
        zs = [Poly.var(space, f"z{k + 1}") for k in range(n)]
        phi = sum((z * z.conj() * e for z, e in zip(zs, eps)), Poly.const(space, 0))
    else:
        if epsilon is None:
            ell = 1 if signature is None else signature
            if not 1 <= ell <= n:
                raise ParameterError(f"Winkelmann signature must satisfy 1 <= l <= n, got l={ell}, n={n}")
            eps = _winkel_eps(n, ell)
        else:
            eps = tuple(int(e) for e in epsilon)
            if len(eps) != n - 1 or any(e not in (-1, 1) for e in eps):
                raise ParameterError("epsilon must be n-1 entries of +-1")
            ell = eps.count(-1) + 1
            if signature is not None and signature != ell:
                raise ParameterError("signature disagrees with epsilon")
        holo = [f"z{k + 1}" for k in range(n)] + ["zeta", "w"]
        weights = {**{f"z{k + 1}": 1 for k in range(n)}, "zeta": 2, "w": 2}
        space = VariableSpace.make(holo, weights=weights)
        zs = [Poly.var(space, f"z{k + 1}") for k in range(n)]
        zn, zeta = zs[-1], Poly.var(space, "zeta")
        phi = (zn * zeta.conj() - zn.conj() * zeta) * _HALF_OVER_I + (zn * zn.conj()) ** 2
        phi = phi + sum((z * z.conj() * e for z, e in zip(zs[:-1], eps)), Poly.const(space, 0))
    w = Poly.var(space, "w")
    rho = (w - w.conj()) * _HALF_OVER_I - phi
    return Hypersurface(kind, n, ell, eps, space, rho, phi)


def hyperquadric(n: int, signature: int = 0, epsilon=None) -> Hypersurface:
    return make_hypersurface(Kind.HYPERQUADRIC, n, None if epsilon is not None else signature, epsilon)


def winkelmann(n: int, signature: int = 1, epsilon=None) -> Hypersurface:
    return make_hypersurface(Kind.WINKELMANN, n, None if epsilon is not None else signature, epsilon)


def tangent_frame(S: Hypersurface, basis: Sequence[Sequence] | None = None) -> list[FrameVector]:
    """CR frame ``Z_j = d/dx_j - 2i (d rho/dx_j) d/dw``, one per non-``w`` coordinate.

    ``basis`` (a constant invertible matrix) replaces the frame by
    ``Z'_a = sum_b basis[a][b] Z_b``.
    """
    frame = []
    for v in S.coords:
        a = S.rho.diff(v) * gq(0, -2)
        coeffs = [(v, Poly.const(S.space, 1))]
        if not a.is_zero:
            coeffs.append(("w", a))
        frame.append(FrameVector(S.space, tuple(coeffs)))
    if basis is not None:
        frame = [frame[0].combine(row, frame) for row in basis]
    return frame


def levi_matrix(S: Hypersurface, frame: Sequence[FrameVector] | None = None) -> list[list[Poly]]:
    """``h[a][b] = sum_{j,k} Z_a^j conj(Z_b^k) rho_{j kbar}``."""
    frame = list(frame) if frame is not None else tangent_frame(S)
    holo = S.space.holo
    hess = {(j, k): S.rho.diff(j).diff(conj_name(k)) for j in holo for k in holo}
    out = []
    for Za in frame:
        row = []
        for Zb in frame:
            acc = Poly.const(S.space, 0)
            for j, cj in Za.coeffs:
                for k, ck in Zb.coeffs:
                    hjk = hess[(j, k)]
                    if not hjk.is_zero:
                        acc = acc + cj * ck.conj() * hjk
            row.append(acc)
        out.append(row)
    return out


__all__ = ["FrameVector", "Hypersurface", "Kind", "SurfacePoint", "hyperquadric", "levi_matrix",
           "make_hypersurface", "tangent_frame", "winkelmann"]
