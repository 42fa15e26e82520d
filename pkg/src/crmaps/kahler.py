"""Kähler metrics ``g = -dd-bar log rho`` on the model domains, Ricci curvature, isometry tests."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .algebra.poly import Poly
from .algebra.rational import RationalFn
from .algebra.scalars import I, Scalar, conj, gq, to_scalar
from .algebra.space import conj_name
from .errors import DegenerateMetricError, NonTransversalError, PreconditionError, UnsupportedError
from .hypersurface import Hypersurface
from .linalg import det, inertia
from .maps import HoloMap, QuotientResult, check_maps_into


def ddbar_log(f, i: str, j: str) -> RationalFn:
    """``d_i d_jbar log f`` for a polynomial or rational ``f``.

    Rational arguments are split over their numerator and denominator
    factors, so no logarithm of a quotient is ever formed.
    """
    jb = conj_name(j)
    if isinstance(f, RationalFn):
        out = ddbar_log(f.num, i, j)
        for base, e in f.den_factors():
            out = out - ddbar_log(base, i, j) * e
        return out
    if f.is_constant:
        return RationalFn.const(f.space, 0)
    F = RationalFn.of(f)
    fi, fj = f.diff(i), f.diff(jb)
    return RationalFn.of(fi.diff(jb)) / F - RationalFn.of(fi * fj) / (F * F)


def log_hessian(f, variables: Sequence[str]) -> list[list[RationalFn]]:
    return [[ddbar_log(f, i, j) for j in variables] for i in variables]


@dataclass(frozen=True, eq=False)
class KahlerMetric:
    """``g_{i jbar} = -d_i d_jbar log rho`` over the ambient holomorphic variables."""

    surface: Hypersurface

    @property
    def variables(self) -> tuple[str, ...]:
        return self.surface.space.holo

    @cached_property
    def matrix(self) -> list[list[RationalFn]]:
        return [[-x for x in row] for row in log_hessian(self.surface.rho, self.variables)]

    @cached_property
    def det(self) -> RationalFn:
        return det(self.matrix, one=RationalFn.const(self.surface.space, 1))

    def is_hermitian(self) -> bool:
        g = self.matrix
        n = len(g)
        return all(g[i][j] == g[j][i].conj() for i in range(n) for j in range(n))

    def evaluate(self, point: Mapping[str, Scalar]) -> list[list[Scalar]]:
        if not self.surface.rho.evaluate(point):
            raise PreconditionError("the metric is singular on the hypersurface")
        return [[x.evaluate(point) for x in row] for row in self.matrix]

    def inertia_at(self, point: Mapping[str, Scalar]) -> tuple[int, int, int]:
        return inertia(self.evaluate(point))


def metric_matrix(S: Hypersurface) -> KahlerMetric:
    return KahlerMetric(S)


def ricci_matrix(g: KahlerMetric) -> list[list[RationalFn]]:
    """``Ric_{i jbar} = -d_i d_jbar log det g``."""
    d = g.det
    if d.is_zero:
        raise DegenerateMetricError("det g vanishes identically")
    return [[-x for x in row] for row in log_hessian(d, g.variables)]


def einstein_constant(g: KahlerMetric, ric: Sequence[Sequence[RationalFn]] | None = None) -> Scalar | None:
    """``c`` with ``Ric = c g`` exactly, or None if no such constant exists."""
    ric = ric if ric is not None else ricci_matrix(g)
    c = None
    for rrow, grow in zip(ric, g.matrix):
        for r, x in zip(rrow, grow):
            if x.is_zero:
                if not r.is_zero:
                    return None
                continue
            q = r / x
            if not q.is_constant:
                return None
            v = q.constant_value()
            if c is None:
                c = v
            elif c != v:
                return None
    return c


def interior_points(S: Hypersurface, count: int, rng: random.Random | None = None, *, side: int = 1,
                    size: int = 3) -> list[dict[str, Scalar]]:
    """Exact ambient points with ``sign(rho) = side``."""
    rng = rng or random.Random(0)
    out = []
    for p in S.random_points(count, rng, size):
        lift = Fraction(rng.randint(1, size), rng.randint(1, size)) * side
        amb = p.ambient()
        amb["w"] = amb["w"] + I * gq(lift)
        amb["wb"] = conj(amb["w"])
        out.append(amb)
    return out


def einstein_at_points(g: KahlerMetric, c: Scalar, points: Sequence[Mapping[str, Scalar]]) -> bool:
    """Pointwise ``Ric = c g``; the Ricci entries are built from ``det g`` symbolically."""
    ric = ricci_matrix(g)
    c = to_scalar(c)
    for p in points:
        G = g.evaluate(p)
        for rrow, grow in zip(ric, G):
            for r, x in zip(rrow, grow):
                if r.evaluate(p) != c * x:
                    return False
    return True


def _quotient(H: HoloMap, result: QuotientResult | None) -> RationalFn:
    if H.is_series:
        raise UnsupportedError("the isometry test needs an exact rational map")
    result = result or check_maps_into(H)
    if result.Q.is_zero:
        raise NonTransversalError("Q vanishes identically")
    return result.Q


def isometry_check(H: HoloMap, result: QuotientResult | None = None) -> bool:
    """True iff ``log|Q|`` is pluriharmonic, i.e. ``H`` pulls the target metric back to the source metric.

    ``rho_target o H = Q rho_source`` holds identically, so the pulled-back
    potential differs from the source one by ``log|Q|``.
    """
    Q = _quotient(H, result)
    holo = H.source.space.holo
    return all(x.is_zero for row in log_hessian(Q, holo) for x in row)


def jacobian(H: HoloMap) -> list[list[RationalFn]]:
    """``J[a][i] = dH^a / dx_i``."""
    return [[c.diff(v) for v in H.source.space.holo] for c in H.components]


def pullback_metric_at(H: HoloMap, point: Mapping[str, Scalar]) -> list[list[Scalar]]:
    """``J^T g_target(H(p)) conj(J)`` at an ambient point ``p``."""
    J = [[x.evaluate(point) for x in row] for row in jacobian(H)]
    img = {}
    for v, c in zip(H.target.space.holo, H.components):
        val = c.evaluate(point)
        img[v] = val
        img[conj_name(v)] = conj(val)
    gT = metric_matrix(H.target).evaluate(img)
    n, N = len(H.source.space.holo), len(J)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = gq(0)
            for a in range(N):
                if not J[a][i]:
                    continue
                for b in range(N):
                    if J[b][j] and gT[a][b]:
                        acc = acc + J[a][i] * gT[a][b] * conj(J[b][j])
            row.append(acc)
        out.append(row)
    return out


def pullback_agrees_at(H: HoloMap, points: Sequence[Mapping[str, Scalar]]) -> bool:
    gS = metric_matrix(H.source)
    return all(pullback_metric_at(H, p) == gS.evaluate(p) for p in points)


__all__ = ["KahlerMetric", "ddbar_log", "einstein_at_points", "einstein_constant", "interior_points",
           "isometry_check", "jacobian", "log_hessian", "metric_matrix", "pullback_agrees_at",
           "pullback_metric_at", "ricci_matrix"]
