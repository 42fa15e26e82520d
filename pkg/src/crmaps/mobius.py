"""Pure-type covariant Hessians on the Winkelmann model and the Möbius check.

The model is ``C^{n+1} x R`` with coordinates ``(z_1..z_n, zeta, t)`` and
``w = t + i*phi``.  The frame is ``Z_a = d/dx_a + i phi_a d/dt``, the Levi
form ``h_ab = phi_{a bbar}``.  The pure Christoffel symbols solve
``Gamma^c_{ba} h_{c sbar} = Z_b h_{a sbar}``; on this model the only nonzero
one is ``Gamma^zeta_{z_n z_n} = -8i conj(z_n)``.

For a CR function ``G`` and ``u = log|G|`` the Möbius equation is equivalent
to ``G_{,ab} = Z_b Z_a G - Gamma^c_{ba} Z_c G = 0``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra.poly import Poly
from .algebra.rational import RationalFn
from .algebra.scalars import I, Scalar, gq, to_scalar
from .algebra.space import conj_name
from .errors import DegenerateMetricError, ParameterError, PreconditionError
from .hypersurface import FrameVector, Hypersurface, Kind, SurfacePoint, winkelmann


def _inverse(M: list[list[RationalFn]]) -> list[list[RationalFn]]:
    """Gauss-Jordan inverse over rational functions."""
    n = len(M)
    A = [list(r) + [RationalFn.const(r[0].space, int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if not A[i][c].is_zero), None)
        if piv is None:
            raise DegenerateMetricError("Levi form is degenerate")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c].inverse()
        A[c] = [x * p for x in A[c]]
        for i in range(n):
            if i != c and not A[i][c].is_zero:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


@dataclass(frozen=True, eq=False)
class ModelCRStructure:
    """Pseudo-Hermitian model of a Winkelmann hypersurface over ``(z, zeta, t)``."""

    surface: Hypersurface

    def __post_init__(self):
        if self.surface.kind is not Kind.WINKELMANN:
            raise PreconditionError("the model CR structure is defined for Winkelmann hypersurfaces")

    @property
    def n(self) -> int:
        return self.surface.n

    @property
    def space(self):
        return self.surface.surface_space

    @property
    def coords(self) -> tuple[str, ...]:
        return self.surface.coords

    @property
    def phi(self) -> Poly:
        return self.surface.phi

    @cached_property
    def frame(self) -> list[FrameVector]:
        one = Poly.const(self.space, 1)
        return [FrameVector(self.space, ((v, one), ("t", self.phi.diff(v) * I))) for v in self.coords]

    @cached_property
    def frame_bar(self) -> list[FrameVector]:
        return [Z.conj() for Z in self.frame]

    @cached_property
    def levi(self) -> list[list[Poly]]:
        return [[self.phi.diff(a).diff(conj_name(b)) for b in self.coords] for a in self.coords]

    def index(self, a) -> int:
        return self.coords.index(a) if isinstance(a, str) else int(a)

    @cached_property
    def christoffel_computed(self) -> dict[tuple[int, int, int], RationalFn]:
        """Nonzero ``Gamma^c_{ba}`` keyed by ``(c, b, a)``, solved from the Levi form."""
        h = [[RationalFn.of(x) for x in row] for row in self.levi]
        m = len(h)
        # M[c][s] with sum_s M[c][s] h[a][s] = delta_ca
        M = _inverse([[h[s][c] for s in range(m)] for c in range(m)])
        M = [[M[c][s] for s in range(m)] for c in range(m)]
        out = {}
        for b in range(m):
            for a in range(m):
                dh = [RationalFn.of(self.frame[b].apply(self.levi[a][s])) for s in range(m)]
                for c in range(m):
                    acc = RationalFn.const(self.space, 0)
                    for s in range(m):
                        if not dh[s].is_zero and not M[c][s].is_zero:
                            acc = acc + M[c][s] * dh[s]
                    if not acc.is_zero:
                        out[(c, b, a)] = acc
        return out

    @cached_property
    def christoffel(self) -> dict[tuple[int, int, int], Poly]:
        """The recorded symbols: only ``Gamma^zeta_{z_n z_n} = -8i conj(z_n)``."""
        n = self.n
        zb = Poly.var(self.space, conj_name(f"z{n}"))
        return {(n, n - 1, n - 1): zb * gq(0, -8)}

    def christoffel_agrees(self) -> bool:
        rec = {k: RationalFn.of(v) for k, v in self.christoffel.items()}
        return rec == self.christoffel_computed

    def commutator(self, a, b, f: Poly) -> Poly:
        """``[Zbar_b, Z_a] f``."""
        a, b = self.index(a), self.index(b)
        Za, Zbb = self.frame[a], self.frame_bar[b]
        return Zbb.apply(Za.apply(f)) - Za.apply(Zbb.apply(f))

    def levi_t_term(self, a, b, f: Poly) -> Poly:
        """``2i h_{a bbar} df/dt``."""
        a, b = self.index(a), self.index(b)
        return self.levi[a][b] * f.diff("t") * gq(0, 2)


@dataclass(frozen=True)
class CandidateU:
    """``u = log|c0 + sum_k c_k z_k + c_w w|`` on the model."""

    c0: Scalar
    cz: tuple
    cw: Scalar

    def __post_init__(self):
        object.__setattr__(self, "c0", to_scalar(self.c0))
        object.__setattr__(self, "cz", tuple(to_scalar(c) for c in self.cz))
        object.__setattr__(self, "cw", to_scalar(self.cw))
        if not self.c0 and not self.cw and not any(self.cz):
            raise ParameterError("all coefficients vanish; u is undefined")

    @classmethod
    def random(cls, n: int, rng: random.Random, size: int = 4) -> "CandidateU":
        def r():
            return gq(rng.randint(-size, size), rng.randint(-size, size))

        while True:
            try:
                return cls(r(), tuple(r() for _ in range(n)), r())
            except ParameterError:
                continue

    def G(self, model: ModelCRStructure) -> Poly:
        sp = model.space
        if len(self.cz) != model.n:
            raise ParameterError(f"expected {model.n} z-coefficients, got {len(self.cz)}")
        w = Poly.var(sp, "t") + model.phi * I
        out = Poly.const(sp, self.c0) + w * self.cw
        for k, c in enumerate(self.cz):
            out = out + Poly.var(sp, f"z{k + 1}") * c
        return out


def b_operator(model: ModelCRStructure, G: Poly, a, b, *, computed: bool = False):
    """``G_{,ab} = Z_b Z_a G - Gamma^c_{ba} Z_c G``."""
    a, b = model.index(a), model.index(b)
    out = model.frame[b].apply(model.frame[a].apply(G))
    gam = model.christoffel_computed if computed else model.christoffel
    for (c, bb, aa), g in gam.items():
        if (bb, aa) == (b, a):
            out = out - g * model.frame[c].apply(G)
    return out


def covariant_hessian(model: ModelCRStructure, G: Poly) -> list[list[Poly]]:
    m = len(model.coords)
    return [[b_operator(model, G, a, b) for b in range(m)] for a in range(m)]


@dataclass(frozen=True)
class MobiusReport:
    is_cr: bool
    hessian_zero: bool
    failing: tuple
    points_checked: int

    @property
    def ok(self) -> bool:
        return self.is_cr and self.hessian_zero


def holomorphic_G(model: ModelCRStructure, f: Poly) -> Poly:
    """Restrict an ambient holomorphic polynomial to the model (``w = t + i phi``)."""
    if not f.is_holomorphic():
        raise PreconditionError("G must be holomorphic in the ambient variables")
    r = model.surface.restrict(f)
    if not r.den.is_constant:
        raise PreconditionError("restriction of a polynomial should stay polynomial")
    return r.num * (1 / r.den.constant_value())


def _G(model: ModelCRStructure, c) -> Poly:
    if isinstance(c, CandidateU):
        return c.G(model)
    if isinstance(c, Poly):
        if c.is_zero:
            raise ParameterError("G vanishes identically; u is undefined")
        return holomorphic_G(model, c)
    raise TypeError(f"expected CandidateU or Poly, got {type(c).__name__}")


def mobius_report(model: ModelCRStructure, c, points: Sequence[SurfacePoint] = ()) -> MobiusReport:
    """``c`` is a :class:`CandidateU` or an ambient holomorphic polynomial ``G`` with ``u = log|G|``."""
    G = _G(model, c)
    is_cr = all(Zb.apply(G).is_zero for Zb in model.frame_bar)
    H = covariant_hessian(model, G)
    m = len(H)
    failing = tuple((model.coords[a], model.coords[b], str(H[a][b]))
                    for a in range(m) for b in range(m) if not H[a][b].is_zero)
    checked = 0
    for p in points:
        vals = p.on_surface()
        if not G.evaluate(vals):
            raise PreconditionError(f"G vanishes at {p}")
        numeric_zero = all(not H[a][b].evaluate(vals) for a in range(m) for b in range(m))
        if numeric_zero is False and not failing:
            raise AssertionError("pointwise value contradicts the symbolic Hessian")
        checked += 1
    return MobiusReport(is_cr, not failing, failing, checked)


def verify_mobius_solution(c, points: Sequence[SurfacePoint] = (), *,
                           model: ModelCRStructure | None = None) -> bool:
    """Symbolic check that ``G`` is CR and ``G_{,ab} = 0``; points only confirm."""
    if model is None:
        if not isinstance(c, CandidateU):
            raise PreconditionError("pass the model explicitly for a polynomial G")
        model = ModelCRStructure(winkelmann(len(c.cz)))
    return mobius_report(model, c, points).ok


__all__ = ["CandidateU", "MobiusReport", "ModelCRStructure", "b_operator", "covariant_hessian", "holomorphic_G", "mobius_report",
           "verify_mobius_solution"]
