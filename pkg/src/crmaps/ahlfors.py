"""Hermitian part of the CR Ahlfors tensor of a transversal map, and geometric rank.

Two routes are implemented.  The log-Q route works for any target: with
``u = log Q`` and the source frame ``Z_a``,

    A_ab = 1/2 (Z_a Zb_b u + Zb_b Z_a u) + 1/2 h_ab (xi + xib) u,   xi = 2i d/dw,

where the derivatives of ``u`` are expanded as quotients of derivatives of
``Q``.  The explicit route applies to hyperquadric targets and only uses the
components ``(F, G)`` of the map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra.poly import Poly
from .algebra.rational import RationalFn
from .algebra.scalars import I, ONE, Scalar, gq
from .algebra.series import TruncSeries
from .errors import NonTransversalError, PreconditionError, UnsupportedError
from .hypersurface import FrameVector, Hypersurface, Kind, SurfacePoint, levi_matrix, tangent_frame
from .linalg import function_rank, rank
from .maps import HoloMap, QuotientResult, Side, check_maps_into


@dataclass(frozen=True, eq=False)
class AhlforsTensor:
    """Matrix ``A[a][b]`` of functions on the source surface ``(z, zb, [zeta, zetab], t)``.

    For series maps the entries are jets; ``valid_order`` is the weighted
    order through which they are exact.
    """

    source: Hypersurface
    entries: tuple[tuple, ...]
    method: str
    valid_order: int | None = None

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ab):
        a, b = ab
        return self.entries[a][b]

    @property
    def is_series(self) -> bool:
        return self.valid_order is not None

    def is_hermitian(self) -> bool:
        n = self.size
        return all(self.entries[a][b] == self.entries[b][a].conj() for a in range(n) for b in range(n))

    def vanishes(self) -> bool:
        """Exact vanishing (rational) or vanishing through ``valid_order`` (series)."""
        return all(x.is_zero for row in self.entries for x in row)

    def evaluate(self, p: SurfacePoint) -> list[list[Scalar]]:
        if self.is_series and any(v for v in p.coords):
            raise UnsupportedError("series tensors are evaluated at the origin only")
        pt = p.on_surface()
        out = []
        for row in self.entries:
            vals = []
            for x in row:
                if isinstance(x, TruncSeries):
                    vals.append(x.constant_term())
                else:
                    if not x.den.evaluate(pt):
                        raise PreconditionError(f"tensor entry undefined at {p}")
                    vals.append(x.evaluate(pt))
            out.append(vals)
        return out

    def rank_at(self, p: SurfacePoint) -> int:
        return rank(self.evaluate(p))

    def equals(self, other: "AhlforsTensor") -> bool:
        return self.size == other.size and all(
            x == y for r1, r2 in zip(self.entries, other.entries) for x, y in zip(r1, r2))

    def __str__(self):
        rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in self.entries]
        return "[" + ",\n ".join(rows) + "]"


def _nonzero_quotient(H: HoloMap, result: QuotientResult | None) -> QuotientResult:
    result = result or check_maps_into(H)
    if result.Q.is_zero:
        raise NonTransversalError("the quotient Q vanishes identically; the map is nowhere transversal")
    return result


def _lift(x, H: HoloMap):
    if H.is_series:
        return TruncSeries.from_poly(x, H.order) if isinstance(x, Poly) else x
    return RationalFn.of(x) if isinstance(x, Poly) else x


def ahlfors_via_logQ(H: HoloMap, result: QuotientResult | None = None,
                     frame: Sequence[FrameVector] | None = None) -> AhlforsTensor:
    """Ahlfors tensor from ``i dd-bar log |Q|`` along the source frame.

    A side-reversing map is handled through ``-Q``; both give the same
    derivatives of the logarithm.
    """
    result = _nonzero_quotient(H, result)
    S = H.source
    Q = result.Q
    frame = list(frame) if frame is not None else tangent_frame(S)
    h = levi_matrix(S, frame)
    Zb = [Z.conj() for Z in frame]
    ZQ = [Z.apply(Q) for Z in frame]
    ZbQ = [Z.apply(Q) for Z in Zb]
    xiQ = (Q.diff("w") - Q.diff("wb")) * gq(0, 2)
    inv = ONE / Q if not isinstance(Q, TruncSeries) else Q.inverse()
    n = len(frame)
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            mixed = (frame[a].apply(ZbQ[b]) + Zb[b].apply(ZQ[a])) * gq("1/2")
            if not h[a][b].is_zero:
                mixed = mixed + _lift(h[a][b], H) * xiQ * gq("1/2")
            entry = mixed * inv - ZQ[a] * ZbQ[b] * inv * inv
            row.append(S.restrict(entry))
        rows.append(tuple(row))
    valid = None
    if H.is_series:
        valid = min(x.order for row in rows for x in row)
    return AhlforsTensor(S, tuple(rows), "logQ", valid)


def ahlfors_explicit_hyperquadric(H: HoloMap, result: QuotientResult | None = None,
                                  frame: Sequence[FrameVector] | None = None) -> AhlforsTensor:
    """Closed formula in terms of the components ``(F^1..F^N, G)`` of a map into a hyperquadric.

    On the source surface, with ``Q = G_w - 2i sum eps_k F^k_w conj(F^k)`` and
    ``X = i G_ww + 2 sum eps_k conj(F^k) F^k_ww``::

        A_ab = -(2i/Q) sum_k eps_k (Z_a F^k_w)(Zb_b conj F^k)
               - (Z_a Q)(Zb_b Q)/Q^2
               + (h_ab/Q)(2 sum_k eps_k |F^k_w|^2 - i Im X)

    where ``Zb_b Q = -2i sum eps_k F^k_w Zb_b conj(F^k)`` and
    ``Z_a Q = conj(Zb_a Q)``.  Only ambient derivatives of the components are
    used; the quotient ``Q`` from the mapping equation is not.
    """
    T = H.target
    if T.kind is not Kind.HYPERQUADRIC:
        raise UnsupportedError("the explicit formula needs a hyperquadric target")
    if H.is_series:
        raise UnsupportedError("the explicit formula is implemented for rational maps")
    _nonzero_quotient(H, result)
    S = H.source
    frame = list(frame) if frame is not None else tangent_frame(S)
    h = levi_matrix(S, frame)
    Zb = [Z.conj() for Z in frame]
    *F, G = H.components
    eps = T.epsilon
    Fb = [f.conj() for f in F]
    Fw = [f.diff("w") for f in F]
    Fbw = [f.conj() for f in Fw]
    Fww = [f.diff("w") for f in Fw]
    Gw = G.diff("w")
    Q = Gw - sum((fw * fb * (2 * I * e) for fw, fb, e in zip(Fw, Fb, eps)), RationalFn.const(S.space, 0))
    X = Gw.diff("w") * I + sum((fb * fww * (2 * e) for fb, fww, e in zip(Fb, Fww, eps)),
                               RationalFn.const(S.space, 0))
    imX = (X - X.conj()) * gq(0, "-1/2")
    normw = sum((fw * fbw * (2 * e) for fw, fbw, e in zip(Fw, Fbw, eps)), RationalFn.const(S.space, 0))
    Qs = S.restrict(Q)
    if Qs.is_zero:
        raise NonTransversalError("Q vanishes identically on the source")
    ZbFb = [[Z.apply(fb) for fb in Fb] for Z in Zb]
    ZFw = [[Z.apply(fw) for fw in Fw] for Z in frame]
    ZF = [[Z.apply(f) for f in F] for Z in frame]
    ZbQ = [sum((fw * zfb * (-2 * I * e) for fw, zfb, e in zip(Fw, ZbFb[b], eps)), RationalFn.const(S.space, 0))
           for b in range(len(frame))]
    ZQ = [sum((fbw * zf * (2 * I * e) for fbw, zf, e in zip(Fbw, ZF[a], eps)), RationalFn.const(S.space, 0))
          for a in range(len(frame))]
    hterm = normw - imX * I
    n = len(frame)
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            first = sum((zfw * zfb * (-2 * I * e) for zfw, zfb, e in zip(ZFw[a], ZbFb[b], eps)),
                        RationalFn.const(S.space, 0))
            num = S.restrict(first) * Qs - S.restrict(ZQ[a] * ZbQ[b])
            if not h[a][b].is_zero:
                num = num + S.restrict(RationalFn.of(h[a][b]) * hterm) * Qs
            row.append(num / Qs / Qs)
        rows.append(tuple(row))
    return AhlforsTensor(S, tuple(rows), "explicit")


def ahlfors_at_origin_normalized(H: HoloMap) -> list[list[Scalar]]:
    """``-2i sum_k eps_k (d^2 F^k / dw dz_a)(conj dF^k/dz_b)`` at the origin.

    Requires ``H(0) = 0``, ``G_w(0) = 1``, ``F_w(0) = 0`` and ``G_ww(0) = 0``.
    """
    T = H.target
    if T.kind is not Kind.HYPERQUADRIC:
        raise UnsupportedError("the normalized formula needs a hyperquadric target")
    S = H.source
    origin = S.origin().ambient()

    def at0(f):
        if isinstance(f, TruncSeries):
            return f.constant_term()
        return f.evaluate(origin)

    *F, G = H.components
    if any(at0(c) for c in H.components):
        raise PreconditionError("normalization violated: H(0) != 0")
    if at0(G.diff("w")) != ONE:
        raise PreconditionError("normalization violated: dG/dw(0) != 1")
    for k, f in enumerate(F):
        if at0(f.diff("w")):
            raise PreconditionError(f"normalization violated: dF^{k + 1}/dw(0) != 0")
    if at0(G.diff("w").diff("w")):
        raise PreconditionError("normalization violated: d2G/dw2(0) != 0")
    coords = S.coords
    from .algebra.scalars import conj

    out = []
    for a in coords:
        row = []
        for b in coords:
            acc = gq(0)
            for f, e in zip(F, T.epsilon):
                acc = acc + at0(f.diff("w").diff(a)) * conj(at0(f.diff(b))) * (-2 * I * e)
            row.append(acc)
        out.append(row)
    return out


@dataclass(frozen=True, eq=False)
class RankReport:
    generic_rank: int
    rank_at: dict = field(default_factory=dict)
    vanishes: bool = False
    to_order: int | None = None


def rank_report(A: AhlforsTensor, sample_points: Sequence[SurfacePoint] = (), *, prefilter: int = 10,
                seed: int = 0) -> RankReport:
    """Generic rank via symbolic minors (with a random-point prefilter) and exact pointwise ranks."""
    import random

    vanishes = A.vanishes()
    at = {p: A.rank_at(p) for p in sample_points}
    if A.is_series:
        # jets only certify the value at the origin
        generic = 0 if vanishes else max(at.values(), default=0)
        return RankReport(generic, at, vanishes, A.valid_order)
    if vanishes:
        return RankReport(0, at, True)
    rng = random.Random(seed)
    pts = A.source.random_points(prefilter, rng)
    evaluators = [(lambda x, pt=p.on_surface(): x.evaluate(pt)) for p in pts]
    generic = function_rank([list(r) for r in A.entries], evaluators)
    return RankReport(generic, at, False)


__all__ = ["AhlforsTensor", "RankReport", "ahlfors_at_origin_normalized", "ahlfors_explicit_hyperquadric",
           "ahlfors_via_logQ", "rank_report"]
