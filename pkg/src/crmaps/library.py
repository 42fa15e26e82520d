"""Named example maps from hyperquadrics into Winkelmann hypersurfaces and hyperquadrics."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .algebra.poly import Poly
from .algebra.scalars import I, gq, to_scalar
from .errors import ParameterError
from .expr import evaluate
from .hypersurface import Hypersurface, hyperquadric, winkelmann
from .maps import HoloMap


def map_R(n: int = 1, ell: int = 0, eps=1) -> HoloMap:
    """The quadratic map ``H^{2n+1}_l -> W^{2n+3}_{l+1}`` with parameter ``eps``.

    For ``n = 1`` this is the one-parameter family ``R_eps``; the mapping
    equation holds for every real ``eps`` with ``Q = |eps + z_n|^2 + 1 - eps^2``.
    For ``n > 1`` the passive components force ``Q = |1 + eps z_n|^2``, so only
    ``eps = +-1`` is allowed.
    """
    S = hyperquadric(n, ell)
    if S.epsilon[-1] != 1:
        raise ParameterError("the last source coordinate must carry a + sign")
    T = winkelmann(n, epsilon=S.epsilon[:-1])
    e = to_scalar(eps)
    if n > 1 and e * e != gq(1):
        raise ParameterError("for n > 1 the parameter must be +1 or -1")
    zs = [Poly.var(S.space, f"z{k + 1}") for k in range(n)]
    zn, w = zs[-1], Poly.var(S.space, "w")
    unit = zn * e + 1
    comps = [z * unit for z in zs[:-1]]
    comps += [zn, w * (zn + e) - zn * I - zn * zn * (I * 2 * e), w * unit]
    return HoloMap.rational(S, T, comps, name=f"R[eps={_fmt(e)}]")


def map_R_eps(eps) -> HoloMap:
    return map_R(1, 0, eps)


def map_R_eps_mu(eps, mu) -> HoloMap:
    """Two-parameter rational family ``H^3 -> W^5_1``; ``mu = 0`` recovers ``R_eps``.

    The quadratic term of the middle numerator carries the factor ``eps``
    (without it the map leaves the target for ``eps != 1``).
    """
    S = hyperquadric(1)
    T = winkelmann(1)
    params = {"eps": to_scalar(eps), "mu": to_scalar(mu)}
    comps = [
        "z/(1 - mu*w)",
        "(-2*i*eps*z^2 + eps*w*(1 - mu*w) + z*(-i + w + 3*i*mu*w))/(1 - mu*w)^2",
        "w*(1 + eps*z - 2*mu*w)/(1 - mu*w)^2",
    ]
    return HoloMap.rational(S, T, [evaluate(c, S.space, params=params) for c in comps],
                            name=f"R[eps={_fmt(params['eps'])},mu={_fmt(params['mu'])}]")


def phi_target(W: Hypersurface) -> Hypersurface:
    """Hyperquadric receiving the quadratic embedding of ``W``."""
    return hyperquadric(W.n + 2, epsilon=tuple(W.epsilon) + (1, 1, -1))


def map_Phi(n: int = 1, ell: int = 1, W: Hypersurface | None = None) -> HoloMap:
    """Quadratic embedding ``W^{2n+3}_l -> H^{2n+5}`` with ``Q = 1``."""
    W = W or winkelmann(n, ell)
    n = W.n
    x = {v: Poly.var(W.space, v) for v in W.space.holo}
    zn, zeta = x[f"z{n}"], x["zeta"]
    half = gq(Fraction(1, 2))
    comps = [x[f"z{k + 1}"] for k in range(n - 1)]
    comps += [zn * zn, (zn + zeta * I) * half, (zn - zeta * I) * half, x["w"]]
    return HoloMap.rational(W, phi_target(W), comps, name="Phi")


def map_I(n: int = 1, ell: int = 0, order: int = 10) -> HoloMap:
    """Irrational map ``H^{2n+1}_l -> W^{2n+3}_{l+1}`` as a weighted jet of the given order."""
    S = hyperquadric(n, ell)
    T = winkelmann(n, epsilon=S.epsilon[:-1])
    zn = f"z{n}"
    comps = [f"z{k + 1}" for k in range(n - 1)]
    comps += [f"sqrt(1 + {zn}) - 1", f"4*i*(sqrt(1 + {zn}) - 1 - {zn})", "w"]
    return HoloMap.series(S, T, [evaluate(c, S.space, mode="series", order=order) for c in comps], order, name="I")


def map_degenerate(phi: str = "z + w^2") -> HoloMap:
    """``(z, w) -> (0, phi(z, w), 0)`` into ``W^5_1``; nowhere transversal."""
    S = hyperquadric(1)
    return HoloMap.rational(S, winkelmann(1), [0, evaluate(phi, S.space), 0], name=f"Degenerate[{phi}]")


def map_linear_embedding(n: int = 1, ell: int = 0, extra: int = 1) -> HoloMap:
    """``(z, w) -> (z, 0, w)`` into a hyperquadric with ``extra`` more positive directions."""
    S = hyperquadric(n, ell)
    T = hyperquadric(n + extra, epsilon=tuple(S.epsilon) + (1,) * extra)
    zs = [Poly.var(S.space, f"z{k + 1}") for k in range(n)]
    return HoloMap.rational(S, T, zs + [Poly.const(S.space, 0)] * extra + [Poly.var(S.space, "w")], name="Embed")


def map_null_pair(S: Hypersurface, phis: Sequence) -> HoloMap:
    """``(z, phi, phi, w)``: equal-norm blocks of opposite sign, so ``Q = 1``."""
    m = len(phis)
    T = hyperquadric(S.n + 2 * m, epsilon=tuple(S.epsilon) + (1,) * m + (-1,) * m)
    zs = [Poly.var(S.space, f"z{k + 1}") for k in range(S.n)]
    fs = [evaluate(p, S.space) if isinstance(p, str) else p for p in phis]
    return HoloMap.rational(S, T, zs + list(fs) + list(fs) + [Poly.var(S.space, "w")], name="NullPair")


def random_null_pair(rng: random.Random, n: int = 1, ell: int = 0, m: int = 2, degree: int = 2) -> HoloMap:
    """A random map of the ``(z, phi, phi, w)`` shape with polynomial ``phi``."""
    S = hyperquadric(n, ell)
    holo = S.space.holo
    phis = []
    for _ in range(m):
        p = Poly.const(S.space, 0)
        for _ in range(3):
            mono = Poly.const(S.space, 1)
            for _ in range(rng.randint(1, degree)):
                mono = mono * Poly.var(S.space, rng.choice(holo))
            p = p + mono * gq(Fraction(rng.randint(-3, 3), rng.randint(1, 3)), Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        phis.append(p)
    return map_null_pair(S, phis)


def map_normal_form(A: Sequence[Sequence], B: Sequence[Sequence]) -> HoloMap:
    """``(z + (i/2)(zA)w, (z_j (zB)_k)_{j,k}, w)`` from ``H^{2n+1}`` (``n = len(A)``).

    ``B`` is ``n x r``; the quadratic block has ``n*r`` components.  The map
    satisfies the origin normalization and returns ``A`` from the normalized
    origin formula.
    """
    n = len(A)
    S = hyperquadric(n)
    A = [[to_scalar(a) for a in row] for row in A]
    B = [[to_scalar(b) for b in row] for row in B]
    r = len(B[0]) if B else 0
    zs = [Poly.var(S.space, f"z{k + 1}") for k in range(n)]
    w = Poly.var(S.space, "w")
    zero = Poly.const(S.space, 0)
    za = [sum((zs[g] * A[g][a] for g in range(n)), zero) for a in range(n)]
    zb = [sum((zs[g] * B[g][k] for g in range(n)), zero) for k in range(r)]
    comps = [zs[a] + za[a] * w * gq(0, Fraction(1, 2)) for a in range(n)]
    comps += [zs[j] * zb[k] for j in range(n) for k in range(r)]
    comps.append(w)
    T = hyperquadric(n + n * r, epsilon=(1,) * (n + n * r))
    return HoloMap.rational(S, T, comps, name="NormalForm")


def _fmt(x) -> str:
    from .algebra.scalars import fmt_scalar

    return fmt_scalar(x)


__all__ = ["map_I", "map_Phi", "map_R", "map_R_eps", "map_R_eps_mu", "map_degenerate", "map_linear_embedding",
           "map_normal_form", "map_null_pair", "phi_target", "random_null_pair"]
