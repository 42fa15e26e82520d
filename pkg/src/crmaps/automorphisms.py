"""CR automorphisms of the model hypersurfaces.

Winkelmann stability-group generators ``WinkH`` (weighted dilation with
phases), ``WinkS`` (shear) and ``WinkR`` (rotation of ``z'``), plus a
generating set for hyperquadrics.  Every spec materializes to a rational
:class:`HoloMap` and is checked against the mapping equation on demand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .algebra.poly import Poly
from .algebra.rational import RationalFn
from .algebra.scalars import I, ONE, Scalar, abs2, conj, fmt_scalar, gq, to_scalar
from .errors import ParameterError, PreconditionError, StructuralError
from .hypersurface import Hypersurface, Kind, SurfacePoint
from .maps import HoloMap, check_maps_into, compose


class AutKind(str, Enum):
    WINK_H = "WinkH"
    WINK_S = "WinkS"
    WINK_R = "WinkR"
    QUADRIC_TRANSLATION = "QuadricTranslation"
    QUADRIC_DILATION = "QuadricDilation"
    QUADRIC_ROTATION = "QuadricRotation"
    QUADRIC_INVERSION = "QuadricInversion"


_WINK = {AutKind.WINK_H, AutKind.WINK_S, AutKind.WINK_R}


@dataclass(frozen=True)
class AutomorphismSpec:
    """An automorphism of ``surface`` given by kind and exact parameters.

    ``params`` is a tuple of ``(name, value)`` pairs; vectors are tuples and
    matrices tuples of tuples.  Validation runs at construction.
    """

    kind: AutKind
    surface: Hypersurface
    params: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "kind", AutKind(self.kind))
        wink = self.surface.kind is Kind.WINKELMANN
        if (self.kind in _WINK) != wink:
            raise ParameterError(f"{self.kind.value} does not act on {self.surface.label()}")
        _validate(self)

    def param(self, name: str):
        return dict(self.params)[name]

    def describe(self) -> str:
        parts = []
        for k, v in self.params:
            parts.append(f"{k}={_fmt(v)}")
        return f"{self.kind.value}[{', '.join(parts)}]"


def _fmt(v) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, int):
        return str(v)
    return fmt_scalar(v)


def _vec(v, n: int, what: str) -> tuple:
    v = tuple(to_scalar(x) for x in v)
    if len(v) != n:
        raise ParameterError(f"{what} needs {n} entries, got {len(v)}")
    return v


def _mat(U, n: int) -> tuple:
    U = tuple(tuple(to_scalar(x) for x in row) for row in U)
    if len(U) != n or any(len(r) != n for r in U):
        raise ParameterError(f"U must be {n}x{n}")
    return U


def _positive_rational(x, what: str) -> Scalar:
    x = to_scalar(x)
    if x.y != 0 or x.x <= 0:
        raise ParameterError(f"{what} must be a positive rational, got {fmt_scalar(x)}")
    return x


def _real(x, what: str) -> Scalar:
    x = to_scalar(x)
    if x.y != 0:
        raise ParameterError(f"{what} must be real, got {fmt_scalar(x)}")
    return x


def _sigma(U: tuple, eps: Sequence[int]) -> int | None:
    """``s`` with ``U diag(eps) U* = s diag(eps)``, or None."""
    n = len(U)
    prod = [[sum((U[i][k] * eps[k] * conj(U[j][k]) for k in range(n)), gq(0)) for j in range(n)] for i in range(n)]
    for s in (1, -1):
        if all(prod[i][j] == (gq(s * eps[i]) if i == j else gq(0)) for i in range(n) for j in range(n)):
            return s
    return None


def _validate(spec: AutomorphismSpec) -> None:
    S, k = spec.surface, spec.kind
    p = dict(spec.params)
    m = S.n - 1
    if k is AutKind.WINK_H:
        p["lam"] = _positive_rational(p.get("lam", 1), "lambda")
        p["u"] = _vec(p.get("u", (1,) * S.n), S.n, "u")
        for j, u in enumerate(p["u"]):
            if abs2(u) != 1:
                raise ParameterError(f"u_{j + 1} = {fmt_scalar(u)} is not on the unit circle")
    elif k is AutKind.WINK_S:
        p["a"] = _vec(p.get("a", (0,) * m), m, "a")
        p["r"] = _real(p.get("r", 0), "r")
    elif k is AutKind.WINK_R:
        p["U"] = _mat(p.get("U", _identity(m)), m)
        s = _sigma(p["U"], S.epsilon)
        if s is None:
            raise ParameterError("U is not pseudo-unitary for the signature of z'")
        p["sigma"] = s
    elif k is AutKind.QUADRIC_TRANSLATION:
        p["b"] = _vec(p.get("b", (0,) * S.n), S.n, "b")
        p["t0"] = _real(p.get("t0", 0), "t0")
    elif k is AutKind.QUADRIC_DILATION:
        p["lam"] = _positive_rational(p.get("lam", 1), "lambda")
    elif k is AutKind.QUADRIC_ROTATION:
        p["U"] = _mat(p.get("U", _identity(S.n)), S.n)
        if _sigma(p["U"], S.epsilon) != 1:
            raise ParameterError("U must satisfy U I U* = I for the quadric signature")
    elif k is AutKind.QUADRIC_INVERSION:
        s = int(p.get("s", 1))
        if s not in (1, -1):
            raise ParameterError("inversion sign must be +1 or -1")
        p["s"] = s
    order = [name for name, _ in spec.params] + [n for n in p if n not in dict(spec.params)]
    object.__setattr__(spec, "params", tuple((n, p[n]) for n in order))


def _identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


# constructors ---------------------------------------------------------------------

def wink_H(W: Hypersurface, lam=1, u: Sequence | None = None) -> AutomorphismSpec:
    return AutomorphismSpec(AutKind.WINK_H, W, (("lam", lam), ("u", tuple(u) if u is not None else (1,) * W.n)))


def wink_S(W: Hypersurface, a: Sequence | None = None, r=0) -> AutomorphismSpec:
    return AutomorphismSpec(AutKind.WINK_S, W, (("a", tuple(a) if a is not None else (0,) * (W.n - 1)), ("r", r)))


def wink_R(W: Hypersurface, U: Sequence[Sequence] | None = None) -> AutomorphismSpec:
    return AutomorphismSpec(AutKind.WINK_R, W, (("U", U if U is not None else _identity(W.n - 1)),))


def quadric_translation(S: Hypersurface, b: Sequence | None = None, t0=0) -> AutomorphismSpec:
    return AutomorphismSpec(AutKind.QUADRIC_TRANSLATION, S, (("b", tuple(b) if b is not None else (0,) * S.n),
                                                             ("t0", t0)))


def quadric_dilation(S: Hypersurface, lam=1) -> AutomorphismSpec:
    return AutomorphismSpec(AutKind.QUADRIC_DILATION, S, (("lam", lam),))


def quadric_rotation(S: Hypersurface, U: Sequence[Sequence] | None = None) -> AutomorphismSpec:
    return AutomorphismSpec(AutKind.QUADRIC_ROTATION, S, (("U", U if U is not None else _identity(S.n)),))


def quadric_inversion(S: Hypersurface, s: int = 1) -> AutomorphismSpec:
    return AutomorphismSpec(AutKind.QUADRIC_INVERSION, S, (("s", s),))


def quadric_catalog(n: int, ell: int = 0):
    """Constructors of the hyperquadric generating set, keyed by kind name."""
    from .hypersurface import hyperquadric

    S = hyperquadric(n, ell)
    return {
        AutKind.QUADRIC_TRANSLATION.value: lambda b=None, t0=0: quadric_translation(S, b, t0),
        AutKind.QUADRIC_DILATION.value: lambda lam=1: quadric_dilation(S, lam),
        AutKind.QUADRIC_ROTATION.value: lambda U=None: quadric_rotation(S, U),
        AutKind.QUADRIC_INVERSION.value: lambda s=1: quadric_inversion(S, s),
    }


def translation_to_origin(S: Hypersurface, p: SurfacePoint) -> AutomorphismSpec:
    """The Heisenberg translation sending ``p`` to the origin."""
    if S.kind is not Kind.HYPERQUADRIC:
        raise PreconditionError("translations are catalogued for hyperquadrics only")
    amb = p.ambient()
    z = [amb[f"z{k + 1}"] for k in range(S.n)]
    b = [-x for x in z]
    # new w = w + 2i<z, conj b> + t0 + i|b|^2 must vanish at p
    pair = sum((e * x * conj(y) for e, x, y in zip(S.epsilon, z, b)), gq(0))
    norm = sum((e * y * conj(y) for e, y in zip(S.epsilon, b)), gq(0))
    rest = amb["w"] + I * 2 * pair + I * norm
    if rest.y != 0:
        raise PreconditionError(f"{p} is not on {S.label()}")
    return quadric_translation(S, b, -rest)


# materialization ------------------------------------------------------------------

def materialize(spec: AutomorphismSpec) -> HoloMap:
    S, k = spec.surface, spec.kind
    x = {v: Poly.var(S.space, v) for v in S.space.holo}
    zs = [x[f"z{j + 1}"] for j in range(S.n)]
    w = x["w"]
    zero = Poly.const(S.space, 0)
    if k is AutKind.WINK_H:
        lam, u = spec.param("lam"), spec.param("u")
        comps = [z * (lam * lam * uk) for z, uk in zip(zs[:-1], u[:-1])]
        comps += [zs[-1] * (lam * u[-1]), x["zeta"] * (lam ** 3 * u[-1]), w * lam ** 4]
        base = None
    elif k is AutKind.WINK_S:
        a, r = spec.param("a"), spec.param("r")
        zn = zs[-1]
        eps = S.epsilon
        pair = sum((z * (conj(ak) * e) for z, ak, e in zip(zs[:-1], a, eps)), zero)
        norm = sum((ak * conj(ak) * e for ak, e in zip(a, eps)), gq(0))
        comps = [z + zn * ak for z, ak in zip(zs[:-1], a)]
        comps += [zn, x["zeta"] + pair * (2 * I) + zn * (r + I * norm), w]
        base = None
    elif k is AutKind.WINK_R:
        U = spec.param("U")
        comps = [sum((zs[j] * U[i][j] for j in range(S.n - 1)), zero) for i in range(S.n - 1)]
        comps += [zs[-1], x["zeta"], w]
        base = None
    elif k is AutKind.QUADRIC_TRANSLATION:
        b, t0 = spec.param("b"), spec.param("t0")
        pair = sum((z * (conj(bk) * e) for z, bk, e in zip(zs, b, S.epsilon)), zero)
        norm = sum((bk * conj(bk) * e for bk, e in zip(b, S.epsilon)), gq(0))
        comps = [z + bk for z, bk in zip(zs, b)] + [w + pair * (2 * I) + (t0 + I * norm)]
        base = None
    elif k is AutKind.QUADRIC_DILATION:
        lam = spec.param("lam")
        comps = [z * lam for z in zs] + [w * (lam * lam)]
        base = None
    elif k is AutKind.QUADRIC_ROTATION:
        U = spec.param("U")
        comps = [sum((zs[j] * U[i][j] for j in range(S.n)), zero) for i in range(S.n)] + [w]
        base = None
    else:
        s = spec.param("s")
        wr = RationalFn.of(w)
        comps = [RationalFn.of(z) * s / wr for z in zs] + [RationalFn.const(S.space, -1) / wr]
        # w = 0 is the pole; (0, 1) lies on every hyperquadric
        base = S.lift_point({v: 0 for v in S.coords}, 1)
    return HoloMap.rational(S, S, comps, base=base, name=spec.describe())


def inverse(spec: AutomorphismSpec) -> AutomorphismSpec:
    """Closed-form inverse within the same kind."""
    S, k = spec.surface, spec.kind
    if k is AutKind.WINK_H:
        return wink_H(S, ONE / spec.param("lam"), [conj(u) for u in spec.param("u")])
    if k is AutKind.WINK_S:
        return wink_S(S, [-a for a in spec.param("a")], -spec.param("r"))
    if k is AutKind.WINK_R:
        return wink_R(S, _pseudo_inverse(spec.param("U"), S.epsilon[: S.n - 1], spec.param("sigma")))
    if k is AutKind.QUADRIC_TRANSLATION:
        return quadric_translation(S, [-b for b in spec.param("b")], -spec.param("t0"))
    if k is AutKind.QUADRIC_DILATION:
        return quadric_dilation(S, ONE / spec.param("lam"))
    if k is AutKind.QUADRIC_ROTATION:
        return quadric_rotation(S, _pseudo_inverse(spec.param("U"), S.epsilon, 1))
    return quadric_inversion(S, -spec.param("s"))


def _pseudo_inverse(U, eps, sigma) -> tuple:
    # U E U* = sigma E with E = E^{-1} gives U^{-1} = sigma E U* E
    n = len(U)
    return tuple(tuple(conj(U[j][i]) * (sigma * eps[i] * eps[j]) for j in range(n)) for i in range(n))


def homothety_check(spec: AutomorphismSpec) -> Scalar:
    """The constant ``C`` with ``rho o psi = C rho``.

    Raises :class:`MapCheckError` if the map leaves the hypersurface and
    :class:`StructuralError` if the quotient is not constant.
    """
    res = check_maps_into(materialize(spec))
    if not res.Q.is_constant:
        raise StructuralError(f"{spec.describe()} is not a homothety: Q = {res.Q}")
    return res.Q.constant_value()


def equivalence_move(H: HoloMap, phi: AutomorphismSpec | None, gamma: AutomorphismSpec | None) -> HoloMap:
    """``phi o H o gamma^{-1}``; ``None`` stands for the identity."""
    out = H
    if gamma is not None:
        if gamma.surface != H.source:
            raise StructuralError("gamma must act on the source of H")
        ginv = materialize(inverse(gamma))
        out = compose(out, ginv)
    if phi is not None:
        if phi.surface != H.target:
            raise StructuralError("phi must act on the target of H")
        out = compose(materialize(phi), out)
    return out


__all__ = ["AutKind", "AutomorphismSpec", "equivalence_move", "homothety_check", "inverse", "materialize",
           "quadric_catalog", "quadric_dilation", "quadric_inversion", "quadric_rotation", "quadric_translation",
           "translation_to_origin", "wink_H", "wink_R", "wink_S"]
