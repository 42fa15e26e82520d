from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import SPACE, polys, scalars
from crmaps.algebra import conjugate, wirtinger
from crmaps.algebra.poly import Poly
from crmaps.algebra.rational import RationalFn, divide_linear, substitute
from crmaps.algebra.scalars import I, abs2, conj, fmt_scalar, gq, parse_scalar, real_sign
from crmaps.algebra.series import TruncSeries, series_lift, sqrt_series
from crmaps.algebra.space import SpaceMismatch, VariableSpace
from crmaps.errors import BranchError, PreconditionError, StructuralError
from crmaps.hypersurface import hyperquadric, winkelmann


def v(name, space=SPACE):
    return Poly.var(space, name)


# scalars ---------------------------------------------------------------------

@given(scalars, scalars)
def test_scalar_conj_is_field_automorphism(a, b):
    assert conj(conj(a)) == a
    assert conj(a * b) == conj(a) * conj(b)
    assert conj(a + b) == conj(a) + conj(b)


@pytest.mark.parametrize("text", ["3/4", "-i", "1/2 + 3/4*i", "-2 - i", "7", "5/3*i"])
def test_scalar_text_round_trip(text):
    x = parse_scalar(text)
    assert parse_scalar(fmt_scalar(x)) == x


def test_scalar_rejects_decimals():
    with pytest.raises(ValueError):
        parse_scalar("0.5")


def test_abs2_and_sign():
    assert abs2(gq("3/5", "4/5")) == 1
    assert real_sign(gq(-2)) == -1
    with pytest.raises(ValueError):
        real_sign(I)


# polynomials -----------------------------------------------------------------

def test_basic_products():
    z, zb = v("z1"), v("z1b")
    p = z * zb
    assert list(p.terms()) == [(tuple(1 if k in (0, 3) else 0 for k in range(6)), gq(1))]
    w, wb = v("w"), v("wb")
    assert (w - wb) * (w + wb) == w ** 2 - wb ** 2


def test_space_mismatch():
    other = VariableSpace.make(["z1", "w"])
    with pytest.raises(StructuralError):
        v("z1") + Poly.var(other, "z1")
    assert issubclass(SpaceMismatch, StructuralError)


def test_conjugate_examples():
    assert conjugate(v("z1") * I) == v("z1b") * (-I)
    S = hyperquadric(2, 1)
    assert conjugate(S.rho) == S.rho
    z, w = Poly.var(S.space, "z1"), Poly.var(S.space, "w")
    e = gq("1/3")
    p = w * (z + e) - z * I - z * z * (2 * I * e)
    zb, wb = z.conj(), w.conj()
    assert conjugate(p) == wb * (zb + e) + zb * I + zb * zb * (2 * I * e)


def test_wirtinger_examples():
    assert wirtinger(v("w") ** 2, "w") == v("w") * 2
    assert wirtinger(v("z1") * v("z1b"), "z1b") == v("z1")
    S = hyperquadric(3, 1)
    for k, e in enumerate(S.epsilon):
        name = f"z{k + 1}"
        assert S.rho.diff(name) == Poly.var(S.space, name + "b") * (-e)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * b == b * a


@given(polys(), polys())
def test_conjugation_involution(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * a.conj()).is_real()


@given(polys(), st.sampled_from(SPACE.names), st.sampled_from(SPACE.names))
def test_derivatives_commute(p, x, y):
    assert p.diff(x).diff(y) == p.diff(y).diff(x)


@given(polys())
def test_divide_linear_reconstructs(p):
    S = hyperquadric(2, 1)
    p = p.to_space(S.space)
    q, r = divide_linear(p, S.rho, "wb")
    assert r.free_of("wb")
    assert q * S.rho + r == p


def test_divide_linear_examples():
    S = hyperquadric(1)
    q, r = divide_linear(S.rho, S.rho, "wb")
    assert q == 1 and r.is_zero
    zz = Poly.var(S.space, "z1") * Poly.var(S.space, "z1b")
    q, r = divide_linear(zz * S.rho, S.rho, "wb")
    assert q == zz and r.is_zero
    with pytest.raises(PreconditionError):
        divide_linear(S.rho, S.rho * S.rho, "wb")


# rational functions --------------------------------------------------------------

@given(polys(max_terms=3), polys(max_terms=3), polys(max_terms=3))
def test_rational_field_operations(a, b, c):
    if b.is_zero or c.is_zero:
        return
    f = RationalFn(a, b)
    g = RationalFn(c, b + c) if not (b + c).is_zero else RationalFn(c)
    assert (f + g) - g == f
    assert (f * g) / g == f
    assert f.conj().conj() == f
    assert f * RationalFn(b) == RationalFn(a)


def test_rational_canonical_equality():
    z, w = v("z1"), v("w")
    f = RationalFn(z * z - 1, z - 1)
    assert f == RationalFn.of(z + 1)
    assert f.is_polynomial
    g = RationalFn(z * 2, w * 4)
    assert g == RationalFn(z, w * 2)
    assert g.den.is_zero is False


def test_rational_quotient_rule():
    z, w = v("z1"), v("w")
    f = RationalFn(z, 1 - w)
    assert f.diff("w") == RationalFn(z, (1 - w) ** 2)
    assert f.diff("z1b").is_zero


def test_substitute_examples():
    W = winkelmann(2)
    from crmaps.library import map_Phi

    Phi = map_Phi(2)
    assert Phi.pullback(Phi.target.rho) == RationalFn.of(W.rho)
    S = hyperquadric(1)
    ident = {x: Poly.var(S.space, x) for x in S.space.names}
    assert substitute(S.rho, ident) == RationalFn.of(S.rho)
    zero_w = substitute(S.rho, {"w": Poly.const(S.space, 0)})
    wb, z = Poly.var(S.space, "wb"), Poly.var(S.space, "z1")
    # -wb/(2i) = (i/2) wb
    assert zero_w == RationalFn.of(wb * gq(0, Fraction(1, 2)) - z * z.conj())


def test_substitute_zero_denominator():
    z = v("z1")
    f = RationalFn(z, z - 1)
    with pytest.raises(ZeroDivisionError):
        substitute(f, {"z1": Poly.const(SPACE, 1)})


# truncated series ----------------------------------------------------------------

def test_sqrt_binomial_coefficients():
    s = series_lift("sqrt(1 + z)", 4)
    z = TruncSeries.var(s.space, "z", 4)
    expect = 1 + z * gq("1/2") - z ** 2 * gq("1/8") + z ** 3 * gq("1/16") - z ** 4 * gq("5/128")
    assert s == expect
    assert series_lift("sqrt(1 + 0)", 4) == TruncSeries.const(s.space, 1, 4)


def test_sqrt_minus_linear_terms():
    s = series_lift("sqrt(1 + z) - 1 - z", 2)
    z = TruncSeries.var(s.space, "z", 2)
    assert s == -z * gq("1/2") - z ** 2 * gq("1/8")
    t = series_lift("sqrt(1 + z) - 1 - z/2", 2)
    assert t == -z ** 2 * gq("1/8")


def test_sqrt_branch_error():
    with pytest.raises(BranchError):
        series_lift("sqrt(4 + z)", 3)


@given(polys(max_terms=3), st.integers(2, 6))
def test_sqrt_squares_back(p, K):
    u = TruncSeries.from_poly(p, K)
    u = u - u.constant_term()
    s = sqrt_series(1 + u)
    assert s * s == 1 + u


def test_series_order_bookkeeping():
    a = TruncSeries.var(SPACE, "w", 6)
    b = TruncSeries.var(SPACE, "z1", 4)
    assert (a * b).order == 4
    assert a.diff("w").order == 4
    assert (a * a * a * a).is_zero
    assert (TruncSeries.const(SPACE, 1, 5) - a).inverse() * (1 - a) == TruncSeries.const(SPACE, 1, 5)


@given(polys(max_terms=3), polys(max_terms=2), st.integers(2, 5))
def test_exact_factor_extends_known_order(p, q, K):
    s = TruncSeries.from_poly(p, K)
    prod = s.mul_exact(q)
    if q.is_zero:
        assert prod.is_zero
        return
    assert prod.order == K + q.weighted_order()
    assert prod == TruncSeries.from_poly(p * q, prod.order) - TruncSeries.from_poly(
        (p - s.poly) * q, prod.order)
