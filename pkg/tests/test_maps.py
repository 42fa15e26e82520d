import random

import pytest

from crmaps.algebra.poly import Poly
from crmaps.algebra.rational import RationalFn, substitute
from crmaps.algebra.scalars import gq
from crmaps.errors import MapCheckError, PreconditionError, StructuralError, UnsupportedError
from crmaps.hypersurface import hyperquadric, winkelmann
from crmaps.library import (map_I, map_Phi, map_R, map_R_eps, map_R_eps_mu, map_degenerate, map_linear_embedding,
                            random_null_pair)
from crmaps.maps import HoloMap, Side, check_maps_into, compose, identity, transversal_at


def quad(S, k, e):
    z = Poly.var(S.space, f"z{k}")
    return RationalFn.of((z + e) * (z + e).conj())


def test_phi_has_unit_quotient():
    for n in (1, 2, 3):
        res = check_maps_into(map_Phi(n))
        assert res.Q == RationalFn.const(res.Q.space, 1)
        assert res.side is Side.PRESERVING


@pytest.mark.parametrize("eps", [1, -1])
def test_R_quotient(eps):
    H = map_R(2, 0, eps)
    res = check_maps_into(H)
    assert res.maps_into and res.Q == quad(H.source, 2, eps)


def test_R_eps_mu_quotient_is_real():
    res = check_maps_into(map_R_eps_mu("1/2", "1/3"))
    assert res.Q.conj() == res.Q
    assert res.side is Side.PRESERVING


def test_degenerate_map():
    res = check_maps_into(map_degenerate())
    assert res.degenerate and res.Q.is_zero
    H = res.map
    for p in H.source.random_points(3):
        assert not transversal_at(H, p, res)


def test_transversality_locus_of_R():
    H = map_R(1, 0, 1)
    S = H.source
    assert not transversal_at(H, S.lift_point({"z1": -1}, 0))
    assert transversal_at(H, S.origin())
    with pytest.raises(PreconditionError):
        transversal_at(H, S.point([0, 0]).__class__(S, (gq(0), gq(0, 1))))


def test_map_that_misses_target():
    S = hyperquadric(1)
    bad = HoloMap.rational(S, winkelmann(1), ["z", "z", "w"])
    with pytest.raises(MapCheckError):
        check_maps_into(bad)
    assert not check_maps_into(bad, strict=False).maps_into


def test_holomorphy_and_arity_are_enforced():
    S = hyperquadric(1)
    with pytest.raises(StructuralError):
        HoloMap.rational(S, S, ["z"])
    with pytest.raises(StructuralError):
        HoloMap.rational(S, S, [Poly.var(S.space, "z1b"), "w"])


def test_quotient_is_multiplicative():
    R = map_R(1, 0, gq("1/2"))
    Phi = map_Phi(W=R.target)
    QR, QP = check_maps_into(R).Q, check_maps_into(Phi).Q
    QPR = check_maps_into(compose(Phi, R)).Q
    assert QPR == substitute(QP, R.bindings(), R.source.space) * QR


def test_compose_with_identity():
    H = map_R_eps(gq("1/3"))
    left = compose(identity(H.target), H)
    right = compose(H, identity(H.source))
    assert left.components == H.components and right.components == H.components


def test_compose_dimension_mismatch():
    with pytest.raises(StructuralError):
        compose(map_R(1), map_R(1))


@pytest.mark.parametrize("K", [4, 7, 10])
def test_series_map_I(K):
    res = check_maps_into(map_I(1, 0, K))
    assert res.maps_into
    assert res.Q.constant_term() == gq(1)


def test_series_compose_and_base():
    I1 = map_I(1, 0, 6)
    Phi = map_Phi(W=I1.target)
    # zeta is hit by a weight-one component, so truncation would not stay exact
    with pytest.raises(PreconditionError):
        compose(Phi, I1)
    C = compose(I1, identity(I1.source))
    assert C.is_series and C.order == 6
    assert check_maps_into(C).maps_into
    with pytest.raises(UnsupportedError):
        I1(I1.source.lift_point({"z1": 1}, 0))


def test_as_series_agrees_with_rational():
    H = map_R_eps_mu("1/2", "1/3")
    Hs = H.as_series(8)
    assert check_maps_into(Hs).maps_into


def test_image_lies_on_target():
    H = map_R(2, 1, 1)
    for p in H.source.random_points(4, random.Random(3)):
        H.image(p)


def test_transversality_invariant_under_sign_flip():
    H = random_null_pair(random.Random(5), 1, 0, 1, 2)
    res = check_maps_into(H)
    flipped = type(res)(res.map, -res.Q, True, Side.REVERSING, res.remainder)
    for p in H.source.random_points(4):
        assert transversal_at(H, p, res) == transversal_at(H, p, flipped)


def test_linear_embedding():
    res = check_maps_into(map_linear_embedding(2, 1, 2))
    assert res.Q == RationalFn.const(res.Q.space, 1)
