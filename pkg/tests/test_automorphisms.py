import random

import pytest
from hypothesis import given, strategies as st

from crmaps.ahlfors import ahlfors_via_logQ
from crmaps.algebra.poly import Poly
from crmaps.algebra.rational import RationalFn
from crmaps.algebra.scalars import gq
from crmaps.automorphisms import (AutKind, equivalence_move, homothety_check, inverse, materialize,
                                  quadric_catalog, quadric_dilation, quadric_inversion, quadric_rotation,
                                  quadric_translation, translation_to_origin, wink_H, wink_R, wink_S)
from crmaps.errors import ParameterError, StructuralError
from crmaps.hypersurface import hyperquadric, winkelmann
from crmaps.library import map_R, map_R_eps_mu
from crmaps.maps import compose, identity

PYTH = [gq("3/5", "4/5"), gq(0, 1), gq(-1), gq("5/13", "-12/13")]

W = winkelmann(2)
S = hyperquadric(2, 1)


def specs():
    return [
        wink_H(W, "2/3", [PYTH[0], PYTH[1]]),
        wink_S(W, [gq(1, 2)], "3/4"),
        wink_R(W, [[PYTH[3]]]),
        quadric_translation(S, [gq(1, -1), gq("1/2")], "1/3"),
        quadric_dilation(S, "5/2"),
        quadric_rotation(S, [[1, 0], [0, PYTH[0]]]),
        quadric_inversion(S, 1),
        quadric_inversion(S, -1),
    ]


def is_identity(H):
    return identity(H.source).components == H.components


@pytest.mark.parametrize("spec", specs(), ids=lambda s: s.describe())
def test_inverse_round_trip(spec):
    g, gi = materialize(spec), materialize(inverse(spec))
    assert is_identity(compose(gi, g))
    assert is_identity(compose(g, gi))


@pytest.mark.parametrize("spec,C", [
    (wink_H(W, "2/3", [PYTH[0], 1]), gq("16/81")),
    (wink_S(W, [gq(1, 2)], "3/4"), gq(1)),
    (wink_R(W, [[PYTH[3]]]), gq(1)),
    (quadric_translation(S, [1, gq(0, 1)], 2), gq(1)),
    (quadric_dilation(S, 3), gq(9)),
    (quadric_rotation(S, [[1, 0], [0, gq(0, 1)]]), gq(1)),
])
def test_homothety_constants(spec, C):
    assert homothety_check(spec) == C


def test_inversion_is_not_a_homothety():
    from crmaps.maps import check_maps_into

    H = materialize(quadric_inversion(S, 1))
    w = RationalFn.of(Poly.var(H.source.space, "w"))
    assert check_maps_into(H).Q == (w * w.conj()).inverse()
    with pytest.raises(StructuralError):
        homothety_check(quadric_inversion(S, 1))


def test_parameter_validation():
    with pytest.raises(ParameterError):
        wink_H(W, "2/3", [gq("1/2"), 1])
    with pytest.raises(ParameterError):
        wink_H(W, "-1", [1, 1])
    with pytest.raises(ParameterError):
        wink_S(W, [1], gq(0, 1))
    with pytest.raises(ParameterError):
        quadric_rotation(S, [[0, 1], [1, 0]])
    with pytest.raises(ParameterError):
        wink_R(W, [[2]])


def test_catalog_kinds():
    cat = quadric_catalog(2, 1)
    assert set(cat) == {k.value for k in AutKind if k.value.startswith("Quadric")}
    assert cat["QuadricDilation"](2).kind is AutKind.QUADRIC_DILATION


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 4), st.integers(-3, 3))
def test_translation_to_origin(a, b, d, t):
    S1 = hyperquadric(1)
    p = S1.lift_point([gq(a, b) / d], t)
    tr = materialize(translation_to_origin(S1, p))
    img = tr(p)
    assert all(not c for c in img)


def test_equivalence_move_keeps_tensor_class():
    H = map_R(1, 0, 1)
    psi = wink_S(H.target, [], "1/2")
    gam = quadric_dilation(H.source, 2)
    moved = equivalence_move(H, psi, gam)
    assert ahlfors_via_logQ(moved).vanishes()
    Hm = map_R_eps_mu("1/2", "1/3")
    moved = equivalence_move(Hm, wink_H(Hm.target, "1/2", [PYTH[0]]), quadric_dilation(Hm.source, 3))
    assert not ahlfors_via_logQ(moved).vanishes()
    with pytest.raises(StructuralError):
        equivalence_move(H, gam, None)


def test_wink_R_sigma_recorded():
    W3 = winkelmann(3, 1)
    spec = wink_R(W3, [[0, 1], [1, 0]])
    assert spec.param("sigma") in (1, -1)
