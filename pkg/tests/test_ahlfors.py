import random

import pytest

from crmaps.ahlfors import (ahlfors_at_origin_normalized, ahlfors_explicit_hyperquadric, ahlfors_via_logQ,
                            rank_report)
from crmaps.algebra.poly import Poly
from crmaps.algebra.rational import RationalFn
from crmaps.algebra.scalars import gq
from crmaps.errors import NonTransversalError, ParameterError, PreconditionError, UnsupportedError
from crmaps.hypersurface import tangent_frame
from crmaps.library import (map_I, map_Phi, map_R, map_R_eps, map_R_eps_mu, map_degenerate, map_linear_embedding,
                            map_normal_form, random_null_pair)
from crmaps.maps import HoloMap, check_maps_into, compose, transversal_at


def surface_Q(H):
    return H.source.restrict(check_maps_into(H).Q)


@pytest.mark.parametrize("eps", ["0", "1/2", "1", "-1", "2", "-1/3"])
def test_R_eps_entry_closed_form(eps):
    # the computed entry is (1 - eps^2) / Q^2 on the surface
    H = map_R_eps(eps)
    A = ahlfors_via_logQ(H)
    e = gq(eps)
    Q = surface_Q(H)
    assert A[0, 0] == (1 - e * e) / (Q * Q)
    assert A.is_hermitian()


@pytest.mark.parametrize("eps,rank", [("1/2", 1), ("1", 0), ("-1", 0), ("0", 1)])
def test_R_eps_rank(eps, rank):
    A = ahlfors_via_logQ(map_R_eps(eps))
    S = A.source
    rep = rank_report(A, [S.origin()])
    assert rep.generic_rank == rank
    assert rep.vanishes == (rank == 0)
    assert rep.rank_at[S.origin()] == rank


def test_phi_and_null_pairs_vanish():
    assert ahlfors_via_logQ(map_Phi(2)).vanishes()
    for seed in range(3):
        H = random_null_pair(random.Random(seed), 2, 1, 2, 2)
        assert ahlfors_via_logQ(H).vanishes()
        assert ahlfors_explicit_hyperquadric(H).vanishes()
    assert ahlfors_explicit_hyperquadric(map_linear_embedding(2, 0, 1)).vanishes()


def phi_after(R):
    return compose(map_Phi(W=R.target), R)


@pytest.mark.parametrize("R", [map_R(1, 0, 1), map_R_eps_mu("1/2", "1/3"), map_R(2, 1, -1), map_R(3, 1, 1)],
                         ids=["R", "Rmu", "R2sig", "R3"])
def test_cross_method(R):
    H = phi_after(R)
    assert ahlfors_via_logQ(H).equals(ahlfors_explicit_hyperquadric(H))


def test_explicit_needs_hyperquadric_target():
    with pytest.raises(UnsupportedError):
        ahlfors_explicit_hyperquadric(map_R(1))


def test_degenerate_raises():
    with pytest.raises(NonTransversalError):
        ahlfors_via_logQ(map_degenerate())


def test_normalized_origin_formula():
    A = [[gq(1), gq(0, 1)], [gq(0, -1), gq(3)]]
    H = map_normal_form(A, [[1], [2]])
    assert ahlfors_at_origin_normalized(H) == A
    E = map_linear_embedding(2, 0, 1)
    assert all(not x for row in ahlfors_at_origin_normalized(E) for x in row)
    with pytest.raises(PreconditionError):
        ahlfors_at_origin_normalized(compose(map_Phi(1), map_R(1, 0, 1)))


def test_frame_independence_of_rank():
    H = map_R_eps_mu("1/2", "1/3")
    Phi_H = phi_after(H)
    S = Phi_H.source
    pts = [p for p in S.random_points(8, random.Random(2)) if transversal_at(H, p)][:4]
    assert pts
    base = rank_report(ahlfors_via_logQ(Phi_H), pts)
    W = H.target
    # a unipotent change of the Winkelmann frame does not change ranks downstream
    frame = tangent_frame(W, [[1, 0], [gq("2/3", 1), 1]])
    A_phi = ahlfors_via_logQ(map_Phi(W=W), frame=frame)
    assert A_phi.vanishes()
    other = rank_report(ahlfors_via_logQ(H), pts)
    assert base.rank_at == other.rank_at


def test_chain_rule_entries():
    for H in (map_R(1, 0, 1), map_R_eps_mu("1/2", "1/3"), map_R_eps("1/2")):
        assert ahlfors_via_logQ(phi_after(H)).equals(ahlfors_via_logQ(H))


def test_series_I_vanishes_to_order():
    A = ahlfors_via_logQ(map_I(1, 0, 10))
    # Q is known through K - 2 and two weight-one derivatives cost two more
    assert A.vanishes() and A.valid_order == 6
    rep = rank_report(A)
    assert rep.generic_rank == 0 and rep.to_order == A.valid_order


def test_R_parameter_restricted_in_higher_dimension():
    with pytest.raises(ParameterError):
        map_R(2, 0, "1/2")
