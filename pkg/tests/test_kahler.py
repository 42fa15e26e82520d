import random

import pytest

from crmaps.algebra.scalars import gq
from crmaps.errors import NonTransversalError, PreconditionError, UnsupportedError
from crmaps.hypersurface import hyperquadric, winkelmann
from crmaps.kahler import (KahlerMetric, einstein_at_points, einstein_constant, interior_points, isometry_check,
                           metric_matrix, pullback_agrees_at, ricci_matrix)
from crmaps.library import map_I, map_Phi, map_R, map_R_eps, map_R_eps_mu, map_degenerate, map_linear_embedding


@pytest.mark.parametrize("S,c", [(hyperquadric(1), -3), (hyperquadric(2, 1), -4), (winkelmann(1), -4),
                                 (winkelmann(2), -5)], ids=["H3", "H5_1", "W5", "W7"])
def test_einstein_constant(S, c):
    g = metric_matrix(S)
    assert g.is_hermitian()
    assert einstein_constant(g) == gq(c)
    assert einstein_at_points(g, c, interior_points(S, 3))


@pytest.mark.parametrize("n,ell", [(1, 0), (2, 0), (2, 1), (3, 1)])
def test_inertia_on_positive_side(n, ell):
    S = hyperquadric(n, ell)
    g = metric_matrix(S)
    for p in interior_points(S, 3, random.Random(n + ell)):
        pos, neg, zero = g.inertia_at(p)
        assert (neg, zero) == (ell, 0) and pos == n + 1 - ell


def test_metric_singular_on_surface():
    S = hyperquadric(1)
    with pytest.raises(PreconditionError):
        metric_matrix(S).evaluate(S.origin().ambient())


@pytest.mark.parametrize("H,iso", [(map_Phi(1), True), (map_R(1, 0, 1), True), (map_linear_embedding(1, 0, 2), True),
                                   (map_R_eps("1/2"), False), (map_R_eps_mu("1/2", "1/3"), False)],
                         ids=["Phi", "R", "embed", "R_half", "R_mu"])
def test_isometry_and_pullback(H, iso):
    assert isometry_check(H) is iso
    pts = [p for p in interior_points(H.source, 3, random.Random(4))
           if metric_matrix(H.target).surface.rho.evaluate(_image(H, p))]
    assert pullback_agrees_at(H, pts) is iso


def _image(H, p):
    from crmaps.algebra.scalars import conj
    from crmaps.algebra.space import conj_name

    out = {}
    for v, c in zip(H.target.space.holo, H.components):
        out[v] = c.evaluate(p)
        out[conj_name(v)] = conj(out[v])
    return out


def test_isometry_errors():
    with pytest.raises(UnsupportedError):
        isometry_check(map_I(1, 0, 6))
    with pytest.raises(NonTransversalError):
        isometry_check(map_degenerate())


def test_ricci_is_hermitian():
    g = KahlerMetric(winkelmann(1))
    R = ricci_matrix(g)
    assert all(R[i][j] == R[j][i].conj() for i in range(3) for j in range(3))


def test_metric_at_sample_point():
    # rho = Im w - |z|^2 = 2 at (0, 2i)
    S = hyperquadric(1)
    pt = {"z1": gq(0), "z1b": gq(0), "w": gq(0, 2), "wb": gq(0, -2)}
    assert S.rho.evaluate(pt) == gq(2)
    assert metric_matrix(S).evaluate(pt) == [[gq("1/2"), gq(0)], [gq(0), gq("1/16")]]
    assert metric_matrix(S).inertia_at(pt) == (2, 0, 0)
