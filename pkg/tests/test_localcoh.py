"""Multigraded local cohomology tests.

Oracles: monomial counting for components of monomial quotients, closed
formulas for the local cohomology of the polynomial ring (top cohomology
supported in the strictly negative quadrant, codimension-one cohomology in
the mixed quadrant), and a cross-check of H^0 computed by the Cech route
against the torsion submodule computed by colon stabilization.
"""
import pytest

from suppvar.groebner import Ideal, Vec
from suppvar.linalg import GF, QQ
from suppvar.localcoh import (
    BoxTooLarge,
    MultigradedModule,
    cech_strand_dims,
    components_equal,
    fiber_support_membership,
    local_cohomology,
    localization_triangle,
    localized_degree,
    mayer_vietoris_check,
    support_via_fibers,
    torsion_submodule,
)
from suppvar.poly import Ring

BOX = (-4, 4)


@pytest.fixture
def R():
    return Ring(GF(2), ["x", "y"], multigraded=True)


def quotient(R, *gens):
    return MultigradedModule.quotient_by_ideal(Ideal(R, list(gens)))


def test_component_dims_monomial_quotient(R):
    x, y = R.gens()
    M = quotient(R, x * x * y)
    for a in range(-2, 5):
        for b in range(-2, 5):
            want = 1 if (a >= 0 and b >= 0 and not (a >= 2 and b >= 1)) else 0
            assert M.component_dim((a, b)) == want


def test_component_dims_with_shifts(R):
    x, _ = R.gens()
    # R(-2,0) (+) R, modulo (x^2 e_1 - e_2): isomorphic to R via e_1
    col = Vec.from_poly(x * x, rank=2, comp=0).sub(
        Vec.from_poly(R.one(), rank=2, comp=1)
    )
    M = MultigradedModule(R, 2, [col], shifts=[(0, 0), (2, 0)])
    F = MultigradedModule.free(R)
    assert components_equal(M, F, (0, 4))


def test_localized_degree_examples(R):
    x, y = R.gens()
    F = MultigradedModule.free(R)
    assert localized_degree(F, x, (-3, 2)) == 1
    assert localized_degree(F, x, (-3, -1)) == 0
    assert localized_degree(F, x * y, (-3, -5)) == 1
    Mx = quotient(R, x)
    assert localized_degree(Mx, x, (0, 2)) == 0
    assert localized_degree(Mx, y, (0, -3)) == 1
    assert localized_degree(Mx, y, (1, -3)) == 0


def test_local_cohomology_of_ring_full_ideal(R):
    x, y = R.gens()
    F = MultigradedModule.free(R)
    rep = local_cohomology(F, Ideal(R, [x, y]), BOX)
    assert rep.total(0) == 0 and rep.total(1) == 0
    for a in range(BOX[0], BOX[1] + 1):
        for b in range(BOX[0], BOX[1] + 1):
            want = 1 if (a <= -1 and b <= -1) else 0
            assert rep.dim(2, (a, b)) == want


def test_local_cohomology_of_ring_principal(R):
    x, _ = R.gens()
    F = MultigradedModule.free(R)
    rep = local_cohomology(F, Ideal(R, [x]), BOX)
    assert rep.total(0) == 0
    for a in range(BOX[0], BOX[1] + 1):
        for b in range(BOX[0], BOX[1] + 1):
            want = 1 if (a <= -1 and b >= 0) else 0
            assert rep.dim(1, (a, b)) == want


def test_local_cohomology_torsion_module(R):
    x, _ = R.gens()
    Mx = quotient(R, x)
    rep = local_cohomology(Mx, Ideal(R, [x]), BOX)
    assert rep.total(1) == 0 and rep.total(2) == 0
    for a in range(BOX[0], BOX[1] + 1):
        for b in range(BOX[0], BOX[1] + 1):
            assert rep.dim(0, (a, b)) == Mx.component_dim((a, b))


def test_local_cohomology_unit_ideal(R):
    F = MultigradedModule.free(R)
    rep = local_cohomology(F, Ideal(R, [R.one()]), (-2, 2))
    assert all(rep.total(i) == 0 for i in range(0, 3))


def test_h0_matches_torsion_submodule(R):
    x, y = R.gens()
    for M in [quotient(R, x * x), quotient(R, x * y), quotient(R, x * x * y, y * y)]:
        for a in [Ideal(R, [x]), Ideal(R, [x, y]), Ideal(R, [x * y])]:
            rep = local_cohomology(M, a, (-2, 3))
            G = torsion_submodule(M, a)
            for s in range(-2, 4):
                for t in range(-2, 4):
                    assert rep.dim(0, (s, t)) == G.component_dim((s, t))


def test_torsion_submodule_examples(R):
    x, y = R.gens()
    M = quotient(R, x * x)
    G = torsion_submodule(M, Ideal(R, [x]))
    assert components_equal(G, M, BOX)
    F = MultigradedModule.free(R)
    Z = torsion_submodule(F, Ideal(R, [x]))
    assert components_equal(Z, MultigradedModule.zero(R), BOX)
    assert components_equal(
        torsion_submodule(M, Ideal(R, [R.one()])), MultigradedModule.zero(R), BOX
    )
    # Gamma_(x)(R/(xy)) = (y)/(xy): one dimension at x-degree 0, y-degree >= 1
    G = torsion_submodule(quotient(R, x * y), Ideal(R, [x]))
    for a in range(-2, 4):
        for b in range(-2, 4):
            want = 1 if (a == 0 and b >= 1) else 0
            assert G.component_dim((a, b)) == want


def test_fiber_support_membership(R):
    x, _ = R.gens()
    Mx = quotient(R, x)
    assert support_via_fibers(Mx, BOX) == [(0,), (0, 1)]
    F = MultigradedModule.free(R)
    assert support_via_fibers(F, BOX) == [(), (0,), (1,), (0, 1)]
    assert support_via_fibers(MultigradedModule.zero(R), BOX) == []
    assert fiber_support_membership(Mx, [0], BOX)
    assert not fiber_support_membership(Mx, [], BOX)


def test_localization_triangle(R):
    x, y = R.gens()
    F = MultigradedModule.free(R)
    for a in [Ideal(R, [x]), Ideal(R, [x, y]), Ideal(R, [x * y])]:
        for M in [F, quotient(R, x), quotient(R, x * y)]:
            rep = localization_triangle(M, a, BOX)
            assert rep.ok, (a, rep.table, rep.checks)
    # spot check the table itself: X = R, a = (x)
    rep = localization_triangle(F, Ideal(R, [x]), BOX)
    assert rep.table[(0,)] == {"gamma": True, "x": True, "ell": False}
    assert rep.table[(1,)] == {"gamma": False, "x": True, "ell": True}
    assert rep.table[()] == {"gamma": False, "x": True, "ell": True}
    # small support of the punctured part avoids V(a) entirely
    assert rep.table[(0, 1)] == {"gamma": True, "x": True, "ell": False}


def test_mayer_vietoris(R):
    x, y = R.gens()
    a, b = Ideal(R, [x]), Ideal(R, [y])
    assert mayer_vietoris_check(MultigradedModule.free(R), a, b, BOX)
    assert mayer_vietoris_check(quotient(R, x), a, b, BOX)


def test_cech_ell_piece_degrees(R):
    # punctured-part cohomology of R for a = (x, y): H^1 in degrees b <= -1
    # of the inverted variable, matching the shifted top local cohomology
    x, y = R.gens()
    F = MultigradedModule.free(R)
    h = cech_strand_dims(F, [[(1, 0), (0, 1)]], (-1, -1), omit_empty_first=True)
    assert h == {1: 1}
    h = cech_strand_dims(F, [[(1, 0), (0, 1)]], (0, -1), omit_empty_first=True)
    assert h == {}


def test_box_cap(R):
    F = MultigradedModule.free(R)
    with pytest.raises(BoxTooLarge):
        local_cohomology(F, Ideal(R, R.gens()), (-500, 500))


def test_char_zero_agrees(R):
    # the monomial answers are characteristic independent
    Rq = Ring(QQ, ["x", "y"], multigraded=True)
    xq, yq = Rq.gens()
    F = MultigradedModule.free(Rq)
    rep = local_cohomology(F, Ideal(Rq, [xq, yq]), (-3, 3))
    assert rep.total(2) == 9 and rep.total(0) == 0 and rep.total(1) == 0
