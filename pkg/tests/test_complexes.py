"""Chain complex layer tests.

Oracles: strand dimensions of Koszul cohomology for coprime monomial
sequences are checked against direct monomial counting in the quotient ring,
independent of the syzygy/strand machinery being tested.
"""
import random
from itertools import product

import pytest

from suppvar.complexes import (
    ChainComplex,
    ChainMap,
    GradedFreeModule,
    NotAChainMap,
    NotHomogeneous,
    cohomology,
    cohomology_annihilator,
    cone,
    free_resolution_complex,
    graded_cohomology_dims,
    koszul_complex,
    koszul_les_check,
    koszul_object,
    koszul_tower,
    multiplication_map,
    resolve_quotient,
    shift,
    strand_cohomology_dim,
    tensor_complex,
)
from suppvar.groebner import Ideal, Vec
from suppvar.linalg import GF, QQ
from suppvar.poly import Ring


BOX = (-8, 8)


def total_dims(X, box=BOX):
    return graded_cohomology_dims(X, box)


def test_invalid_complexes_rejected():
    R = Ring(QQ, ["x"])
    x = R.gens()[0]
    F = GradedFreeModule(R, (0,))
    G = GradedFreeModule(R, (-1,))
    # d o d != 0
    with pytest.raises(ValueError):
        ChainComplex(
            R,
            {0: F, 1: G, 2: GradedFreeModule(R, (-2,))},
            {0: [[x]], 1: [[x]]},
        )
    # non-homogeneous entry for the declared shifts
    with pytest.raises(NotHomogeneous):
        ChainComplex(R, {0: F, 1: F}, {0: [[x]]})


def test_cone_of_identity_is_acyclic():
    R = Ring(QQ, ["x"])
    X = ChainComplex.single(R)
    f = ChainMap(X, X, {0: [[R.one()]]})
    C = cone(f)
    assert total_dims(C) == {}


def test_cone_of_zero_map_is_shift():
    R = Ring(QQ, ["x"])
    x = R.gens()[0]
    X = koszul_complex(R, [x])  # something with two degrees
    zero_target = ChainComplex(R, {}, {})
    C = cone(ChainMap(X, zero_target, {}))
    S = shift(X, 1)
    assert total_dims(C) == total_dims(S)
    # and H^i(shift(X, 1)) = H^{i+1}(X)
    for (n, t), d in total_dims(X).items():
        assert total_dims(S).get((n - 1, t)) == d


def test_cone_of_multiplication_by_x():
    R = Ring(QQ, ["x"])
    x = R.gens()[0]
    K = koszul_object(ChainComplex.single(R), x)
    assert strand_cohomology_dim(K, 0, 0) == 0
    h1 = cohomology(K, 1)
    assert h1.annihilator().equals(Ideal(R, [x]))
    # H^1 is one copy of R/(x), concentrated in a single internal degree
    dims = total_dims(K)
    assert set(n for (n, _t) in dims) == {1}
    assert sum(dims.values()) == 1


def test_non_chain_map_rejected():
    R = Ring(QQ, ["x"])
    x = R.gens()[0]
    X = koszul_complex(R, [x])
    # identity in degree 0 but zero in degree 1 fails to commute with d
    bad = {0: [[R.one()]], 1: [[R.zero()]]}
    with pytest.raises(NotAChainMap):
        ChainMap(X, shift(X, 0), bad)
    # but r . id is always a chain map
    multiplication_map(X, x * x)


def test_koszul_by_unit_is_acyclic():
    R = Ring(QQ, ["x", "y"])
    x, _ = R.gens()
    X = koszul_complex(R, [x])
    K = koszul_object(X, R.one())
    assert total_dims(K) == {}


def test_koszul_complex_of_regular_sequence():
    R = Ring(QQ, ["x", "y"])
    x, y = R.gens()
    K = koszul_complex(R, [x, y])
    dims = total_dims(K)
    # only the top cohomology survives and it is k = R/(x, y)
    assert set(n for (n, _t) in dims) == {2}
    assert sum(dims.values()) == 1
    assert cohomology(K, 2).annihilator().equals(Ideal(R, [x, y]))
    assert cohomology(K, 0).is_zero_presentation()
    assert cohomology(K, 1).is_zero_presentation()


def test_tensor_of_koszul_objects_matches_iterated():
    R = Ring(GF(2), ["x", "y"])
    x, y = R.gens()
    K1 = koszul_complex(R, [x])
    K2 = koszul_complex(R, [y])
    T = tensor_complex(K1, K2)
    K = koszul_complex(R, [x, y])
    assert total_dims(T) == total_dims(K)
    for n in range(0, 3):
        assert T.module(n).shifts == K.module(n).shifts


def test_koszul_annihilation_square():
    # r^2 kills the cohomology of X//r
    R = Ring(QQ, ["x", "y"])
    x, y = R.gens()
    X = resolve_quotient(Ideal(R, [x * x]))
    r = y
    K = koszul_object(X, r)
    for n in range(K.lo, K.hi + 1):
        h = cohomology(K, n)
        if h.generators:
            assert h.annihilator().contains(r * r)


def test_koszul_les_bookkeeping():
    R = Ring(QQ, ["x", "y"])
    x, y = R.gens()
    X = koszul_complex(R, [x])
    assert koszul_les_check(X, y, BOX)
    assert koszul_les_check(X, x, BOX)
    assert koszul_les_check(X, x + y, BOX)
    Y = resolve_quotient(Ideal(R, [x * x, x * y]))
    assert koszul_les_check(Y, y, (-8, 8))


def _quotient_strand_dim(ring, monos, t):
    """Count degree-t monomials outside the monomial ideal (monos)."""
    count = 0
    for e in ring.monomials_of_degree(t):
        if not any(all(a >= b for a, b in zip(e, m)) for m in monos):
            count += 1
    return count


def test_koszul_tower_against_monomial_counting():
    rng = random.Random(2)
    R = Ring(GF(3), ["x", "y", "z"])
    gens = R.gens()
    for _ in range(4):
        exps = [rng.randint(1, 2) for _ in range(3)]
        seq = [g ** e for g, e in zip(gens, exps)]
        K = koszul_complex(R, seq)
        dims = total_dims(K, (-10, 6))
        # regular sequence: cohomology concentrated at the top
        assert set(n for (n, _t) in dims) == {3}
        monos = [tuple(e if i == j else 0 for i in range(3)) for j, e in enumerate(exps)]
        shift_t = sum(exps)
        for t in range(0, 4):
            want = _quotient_strand_dim(R, monos, t)
            assert dims.get((3, t - shift_t), 0) == want


def test_free_resolution_of_monomial_ideal():
    R = Ring(QQ, ["x", "y"])
    x, y = R.gens()
    I = Ideal(R, [x * x, x * y])
    X = resolve_quotient(I)
    assert X.lo == -2 and X.hi == 0
    dims = total_dims(X, (0, 5))
    assert set(n for (n, _t) in dims) == {0}
    for t in range(0, 6):
        monos = [(2, 0), (1, 1)]
        assert dims.get((0, t), 0) == _quotient_strand_dim(R, monos, t)
    h0 = cohomology(X, 0)
    assert h0.annihilator().equals(I)
    assert cohomology_annihilator(X).equals(I)


def test_free_resolution_rejects_inhomogeneous():
    R = Ring(QQ, ["x", "y"])
    x, y = R.gens()
    with pytest.raises(NotHomogeneous):
        free_resolution_complex([Vec.from_poly(x + R.one())], R)


def test_tower_stages_count():
    R = Ring(QQ, ["x", "y"])
    x, y = R.gens()
    stages = koszul_tower(ChainComplex.single(R), [x, y])
    assert len(stages) == 3
    assert stages[0].rank(0) == 1
    assert stages[2].rank(1) == 2
