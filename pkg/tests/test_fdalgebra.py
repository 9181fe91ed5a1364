"""Tests for complete-intersection quotient algebras and their modules.

Oracles: the periodic resolution of k over F_2[x]/(x^2) (hand computed), the
binomial Betti numbers of k over F_2[x_1..x_c]/(x_i^2) (Hilbert function of a
polynomial ring in c variables), and explicit rank computations for the
Carlson kernels.
"""
import random
from math import comb

import pytest

from suppvar.fdalgebra import (
    BadModule,
    CIAlgebra,
    FDModule,
    NotAGroupAlgebra,
    ZeroClass,
    carlson_module,
    decompose_indecomposables,
    direct_sum,
    dual,
    end_ring_is_local,
    find_isomorphism,
    hom_module,
    hom_space_basis,
    is_projective,
    minimal_resolution,
    omega,
    stable_hom_dim,
    syzygy_module,
    tensor_module,
)
from suppvar.linalg import GF


@pytest.fixture
def C2():
    return CIAlgebra(GF(2), [2])


@pytest.fixture
def V4():
    return CIAlgebra(GF(2), [2, 2])


def L_zeta(A, zeta):
    return carlson_module(A, 1, zeta)


def test_algebra_basics(C2, V4):
    assert C2.dim == 2 and V4.dim == 4
    assert C2.group_mode and V4.group_mode
    assert not CIAlgebra(GF(2), [4]).group_mode
    assert not CIAlgebra(GF(3), [2, 2]).group_mode
    with pytest.raises(ValueError):
        CIAlgebra(GF(2), [1])


def test_module_invariants_enforced(V4):
    F = GF(2)
    # non-commuting pair
    a = [[0, 1], [0, 0]]
    b = [[0, 0], [1, 0]]
    with pytest.raises(BadModule):
        FDModule(V4, [a, b])
    # non-nilpotent to the required order
    C4 = CIAlgebra(GF(2), [2])
    with pytest.raises(BadModule):
        FDModule(C4, [[[1, 0], [0, 1]]])


def test_minimal_resolution_c2(C2):
    k = C2.trivial_module()
    res = minimal_resolution(k, 6)
    assert res.betti == [1] * 7
    x = C2.poly_ring.var(0)
    for mat in res.diffs:
        assert mat == [[x]]


def test_minimal_resolution_v4(V4):
    k = V4.trivial_module()
    res = minimal_resolution(k, 8)
    assert res.betti == [n + 1 for n in range(9)]
    # minimality: all entries have zero constant term
    zero_exp = (0, 0)
    for mat in res.diffs:
        for row in mat:
            for p in row:
                assert zero_exp not in p.terms


def test_betti_binomial_rank3():
    E = CIAlgebra(GF(2), [2, 2, 2])
    res = minimal_resolution(E.trivial_module(), 10)
    assert res.betti == [comb(n + 2, 2) for n in range(11)]


def test_resolution_exactness_ranks(V4):
    from suppvar.linalg import kernel_basis, rank

    k = V4.trivial_module()
    res = minimal_resolution(k, 4)
    F = V4.field
    na = V4.dim
    # exactness: rank d_{s+1} = dim ker d_s at inner stages
    mats = [res.diff_k_matrix(s) for s in range(1, 5)]
    assert rank(F, res.cover) == 1
    assert rank(F, mats[0]) == res.betti[0] * na - 1
    for s in range(3):
        assert rank(F, mats[s + 1]) == len(kernel_basis(F, mats[s]))


def test_free_module_resolution(V4):
    res = minimal_resolution(V4.regular_module(), 4)
    assert res.betti == [1, 0, 0, 0, 0]
    assert is_projective(V4.regular_module())
    assert not is_projective(V4.trivial_module())


def test_tensor_unit_and_free(V4):
    k = V4.trivial_module()
    M = L_zeta(V4, [1, 0])
    kM = tensor_module(k, M)
    assert kM.actions == M.actions
    AM = tensor_module(V4.regular_module(), M)
    assert is_projective(AM)
    assert AM.dim == 4 * M.dim
    Lx, Ly = L_zeta(V4, [1, 0]), L_zeta(V4, [0, 1])
    assert tensor_module(Lx, Ly).dim == 4


def test_tensor_requires_group_mode():
    A = CIAlgebra(GF(2), [4])
    M = A.trivial_module()
    with pytest.raises(NotAGroupAlgebra):
        tensor_module(M, M)


def test_hom_and_dual(V4):
    k = V4.trivial_module()
    assert dual(k).actions == k.actions
    M = L_zeta(V4, [1, 0])
    assert hom_module(k, M).actions == M.actions
    DD = dual(dual(M))
    assert DD.dim == M.dim
    assert find_isomorphism(M, DD, seed=0) is not None


def test_hom_tensor_adjunction_dims(V4):
    rng = random.Random(4)
    mods = [
        V4.trivial_module(),
        L_zeta(V4, [1, 0]),
        L_zeta(V4, [1, 1]),
        V4.regular_module(),
    ]
    for _ in range(4):
        M, N, P = (rng.choice(mods) for _ in range(3))
        lhs = len(hom_space_basis(tensor_module(M, N), P))
        rhs = len(hom_space_basis(M, hom_module(N, P)))
        assert lhs == rhs


def test_carlson_modules(V4, C2):
    Lx = L_zeta(V4, [1, 0])
    assert Lx.dim == 2
    assert syzygy_module(V4.trivial_module()).dim == 3
    assert not is_projective(Lx)
    # over kC2 the degree-1 cocycle is an isomorphism on the syzygy
    assert carlson_module(C2, 1, [1]).dim == 0
    with pytest.raises(ZeroClass):
        carlson_module(V4, 1, [0, 0])


def test_stable_hom(C2, V4):
    k2 = C2.trivial_module()
    assert stable_hom_dim(k2, k2) == 1
    assert stable_hom_dim(C2.regular_module(), k2) == 0
    assert stable_hom_dim(k2, C2.regular_module()) == 0
    kv = V4.trivial_module()
    assert stable_hom_dim(V4.regular_module(), kv) == 0
    M = L_zeta(V4, [1, 0])
    assert stable_hom_dim(M, M) >= 1


def test_omega_periodicity_c2(C2):
    k = C2.trivial_module()
    assert omega(k, 1).dim == 1
    assert omega(k, 2).dim == 1
    assert find_isomorphism(omega(k, 2), k, seed=0) is not None


def test_decompose(V4):
    k = V4.trivial_module()
    kk = direct_sum([k, k])
    parts = decompose_indecomposables(kk, seed=0)
    assert [p.dim for p in parts] == [1, 1]
    Lx, Ly = L_zeta(V4, [1, 0]), L_zeta(V4, [0, 1])
    parts = decompose_indecomposables(direct_sum([Lx, Ly]), seed=0)
    assert sorted(p.dim for p in parts) == [2, 2]
    for p in parts:
        assert end_ring_is_local(p, seed=1)
    assert end_ring_is_local(k)
    assert end_ring_is_local(Lx, seed=2)


def test_decompose_invariant_under_dims(V4):
    # sum of dims is always preserved
    rng = random.Random(9)
    Lx = L_zeta(V4, [1, 0])
    M = direct_sum([V4.trivial_module(), Lx, V4.regular_module()])
    parts = decompose_indecomposables(M, seed=3)
    assert sum(p.dim for p in parts) == M.dim
    assert sorted(p.dim for p in parts) == [1, 2, 4]
