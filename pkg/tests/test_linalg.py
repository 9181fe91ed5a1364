import random

import pytest

from suppvar.linalg import (
    GF,
    QQ,
    DivisionByZero,
    Field,
    identity,
    kernel_basis,
    mat_mul,
    mat_vec,
    rank,
    rref,
    solve,
    transpose,
)


def test_field_validation():
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field((1 << 31) + 11)
    assert GF(7).char == 7
    assert QQ.char == 0


def test_inverses():
    F7 = GF(7)
    assert F7.inv(3) == 5
    assert QQ.inv(1) == 1
    from fractions import Fraction

    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(DivisionByZero):
        F7.inv(0)


def test_inv_involution():
    F5 = GF(5)
    for a in range(1, 5):
        assert F5.inv(F5.inv(a)) == a


def test_rref_examples():
    red, rk, piv = rref(QQ, [[QQ.of(1), QQ.of(2)], [QQ.of(2), QQ.of(4)]])
    assert rk == 1 and piv == [0]

    ident = identity(2, QQ)
    red, rk, piv = rref(QQ, ident)
    assert red == ident and rk == 2

    F2 = GF(2)
    red, rk, piv = rref(F2, [[1, 1], [1, 1]])
    assert rk == 1

    # idempotence
    red2, rk2, piv2 = rref(QQ, red)
    assert red2 == red


def test_kernel_examples():
    F2 = GF(2)
    ker = kernel_basis(F2, [[1, 1], [1, 1]])
    assert ker == [[1, 1]]

    assert kernel_basis(QQ, identity(3, QQ)) == []

    z = [[QQ.zero] * 3, [QQ.zero] * 3]
    ker = kernel_basis(QQ, z)
    assert len(ker) == 3
    for i, v in enumerate(ker):
        assert v[i] == 1


def test_solve_examples():
    assert solve(QQ, identity(2, QQ), [QQ.of(1), QQ.of(0)]) == [1, 0]
    F2 = GF(2)
    assert solve(F2, [[1, 1]], [1]) == [1, 0]
    assert solve(F2, [[0, 0]], [1]) is None


def test_random_rank_transpose_and_kernel():
    rng = random.Random(0)
    F5 = GF(5)
    for _ in range(40):
        rows = rng.randint(1, 12)
        cols = rng.randint(1, 12)
        m = [[rng.randrange(5) for _ in range(cols)] for _ in range(rows)]
        assert rank(F5, m) == rank(F5, transpose(m))
        for v in kernel_basis(F5, m):
            assert all(x == 0 for x in mat_vec(F5, m, v))


def test_solve_consistency_random():
    rng = random.Random(1)
    F7 = GF(7)
    for _ in range(30):
        rows, cols = rng.randint(1, 8), rng.randint(1, 8)
        m = [[rng.randrange(7) for _ in range(cols)] for _ in range(rows)]
        x = [rng.randrange(7) for _ in range(cols)]
        b = mat_vec(F7, m, x)
        x2 = solve(F7, m, b)
        assert x2 is not None
        assert mat_vec(F7, m, x2) == b


def test_mat_mul_shapes():
    F3 = GF(3)
    a = [[1, 2], [0, 1], [2, 2]]
    b = [[1, 0, 1], [2, 1, 0]]
    assert mat_mul(F3, a, b) == [
        [(1 + 4) % 3, 2 % 3, 1],
        [2, 1, 0],
        [(2 + 4) % 3, 2, 2],
    ]
