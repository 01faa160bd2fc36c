import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassconf.errors import InconsistentSystemError
from grassconf.linalg import (
    GaussianRational,
    Matrix,
    gq,
    invert,
    kernel,
    matrix_from_json,
    matrix_to_json,
    rank,
    rref,
    solve,
)
from oracles import minor_rank, rand_matrix, rand_rank_deficient

fractions_st = st.fractions(
    min_value=-5, max_value=5, max_denominator=7
)
scalars_st = st.builds(GaussianRational, fractions_st, fractions_st)


@given(scalars_st, scalars_st, scalars_st)
@settings(max_examples=200, deadline=None)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if not b.is_zero():
        assert (a / b) * b == a


@given(scalars_st, scalars_st)
@settings(max_examples=200, deadline=None)
def test_conjugation_is_a_ring_map(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


def test_rref_identity():
    eye = Matrix.identity(3)
    reduced, rk, pivots = rref(eye)
    assert reduced == eye
    assert rk == 3
    assert pivots == (0, 1, 2)


def test_rref_zero():
    z = Matrix.zeros(2, 4)
    reduced, rk, pivots = rref(z)
    assert reduced == z
    assert rk == 0
    assert pivots == ()


def test_rref_rank_matches_minor_oracle():
    agree = 0
    for seed in range(200):
        rng = random.Random(seed)
        if seed % 3 == 0:
            m = rand_rank_deficient(4, 6, rng.randint(1, 3), rng)
        else:
            m = rand_matrix(4, 6, rng, sparse=0.3)
        assert rank(m) == minor_rank(m), f"seed {seed}"
        agree += 1
    assert agree == 200


def test_rref_idempotent_and_pivots_increasing():
    for seed in range(100):
        rng = random.Random(1000 + seed)
        m = rand_matrix(rng.randint(1, 5), rng.randint(1, 6), rng, sparse=0.4)
        reduced, rk, pivots = rref(m)
        assert list(pivots) == sorted(pivots)
        assert rref(reduced) == (reduced, rk, pivots)


def test_rank_of_conjugate_transpose():
    for seed in range(50):
        rng = random.Random(2000 + seed)
        m = rand_matrix(3, 5, rng, sparse=0.3)
        assert rank(m) == rank(m.conjugate_transpose())


def test_kernel_identity_is_empty():
    assert kernel(Matrix.identity(4)).rows == 0


def test_kernel_of_zero_is_everything():
    k = kernel(Matrix.zeros(2, 3))
    assert k.rows == 3
    assert rank(k) == 3


def test_kernel_rank_two_case():
    rng = random.Random(5)
    m = rand_rank_deficient(3, 5, 2, rng)
    assert rank(m) == 2
    k = kernel(m)
    assert k.rows == 3
    product = m @ k.transpose()
    assert product.is_zero()


def test_rank_nullity_randomized():
    for seed in range(100):
        rng = random.Random(3000 + seed)
        m = rand_matrix(rng.randint(1, 5), rng.randint(1, 6), rng, sparse=0.4)
        k = kernel(m)
        assert rank(m) + k.rows == m.cols
        if k.rows:
            assert (m @ k.transpose()).is_zero()
            assert rank(k) == k.rows


def test_solve_identity_returns_rhs():
    b = Matrix.from_rows([[gq(1, 2)], [gq(-3)], [gq(0, Fraction(1, 5))]])
    assert solve(Matrix.identity(3), b) == b


def test_solve_invertible_exact_residual():
    for seed in range(30):
        rng = random.Random(4000 + seed)
        a = rand_matrix(3, 3, rng)
        if rank(a) < 3:
            continue
        b = rand_matrix(3, 2, rng)
        x = solve(a, b)
        assert a @ x == b


def test_solve_inconsistent():
    a = Matrix.zeros(2, 2)
    b = Matrix.from_rows([[gq(1)], [gq(0)]])
    with pytest.raises(InconsistentSystemError):
        solve(a, b)


def test_solve_underdetermined_consistent():
    a = Matrix.from_rows([[1, 1, 0], [0, 0, 1]])
    b = Matrix.from_rows([[gq(2)], [gq(5)]])
    x = solve(a, b)
    assert a @ x == b


def test_invert_round_trip():
    rng = random.Random(77)
    while True:
        a = rand_matrix(4, 4, rng)
        if rank(a) == 4:
            break
    assert a @ invert(a) == Matrix.identity(4)
    assert invert(a) @ a == Matrix.identity(4)


def test_invert_singular_raises():
    with pytest.raises(InconsistentSystemError):
        invert(Matrix.zeros(2, 2))


def test_matrix_json_round_trip():
    rng = random.Random(99)
    m = rand_matrix(3, 4, rng, sparse=0.2)
    data = matrix_to_json(m)
    assert data["rows"] == 3 and data["cols"] == 4
    assert all(isinstance(part, str) for quad in data["entries"] for part in quad)
    assert matrix_from_json(data) == m


def test_matrix_json_big_integers_survive():
    huge = Fraction(10 ** 40 + 1, 10 ** 39 + 7)
    m = Matrix.from_rows([[GaussianRational(huge, -huge)]])
    assert matrix_from_json(matrix_to_json(m)) == m


def test_matmul_shapes_and_empty():
    a = Matrix.zeros(2, 0)
    b = Matrix.zeros(0, 3)
    assert (a @ b) == Matrix.zeros(2, 3)
