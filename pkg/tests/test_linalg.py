import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quiverkit.catalog import kronecker
from quiverkit.dimvec import coxeter_matrix
from quiverkit.errors import InvalidField, ShapeMismatch, SingularMatrix
from quiverkit.linalg import (
    GF,
    QQ,
    ExactMatrix,
    cokernel_dim,
    echelon,
    is_prime,
    kernel_basis,
    left_kernel_basis,
    mat_inverse,
    mat_mul,
    mat_power,
    mat_transpose,
    nullity,
    rank,
)
from quiverkit.quiver import Quiver, euler_matrix


def _random_matrix(rng, field, max_dim=8, entries=range(-3, 4)):
    m, n = rng.randint(0, max_dim), rng.randint(0, max_dim)
    rows = [[rng.choice(entries) for _ in range(n)] for _ in range(m)]
    return ExactMatrix(rows, field, shape=(m, n))


def test_identity():
    I = ExactMatrix.identity(3)
    assert rank(I) == 3
    assert kernel_basis(I) == []
    assert cokernel_dim(I) == 0


def test_zero_matrix():
    Z = ExactMatrix.zeros(2, 3)
    assert rank(Z) == 0
    assert nullity(Z) == 3
    assert cokernel_dim(Z) == 2


def test_rank_one_mod_five():
    A = ExactMatrix([[1, 2], [2, 4]], GF(5))
    assert rank(A) == 1
    assert nullity(A) == 1
    assert cokernel_dim(A) == 1
    (k,) = kernel_basis(A)
    assert A.apply(k) == [0, 0]


def test_empty_shapes():
    for shape in [(0, 0), (0, 4), (4, 0)]:
        A = ExactMatrix.zeros(*shape, GF(5))
        assert rank(A) == 0
        assert nullity(A) == shape[1]
        assert cokernel_dim(A) == shape[0]
        assert len(kernel_basis(A)) == shape[1]


def test_prime_validation():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    for bad in (0, 1, 4, 9, 91):
        with pytest.raises(InvalidField):
            GF(bad)


def test_residues_are_canonical():
    A = ExactMatrix([[-1, 7], [12, -13]], GF(5))
    assert A.tolist() == [[4, 2], [2, 2]]


@pytest.mark.parametrize("field", [QQ, GF(5)], ids=["QQ", "GF5"])
def test_random_rank_properties(field):
    rng = random.Random(42)
    for _ in range(500):
        A = _random_matrix(rng, field)
        r = rank(A)
        assert r <= min(A.shape)
        assert r == rank(mat_transpose(A))
        basis = kernel_basis(A)
        assert r + len(basis) == A.cols
        for k in basis:
            assert all(v == 0 for v in A.apply(k))
        for w in left_kernel_basis(A):
            assert all(v == 0 for v in mat_transpose(A).apply(w))
        assert cokernel_dim(A) == A.rows - r


def test_large_prime_uses_exact_integers():
    p = 2**61 - 1
    A = ExactMatrix([[p - 1, 2], [3, p - 5]], GF(p))
    assert A.array.dtype == object
    assert rank(A) == 2
    B = ExactMatrix([[1, 2], [2, 4]], GF(p))
    assert rank(B) == 1


def _rank_oracle(rows, p):
    """Plain Python elimination mod p."""
    rows = [[v % p for v in r] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        k = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


@pytest.mark.parametrize("p", [2, 5, 1031, 2**31 - 1])
def test_rank_matches_plain_elimination(p):
    rng = random.Random(p)
    for _ in range(100):
        m, n = rng.randint(0, 7), rng.randint(0, 7)
        # low-rank products make dependent rows common
        k = rng.randint(0, 4)
        left = [[rng.randrange(p) for _ in range(k)] for _ in range(m)]
        right = [[rng.randrange(p) for _ in range(n)] for _ in range(k)]
        rows = [[sum(a * b for a, b in zip(row, col)) % p for col in zip(*right)] if k else [0] * n for row in left]
        A = ExactMatrix(rows, GF(p), shape=(m, n))
        assert rank(A) == _rank_oracle(rows, p)
        for v in kernel_basis(A):
            assert all(c == 0 for c in A.apply(v))


def test_echelon_is_reduced():
    A = ExactMatrix([[2, 4, 1], [1, 2, 3], [0, 0, 1]], QQ)
    R, pivots = echelon(A)
    assert pivots == [0, 2]
    assert R.tolist()[0] == [1, 2, 0]


def test_no_overflow_with_huge_rationals():
    big = 10**12
    A = ExactMatrix([[big, big + 1, 3], [big + 7, big - 1, 5], [1, 2, big]], QQ)
    inv = mat_inverse(A)
    assert mat_mul(A, inv) == ExactMatrix.identity(3)
    B = ExactMatrix([[big, 2 * big], [3 * big, 6 * big]], QQ)
    assert rank(B) == 1
    assert all(isinstance(v, Fraction) for row in inv.tolist() for v in row)


def test_power_zero_is_identity():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(0, 5)
        A = ExactMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], QQ, shape=(n, n))
        assert mat_power(A, 0) == ExactMatrix.identity(n)


def test_euler_matrix_of_a2_is_invertible():
    E = euler_matrix(Quiver(2, [("a", 1, 2)]))
    inv = mat_inverse(E)
    assert inv.int_rows() == [[1, 1], [0, 1]]


def test_singular_inverse():
    with pytest.raises(SingularMatrix):
        mat_inverse(ExactMatrix([[1, 2], [2, 4]], QQ))
    with pytest.raises(SingularMatrix):
        mat_power(ExactMatrix([[0, 0], [0, 1]], QQ), -1)


def test_shape_errors():
    A = ExactMatrix([[1, 2, 3]], QQ)
    with pytest.raises(ShapeMismatch):
        mat_mul(A, A)
    with pytest.raises(ShapeMismatch):
        mat_inverse(A)
    with pytest.raises(ShapeMismatch):
        mat_power(A, 2)
    with pytest.raises(ShapeMismatch):
        ExactMatrix([[1, 2], [3]], QQ)


def test_kronecker_coxeter_powers_stay_nonnegative_on_null_root():
    phi = coxeter_matrix(kronecker(2))
    for t in range(-10, 11):
        v = mat_power(phi, t).apply([1, 1])
        assert all(c >= 0 for c in v)


def _unimodular(rng, n):
    """Random integer matrix with determinant +-1, built from elementary operations."""
    A = np.eye(n, dtype=object)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            A[i] = A[i] + rng.randint(-2, 2) * A[j]
    return ExactMatrix(A.tolist(), QQ, shape=(n, n))


@given(st.integers(0, 10_000), st.integers(-3, 3), st.integers(-3, 3))
def test_power_law(seed, s, t):
    rng = random.Random(seed)
    A = _unimodular(rng, rng.randint(1, 4))
    assert mat_power(A, s + t) == mat_mul(mat_power(A, s), mat_power(A, t))


@given(st.integers(0, 10_000))
def test_power_law_mod_p(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    while True:
        A = ExactMatrix([[rng.randrange(7) for _ in range(n)] for _ in range(n)], GF(7))
        if rank(A) == n:
            break
    for s in range(-3, 4):
        for t in range(-3, 4):
            assert mat_power(A, s + t) == mat_mul(mat_power(A, s), mat_power(A, t))


def test_matrix_is_immutable():
    A = ExactMatrix([[1, 2]], QQ)
    with pytest.raises(ValueError):
        A.array[0, 0] = 5
