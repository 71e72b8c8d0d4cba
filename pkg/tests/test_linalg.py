import itertools
import random

import pytest

from hsslab.errors import DimensionMismatch, DuplicatePoint, ModulusMismatch, Singular
from hsslab.field import PrimeField
from hsslab.linalg import Matrix, mat_inverse, mat_mul, mat_vec, power_matrix, solve

F5, F7, F3 = PrimeField(5), PrimeField(7), PrimeField(3)


def test_mat_mul_examples():
    B = Matrix(F5, [[1, 2], [3, 4]])
    assert mat_mul(Matrix.identity(F5, 2), B) == B
    assert mat_mul(B, Matrix.identity(F5, 2)) == B
    A = Matrix(F5, [[1, 2], [1, 4]])
    assert mat_mul(A, Matrix(F5, [[2], [2]])) == Matrix(F5, [[1], [0]])


def test_mat_mul_errors():
    with pytest.raises(DimensionMismatch):
        mat_mul(Matrix(F5, [[1, 2]]), Matrix(F5, [[1, 2]]))
    with pytest.raises(ModulusMismatch):
        mat_mul(Matrix(F5, [[1]]), Matrix(F7, [[1]]))


def test_inverse_examples():
    assert mat_inverse(Matrix.identity(F7, 3)) == Matrix.identity(F7, 3)
    assert mat_inverse(Matrix(F7, [[2]])) == Matrix(F7, [[4]])
    assert mat_inverse(Matrix(F5, [[1, 1], [0, 1]])) == Matrix(F5, [[1, 4], [0, 1]])


def test_singular():
    with pytest.raises(Singular):
        mat_inverse(Matrix(F5, [[1, 2], [2, 4]]))
    with pytest.raises(Singular):
        solve(Matrix(F7, [[0, 0], [0, 1]]), [1, 1])
    assert not Matrix(F5, [[1, 2], [2, 4]]).is_invertible()


def test_solve_examples():
    I = Matrix.identity(F7, 3)
    assert solve(I, [4, 5, 6]) == (4, 5, 6)
    assert solve(Matrix(F5, [[1, 2], [1, 4]]), [1, 0]) == (2, 2)
    assert solve(Matrix(F3, [[1, 2], [1, 1]]), [0, 0]) == (0, 0)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_inverse_property(p):
    F = PrimeField(p)
    rng = random.Random(p)
    for _ in range(500):
        n = rng.randint(1, 5)
        A = Matrix.random_invertible(F, n, rng)
        assert mat_mul(mat_inverse(A), A) == Matrix.identity(F, n)
        assert mat_mul(A, mat_inverse(A)) == Matrix.identity(F, n)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_solve_roundtrip(p):
    F = PrimeField(p)
    rng = random.Random(100 + p)
    for _ in range(200):
        n = rng.randint(1, 5)
        A = Matrix.random_invertible(F, n, rng)
        x = tuple(rng.randrange(p) for _ in range(n))
        assert solve(A, mat_vec(A, x)) == x


def test_power_matrix_examples():
    assert power_matrix(F5, [1], 0, 0) == Matrix(F5, [[1]])
    assert power_matrix(F5, [1, 2], 1, 2) == Matrix(F5, [[1, 2], [1, 4]])
    assert power_matrix(F7, [1, 2, 3], 1, 3) == Matrix(F7, [[1, 2, 3], [1, 4, 2], [1, 1, 6]])


def test_power_matrix_errors():
    with pytest.raises(DimensionMismatch):
        power_matrix(F7, [1, 2], 0, 2)
    with pytest.raises(DuplicatePoint):
        power_matrix(F3, [1, 4], 0, 1)
    with pytest.raises(DuplicatePoint):
        power_matrix(F3, [1, 3], 0, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_power_matrix_always_invertible(p):
    F = PrimeField(p)
    for size in range(1, 5):
        for pts in itertools.combinations(range(1, p), size):
            for lo in range(4):
                assert power_matrix(F, pts, lo, lo + size - 1).is_invertible()
