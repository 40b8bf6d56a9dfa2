import numpy as np
import pytest
from hypothesis import given, strategies as st

from recollement.utils.linalg import (
    all_subspaces, all_vectors, complement_columns, coordinates, count_subspaces, intersection,
    inverse, is_prime, left_nullspace, mulmod, nullspace, quotient_projection, rank, rref, solve,
)

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 2), min_size= n, max_size= n), min_size= m, max_size= m)))


def test_is_prime():
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(2.0)


def test_rref_is_canonical():
    R, pivots = rref([[0, 2, 4], [0, 1, 2], [1, 1, 1]], 3)
    assert pivots == [0, 1]
    assert np.array_equal(R, [[1, 0, 2], [0, 1, 2]])


@given(matrices)
def test_rref_same_row_space(rows):
    p = 3
    R, pivots = rref(rows, p)
    assert np.array_equal(rref(R, p)[0], R)
    assert coordinates(R, pivots, rows, p) is not None
    assert rank(rows, p) == len(pivots)


@given(matrices)
def test_nullspaces(rows):
    p = 3
    A = np.array(rows, dtype= np.int64)
    N = nullspace(A, p)
    assert not np.any(mulmod(A, N.T, p))
    assert N.shape[0] == A.shape[1] - rank(A, p)
    L = left_nullspace(A, p)
    assert not np.any(mulmod(L, A, p))


def test_solve_and_inverse():
    A = np.array([[1, 1], [0, 1]])
    x = solve(A, [1, 0], 2)
    assert np.array_equal(mulmod(A, x, 2), [1, 0])
    assert solve(np.array([[1, 0], [1, 0]]), [0, 1], 2) is None
    assert np.array_equal(mulmod(A, inverse(A, 2), 2), np.eye(2))
    assert inverse(np.array([[1, 1], [1, 1]]), 2) is None
    assert inverse(np.zeros((0, 0)), 2).shape == (0, 0)


def test_intersection():
    u = np.array([[1, 0, 0], [0, 1, 0]])
    v = np.array([[0, 1, 0], [0, 0, 1]])
    assert np.array_equal(intersection(u, v, 2), [[0, 1, 0]])
    assert intersection(u, np.zeros((0, 3), dtype= np.int64), 2).shape == (0, 3)


def test_quotient_projection_kills_the_subspace():
    R, pivots = rref([[1, 1, 0]], 2)
    P = quotient_projection(R, pivots, 3, 2)
    assert P.shape == (3, 2)
    assert not np.any(mulmod(R, P, 2))
    keep = complement_columns(pivots, 3)
    assert np.array_equal(P[keep], np.eye(2))


def test_enumeration_counts():
    assert all_vectors(0, 2).shape == (1, 0)
    assert all_vectors(3, 2).shape == (8, 3)
    assert count_subspaces(3, 2) == 16
    assert count_subspaces(6, 2) == 2825
    assert sum(1 for _ in all_subspaces(3, 2)) == 16


@pytest.mark.parametrize('n, p', [(2, 3), (3, 2)])
def test_subspaces_are_distinct(n, p):
    seen = {R.tobytes() + bytes(R.shape) for R in all_subspaces(n, p)}
    assert len(seen) == count_subspaces(n, p)
