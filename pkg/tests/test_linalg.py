import pytest

from hypothesis import given, strategies as st

from gptcast.rationals import ONE, ZERO, rat
from gptcast.linalg import (
    column_space_basis,
    dot,
    identity,
    independent_rows,
    invert,
    kron_mat,
    kron_vec,
    mat,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    rref,
    solve,
    transpose,
    vec,
    vec_mat,
)

small_entry = st.integers(min_value=-5, max_value=5)


def small_matrix(max_dim=4):
    return st.integers(min_value=1, max_value=max_dim).flatmap(
        lambda nc: st.lists(
            st.lists(small_entry, min_size=nc, max_size=nc), min_size=1, max_size=max_dim
        )
    )


def test_dot_and_mismatch():
    assert dot(vec([1, 2]), vec([3, 4])) == 11
    with pytest.raises(ValueError):
        dot(vec([1]), vec([1, 2]))


def test_mat_vec_and_vec_mat():
    m = mat([[1, 2], [3, 4]])
    assert mat_vec(m, vec([1, 0])) == (1, 3)
    assert vec_mat(vec([1, 0]), m) == (1, 2)


def test_rref_pivots():
    m = mat([[0, 2, 4], [1, 1, 1]])
    red, pivots = rref(m)
    assert pivots == (0, 1)
    assert red[0][0] == 1 and red[1][1] == 1


def test_rank():
    assert rank(mat([[1, 2], [2, 4]])) == 1
    assert rank(identity(3)) == 3


def test_nullspace_annihilates():
    m = mat([[1, 1, 1], [1, 2, 3]])
    basis = nullspace(m)
    assert len(basis) == 1
    assert mat_vec(m, basis[0]) == (0, 0)


def test_nullspace_empty_matrix():
    assert nullspace((), 2) == identity(2)


def test_solve_consistent_and_inconsistent():
    m = mat([[1, 1], [1, -1]])
    x = solve(m, vec([3, 1]))
    assert x == (2, 1)
    assert solve(mat([[1, 1], [1, 1]]), vec([0, 1])) is None


def test_solve_underdetermined_free_vars_zero():
    x = solve(mat([[1, 1]]), vec([5]))
    assert x == (5, 0)


def test_invert():
    m = mat([[2, 1], [1, 1]])
    assert mat_mul(m, invert(m)) == identity(2)
    with pytest.raises(ValueError):
        invert(mat([[1, 1], [2, 2]]))


def test_independent_rows_greedy_order():
    rows = mat([[1, 0], [2, 0], [0, 1]])
    assert independent_rows(rows) == [0, 2]
    assert independent_rows(rows, need=1) == [0]


def test_column_space_basis():
    m = mat([[1, 2, 0], [2, 4, 1]])
    basis = column_space_basis(m)
    assert basis == ((1, 2), (0, 1))


def test_kron_vec_order():
    # a-slot major: index 3*i + j for 3-vectors
    a, b = vec([1, 2]), vec([10, 20, 30])
    assert kron_vec(a, b) == (10, 20, 30, 20, 40, 60)


def test_kron_mat_acts_as_tensor():
    p = mat([[0, 1], [1, 0]])
    q = identity(2)
    k = kron_mat(p, q)
    x = kron_vec(vec([1, 0]), vec([3, 4]))
    assert mat_vec(k, x) == kron_vec(mat_vec(p, vec([1, 0])), mat_vec(q, vec([3, 4])))


@given(small_matrix())
def test_rank_nullity(rows):
    m = mat(rows)
    assert rank(m) + len(nullspace(m)) == len(m[0])


@given(small_matrix())
def test_nullspace_vectors_annihilate(rows):
    m = mat(rows)
    for v in nullspace(m):
        assert mat_vec(m, v) == (ZERO,) * len(m)


@given(small_matrix(3), st.lists(small_entry, min_size=3, max_size=3))
def test_solve_verifies_by_substitution(rows, target):
    m = mat(rows)
    b = vec(target[: len(m)])
    x = solve(m, b)
    if x is not None:
        assert mat_vec(m, x) == b
