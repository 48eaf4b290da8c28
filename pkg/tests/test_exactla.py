from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from derham.exactla import (Echelon, NoSolution, RationalMatrix, Solver, quotient_space, rank,
                            rank_kernel_image, solve)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rank_examples():
    r, kernel, _ = rank_kernel_image(RationalMatrix.identity(3))
    assert (r, len(kernel)) == (3, 0)
    r, kernel, _ = rank_kernel_image(RationalMatrix.from_rows([[1, 2], [2, 4]]))
    assert r == 1 and len(kernel) == 1
    k = kernel[0]
    assert k[0] == -2 * k[1] and k[1] != 0
    r, kernel, _ = rank_kernel_image(RationalMatrix(2, 5))
    assert (r, len(kernel)) == (0, 5)


def test_solve_examples():
    assert solve(RationalMatrix.identity(3), [1, Fraction(1, 2), -7]) == [1, Fraction(1, 2), -7]
    assert solve(RationalMatrix.from_rows([[1, 1]]), [2]) == [2, 0]
    with pytest.raises(NoSolution):
        solve(RationalMatrix.from_rows([[1], [1]]), [1, 2])


def test_quotient_examples():
    assert quotient_space(2, RationalMatrix.from_rows([[1, -1]])).dim == 1
    Q = quotient_space(3, [])
    assert Q.dim == 3 and Q.reduce == RationalMatrix.identity(3)
    assert quotient_space(2, RationalMatrix.from_rows([[1, 0], [0, 1]])).dim == 0


def test_echelon_pivots_at_smallest_column():
    e = Echelon(3)
    assert e.add({1: 2, 2: 4})
    assert not e.add({1: 1, 2: 2})
    assert e.rank == 1
    assert e.reduce({1: 1}) == {2: -2}


@given(matrices())
def test_rank_of_transpose(rows):
    M = RationalMatrix.from_rows(rows)
    assert rank(M) == rank(M.T)


@given(matrices())
def test_kernel_and_image(rows):
    M = RationalMatrix.from_rows(rows)
    r, kernel, image = rank_kernel_image(M)
    assert r + len(kernel) == M.cols
    assert len(image) == r
    for k in kernel:
        assert not any(M.apply(k))


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_when_consistent(rows, x):
    M = RationalMatrix.from_rows(rows)
    x = x[:M.cols]
    b = M.apply(x)
    y = solve(M, b)
    assert M.apply(y) == b


@given(matrices())
def test_solver_free_variables_are_zero(rows):
    M = RationalMatrix.from_rows(rows)
    s = Solver(M)
    b = M.apply([1] * M.cols)
    y = s.solve(b)
    assert M.apply([y.get(j, 0) for j in range(M.cols)]) == b
    # the same right-hand side always gives the same answer
    assert s.solve(b) == y


@given(matrices(4, 4), st.lists(small, min_size=4, max_size=4))
def test_quotient_reduce_idempotent(rows, v):
    M = RationalMatrix.from_rows(rows)
    Q = quotient_space(M.cols, [M.sparse_row(i) for i in range(M.rows)])
    once = Q.reduce_vector(v[:M.cols])
    assert Q.reduce_vector(once) == once
    assert Q.dim == M.cols - rank(M)
    for i in range(M.rows):
        assert Q.reduce_vector(M.sparse_row(i)) == {}


def test_matrix_arithmetic():
    A = RationalMatrix.from_rows([[1, 2], [3, 4]])
    B = RationalMatrix.from_rows([[0, 1], [1, 0]])
    assert A @ B == RationalMatrix.from_rows([[2, 1], [4, 3]])
    assert (A - A).is_zero()
    assert A.T.T == A
