import random

import pytest

from conftest import CORPUS, CORPUS_IDS
from derham.corpus import builtin
from derham.exactla import Q, RationalMatrix
from derham.kaehler import omega_restrict, omega_truncated
from derham.polyalg import PolyForm
from derham.simplicial import star, subcomplex
from derham.sullivan import (a_d, a_extend, a_restrict, a_truncated, check_compatible, eval_P_form,
                             eval_P_matrix, family_d, family_mul, is_zero_family, simplex_reduce,
                             simplex_restrict, simplex_space)


def test_simplex_space_dims():
    assert simplex_space((0,), 0, 4, 3).dim == 1
    assert simplex_space((0,), 1, 4, 3).dim == 0
    assert simplex_space((0, 1), 0, 2, 3).dim == 3
    assert simplex_space((0, 1), 1, 2, 3).dim == 2
    sp = simplex_space((0, 1, 2), 1, 1, 3)
    assert sp.basis == [((0, 0, 0), (0,)), ((0, 0, 0), (1,))]


def test_simplex_restrict_examples():
    n = 3
    for a in [(0, 1, 2), (0, 1)]:
        assert simplex_restrict(a, a, 1, 3, n) == RationalMatrix.identity(simplex_space(a, 1, 3, n).dim)
    t = [PolyForm.var(n, i) for i in range(n)]
    dt = [PolyForm.dvar(n, i) for i in range(n)]
    one = PolyForm.const(n)
    # on the edge {1,2}: t3 -> 0, then t2 -> 1 - t1
    assert simplex_reduce(t[2] + t[1], (0, 1)) == one - t[0]
    # edge -> vertex: t2 -> 0 lands in constants, dt dies
    assert simplex_reduce(t[0] * t[0] + t[1], (0,)) == one
    assert simplex_reduce(t[1] * dt[0], (0,)).is_zero()
    M = simplex_restrict((0, 1), (0,), 1, 2, n)
    assert M.rows == 0


def test_a_truncated_dims():
    assert a_truncated(builtin("triangle"), 0, 1).dim == 3
    assert a_truncated(builtin("triangle-boundary"), 0, 1).dim == 3
    assert a_truncated(builtin("two-points"), 0, 0).dim == 2


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
def test_basis_families_are_compatible(X):
    for q in range(3):
        tr = a_truncated(X, q, 4)
        for i in range(tr.dim):
            assert check_compatible(tr.element(i))


def test_restrict_examples(triangle_boundary):
    X = triangle_boundary
    tr = a_truncated(X, 1, 3)
    R = a_restrict(X, X, 1, 3)
    assert R == RationalMatrix.identity(tr.ambient_dim)
    Y = subcomplex(X, [("1", "2")])
    for D in range(5):
        a_restrict(X, Y, 0, D, check=True)


def test_restrict_after_extend():
    rng = random.Random(0)
    X = builtin("tetrahedron-boundary")
    for v in X.vertices:
        Y = star(X, (v,))
        for q in range(3):
            D = 3
            tgt = a_truncated(Y, q, D)
            R = a_restrict(X, Y, q, D)
            for _ in range(50 // len(X.vertices) + 1):
                coeffs = [rng.randint(-3, 3) for _ in tgt.basis]
                w: dict = {}
                for c, b in zip(coeffs, tgt.basis):
                    for i, x in b.items():
                        w[i] = w.get(i, 0) + c * x
                ext = a_extend(X, Y, q, D, w)
                got = R.apply([ext.get(i, 0) for i in range(R.cols)])
                assert got == [w.get(i, 0) for i in range(tgt.ambient_dim)]


def test_eval_P_examples(triangle_boundary):
    X = triangle_boundary
    n = 3
    t = [PolyForm.var(n, i) for i in range(n)]
    dt = [PolyForm.dvar(n, i) for i in range(n)]
    fam = eval_P_form(X, t[0])
    assert fam[(0, 1)] == t[0] and fam[(0, 2)] == t[0] and fam[(1, 2)].is_zero()
    assert is_zero_family(eval_P_form(X, t[0] ** 2 * t[1] ** 2 * dt[2]))


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
def test_P_is_a_dg_morphism(X):
    n = len(X.vertices)
    t = [PolyForm.var(n, i) for i in range(n)]
    assert family_d(eval_P_form(X, t[0])) == eval_P_form(X, PolyForm.dvar(n, 0))
    src1 = omega_truncated(X, 1, 2)
    src0 = omega_truncated(X, 0, 2)
    for i in range(src0.dim):
        f = src0.element(i)
        assert family_d(eval_P_form(X, f)) == eval_P_form(X, f.d())
        for j in range(src1.dim):
            g = src1.element(j)
            assert family_mul(eval_P_form(X, f), eval_P_form(X, g)) == eval_P_form(X, f.wedge(g))


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
def test_P_commutes_with_restriction_to_stars(X):
    D = 3
    for v in X.vertices:
        Y = star(X, (v,))
        for q in range(3):
            lhs = a_restrict(X, Y, q, D, check=False) @ eval_P_matrix(X, q, D)
            rhs = eval_P_matrix(Y, q, D) @ omega_restrict(X, Y, q, D, check=False)
            assert lhs == rhs


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
def test_d_squared_and_d_commutes_with_restriction(X):
    D = 4
    for q in range(2):
        assert (a_d(X, q + 1, D) @ a_d(X, q, D)).is_zero()
    for v in X.vertices:
        Y = star(X, (v,))
        for q in range(2):
            assert a_d(Y, q, D) @ a_restrict(X, Y, q, D, check=False) == \
                a_restrict(X, Y, q + 1, D, check=False) @ a_d(X, q, D)


def test_coordinates_round_trip(tetra_boundary):
    tr = a_truncated(tetra_boundary, 1, 3)
    for i in range(tr.dim):
        assert tr.to_coords(tr.element(i)) == {k: Q(x) for k, x in tr.basis[i].items()}
