import itertools
import json
from math import comb

import pytest

from conftest import CORPUS, CORPUS_IDS
from derham.corpus import builtin
from derham.simplicial import (ComplexError, build_complex, increasing_tuples, minimal_nonfaces,
                               parse_complex, simplicial_betti, sort_with_sign, star, star_in,
                               subcomplex, whole)


def simplices(Y):
    return {frozenset(s) for s in Y.simplices}


def sets(*groups):
    return {frozenset(g) for g in groups}


def test_build_counts():
    assert len(build_complex([[1, 2], [1, 3], [2, 3]]).simplices) == 6
    assert len(build_complex([[1, 2, 3]]).simplices) == 7
    point = build_complex([[1]], [1])
    assert len(point.simplices) == 1
    assert point.vertices == ("1",)


def test_isolated_listed_vertex_becomes_point():
    X = build_complex([["a", "b"]], ["a", "b", "c"])
    assert frozenset({"c"}) in X.simplices


def test_build_rejects_unknown_vertex():
    with pytest.raises(ComplexError):
        build_complex([["1", "9"]], ["1", "2"])


def test_star_examples(triangle_boundary):
    X = triangle_boundary
    assert simplices(star(X, ("1",))) == sets("1", "2", "3", "12", "13")
    assert star(X, ("1", "2", "3")).is_empty()
    assert simplices(star(X, ())) == simplices(whole(X))


def test_star_in_examples(triangle_boundary):
    Y = subcomplex(triangle_boundary, [("2", "3")])
    assert simplices(star_in(Y, ("2",))) == sets("2", "3", "23")
    assert star_in(Y, ("1",)).is_empty()
    assert star_in(Y, ()).simplices == Y.simplices


def test_minimal_nonfaces():
    assert minimal_nonfaces(builtin("triangle-boundary")) == [("1", "2", "3")]
    assert minimal_nonfaces(builtin("two-points")) == [("1", "2")]
    assert minimal_nonfaces(builtin("triangle")) == []


def test_minimal_nonfaces_of_wedge():
    got = {frozenset(s) for s in minimal_nonfaces(builtin("wedge"))}
    assert got == sets("123", "345", "14", "15", "24", "25")


def test_increasing_tuples(triangle_boundary):
    X = triangle_boundary
    assert increasing_tuples(X, 0) == [("1",), ("2",), ("3",)]
    assert increasing_tuples(X, 1) == [("1", "2"), ("1", "3"), ("2", "3")]
    assert increasing_tuples(X, -1) == [()]


def test_sort_with_sign(triangle_boundary):
    assert sort_with_sign(triangle_boundary, ("2", "1")) == (-1, ("1", "2"))
    assert sort_with_sign(triangle_boundary, ("3", "1", "2")) == (1, ("1", "2", "3"))
    assert sort_with_sign(triangle_boundary, ("1", "1"))[0] == 0


def test_simplicial_betti_examples():
    assert simplicial_betti(builtin("point"), 1) == [1, 0]
    assert simplicial_betti(builtin("triangle-boundary"), 1) == [1, 1]
    assert simplicial_betti(builtin("tetrahedron-boundary"), 2) == [1, 0, 1]


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_betti_of_full_simplex(n):
    X = build_complex([list(range(n + 1))])
    assert simplicial_betti(X, 3) == [1, 0, 0, 0]


def test_betti_of_disjoint_union_adds():
    a = builtin("triangle-boundary")
    b = build_complex([["4", "5"], ["4", "6"], ["5", "6"], ["7"]])
    union = build_complex([list(s) for s in a.maximal_simplices()] + [list(s) for s in b.maximal_simplices()])
    ba, bb, bu = simplicial_betti(a, 2), simplicial_betti(b, 2), simplicial_betti(union, 2)
    assert bu == [x + y for x, y in zip(ba, bb)]


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
def test_downward_closed(X):
    for s in X.simplices:
        for k in range(1, len(s)):
            for sub in itertools.combinations(sorted(s), k):
                assert frozenset(sub) in X.simplices


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
def test_tuple_counts(X):
    for p in range(0, 4):
        assert len(increasing_tuples(X, p)) == comb(len(X.vertices), p + 1)


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
def test_star_permutation_invariant_and_iterated(X):
    for p in range(0, 3):
        for u in increasing_tuples(X, p):
            base = star(X, u)
            for perm in itertools.permutations(u):
                assert star(X, perm).simplices == base.simplices
            for v in X.vertices:
                assert star(X, (v,) + u).simplices == star_in(base, (v,)).simplices


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
def test_json_round_trip(X):
    text = json.dumps(X.to_json())
    Y = parse_complex(text)
    assert Y.simplices == X.simplices and Y.vertices == X.vertices and Y.name == X.name
    assert Y.to_json() == X.to_json()


def test_parse_errors_carry_position():
    with pytest.raises(ComplexError, match="line 2"):
        parse_complex('{"name": "x",\n "vertices": [1,, 2]}')
    with pytest.raises(ComplexError, match="maximal_simplices"):
        parse_complex('{"name": "x", "vertices": ["1"]}')
