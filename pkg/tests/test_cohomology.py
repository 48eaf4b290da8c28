import pytest

from conftest import CORPUS, CORPUS_IDS
from derham.cohomology import (augmentation_report, betti_at, inclusion_consistency, induced_P_on_H,
                               stabilized_betti, star_acyclicity_report, truncated_complex)
from derham.corpus import EXPECTED_BETTI, builtin
from derham.simplicial import star, subcomplex

SIDES = ["omega", "sullivan"]


def test_zero_complex():
    X = builtin("edge")
    empty = subcomplex(X, [])
    for side in SIDES:
        assert betti_at(empty, side, 2, 4) == [0, 0, 0]


def test_point_and_edge():
    assert betti_at(builtin("point"), "omega", 2, 3) == [1, 0, 0]
    assert betti_at(builtin("edge"), "omega", 1, 4) == [1, 0]


def test_stabilized_examples(triangle_boundary, tetra_boundary):
    rep = stabilized_betti(builtin("point"), "omega", 0, 0, 3)
    assert rep.stable == [1] and rep.all_stabilized and rep.D0 == [0]
    rep = stabilized_betti(triangle_boundary, "omega", 1, 3, 6)
    assert rep.stable == [1, 1] and rep.all_stabilized
    rep = stabilized_betti(tetra_boundary, "sullivan", 2, 4, 5)
    assert rep.stable == [1, 0, 1] and rep.all_stabilized


def test_stabilization_window_is_enforced(tetra_boundary):
    # h^2 of the Omega side first reaches its final value at D = 6
    rep = stabilized_betti(tetra_boundary, "omega", 2, 4, 6)
    assert rep.stabilized == [True, True, False]
    with pytest.raises(ValueError):
        stabilized_betti(tetra_boundary, "omega", 2, 4, 6, window=1)


def test_induced_P_examples(triangle_boundary):
    rows = induced_P_on_H(triangle_boundary, 1, 5)
    assert rows[0]["rank"] == 1 and rows[0]["iso"]
    assert rows[1] == {"degree": 1, "rank": 1, "h_omega": 1, "h_sullivan": 1, "well_defined": True, "iso": True}
    rows = induced_P_on_H(builtin("triangle"), 2, 4)
    assert [r["rank"] for r in rows] == [1, 0, 0] and all(r["iso"] for r in rows)


def test_star_acyclicity_examples(triangle_boundary, tetra_boundary):
    rep = star_acyclicity_report(tetra_boundary, 2, 5, p_max=0)
    first = rep["stars"][0]
    assert first["tuple"] == ["1"] and first["omega"] == first["sullivan"] == [1, 0, 0]
    rep = star_acyclicity_report(triangle_boundary, 1, 5, p_max=1)
    row = next(r for r in rep["stars"] if r["tuple"] == ["2", "3"])
    assert row["omega"] == [1, 0] and row["status"] == "pass"
    # X is not a star of one of its vertices, so the empty tuple is skipped
    assert all(r["tuple"] for r in rep["stars"])
    rep = star_acyclicity_report(builtin("triangle"), 1, 4, p_max=0)
    assert rep["stars"][0]["tuple"] == []


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
@pytest.mark.parametrize("side", SIDES)
def test_augmentation(X, side):
    assert augmentation_report(X, side, 3)["status"] == "pass"


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
@pytest.mark.parametrize("side", SIDES)
def test_d_squared_and_monotone(X, side):
    assert truncated_complex(X, side, 2, 5).d_squared_is_zero()
    assert inclusion_consistency(X, side, 2, 3, 5)["status"] == "pass"


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
def test_stars_have_point_cohomology(X):
    for v in X.vertices:
        St = star(X, (v,))
        for side in SIDES:
            assert stabilized_betti(St, side, 1, 2, 5).stable == [1, 0]


@pytest.mark.parametrize("X", CORPUS, ids=CORPUS_IDS)
def test_oracle_agreement(X):
    expected = EXPECTED_BETTI[X.name]
    for side in SIDES:
        rep = stabilized_betti(X, side, 2, 0, 8)
        assert rep.all_stabilized and rep.stable == expected
