"""Coverage metrics over feature/software support data."""

import pathlib

import numpy as np
import pytest

import radquant.registry as reg
from radquant.popularity import (ClassTotals, SupportMatrix,
                                 intersection_counts, popular_cutoff,
                                 popularity_p1, popularity_p2)

DATA = pathlib.Path(__file__).resolve().parents[1] / "data" / "popularity"


@pytest.fixture(scope="module")
def totals():
    return ClassTotals.from_csv(DATA / "class_totals.csv")


def test_popular_cutoff_values():
    assert [popular_cutoff(n) for n in range(1, 10)] == [0, 1, 2, 2, 3, 4, 4, 5, 6]


def test_class_totals_p1_reference_fractions(totals):
    assert popularity_p1(totals) == pytest.approx(707 / 1038, abs=1e-12)
    assert popularity_p1(totals, "morphology") == pytest.approx(
        91 / 174, abs=1e-12)
    assert popularity_p1(totals, "statistic/histogram") == pytest.approx(
        199 / 300, abs=1e-12)
    assert popularity_p1(totals, "texture") == pytest.approx(
        417 / 564, abs=1e-12)


def test_class_totals_p1_category_ordering(totals):
    morph = popularity_p1(totals, "morphology")
    stat = popularity_p1(totals, "statistic/histogram")
    tex = popularity_p1(totals, "texture")
    assert morph < stat < tex
    assert morph == min(morph, stat, tex)


def test_class_totals_rejects_p2(totals):
    with pytest.raises(ValueError, match="per-feature"):
        popularity_p2(totals)
    with pytest.raises(ValueError, match="per-feature"):
        intersection_counts(totals)


def test_class_totals_empty_category(totals):
    with pytest.raises(ValueError, match="empty category"):
        popularity_p1(totals, "no-such-category")


def test_class_totals_validates_counts():
    with pytest.raises(ValueError, match="exceed"):
        ClassTotals(["glcm"], ["texture"], [25], ["s1"], np.array([[26]]))


def _matrix(rows, n_soft=6):
    flags = np.zeros((len(rows), n_soft), dtype=bool)
    for i, w in enumerate(rows):
        flags[i, :w] = True
    return SupportMatrix([f"f{i}" for i in range(len(rows))],
                         ["texture"] * len(rows),
                         [f"s{j}" for j in range(n_soft)], flags)


def test_p2_hand_example():
    # supports 6,5,4,1 of 6 programs; cutoff is 4, strictly above -> 2 of 4
    m = _matrix([6, 5, 4, 1])
    assert popularity_p2(m) == pytest.approx(0.5, abs=0)
    assert popularity_p1(m) == pytest.approx(16 / 24, abs=1e-15)


def test_p2_explicit_cutoff():
    m = _matrix([6, 5, 4, 1])
    assert popularity_p2(m, cutoff=3) == pytest.approx(0.75, abs=0)
    assert popularity_p2(m, cutoff=0) == pytest.approx(1.0, abs=0)


def test_universal_support_degenerates_to_one():
    m = _matrix([4, 4, 4], n_soft=4)
    assert popularity_p1(m) == 1.0
    assert popularity_p2(m) == 1.0
    inter = intersection_counts(m)
    assert inter["subsets"] == [{"members": ["s0", "s1", "s2", "s3"], "count": 3}]
    assert inter["full_intersection"]["texture"] == {"all_software": 3, "total": 3}


def test_intersection_counts_synthetic_matrix():
    # synthetic support pattern, not survey data
    flags = np.array([
        [1, 1, 1],
        [1, 1, 1],
        [1, 1, 0],
        [0, 1, 0],
        [0, 1, 0],
        [0, 0, 0],
    ], dtype=bool)
    m = SupportMatrix([f"f{i}" for i in range(6)],
                      ["morphology"] * 3 + ["texture"] * 3,
                      ["a", "b", "c"], flags)
    inter = intersection_counts(m)
    assert inter["subsets"][0] in ({"members": ["a", "b", "c"], "count": 2},)
    assert {"members": ["b"], "count": 2} in inter["subsets"]
    assert {"members": [], "count": 1} in inter["subsets"]
    assert inter["full_intersection"]["morphology"] == {
        "all_software": 2, "total": 3}
    assert inter["full_intersection"]["texture"] == {
        "all_software": 0, "total": 3}
    counts = sorted(s["count"] for s in inter["subsets"])
    assert sum(counts) == 6  # every feature lands in exactly one subset


def test_support_matrix_validation():
    with pytest.raises(ValueError, match="duplicate"):
        SupportMatrix(["f0", "f0"], ["texture"] * 2, ["a"],
                      np.ones((2, 1), dtype=bool))
    with pytest.raises(ValueError, match="shape"):
        SupportMatrix(["f0"], ["texture"], ["a", "b"],
                      np.ones((1, 1), dtype=bool))
    with pytest.raises(ValueError, match="empty category"):
        _matrix([1, 2]).p1("morphology")


def test_support_template_matches_registry():
    m = SupportMatrix.from_csv(DATA / "support_template.csv")
    assert len(m.feature_ids) == 173
    assert m.software == ["sw1", "sw2", "sw3", "sw4", "sw5", "sw6"]
    assert m.feature_ids == list(reg.all_features())
    for fid, cat in zip(m.feature_ids, m.categories):
        assert cat == reg.CATEGORY_OF_CLASS[reg.class_of(fid)]
    assert not m.flags.any()


def test_class_totals_matches_registry_sizes(totals):
    assert totals.classes == list(reg.CLASS_ORDER)
    for cls, n in zip(totals.classes, totals.n_features):
        assert n == len(reg.class_features(cls))
    for cls, cat in zip(totals.classes, totals.categories):
        assert cat == reg.CATEGORY_OF_CLASS[cls]
