"""Relative-difference scoring, alias translation, and report assembly."""

import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from radquant.conformance import (BenchmarkRow, BenchmarkTable, GlossaryMap,
                                  GlossaryRow, TIERS, conformance_report,
                                  map_aliases, read_feature_csv,
                                  relative_difference)
from radquant.registry import FeatureSet


def test_relative_difference_reference_case():
    diff, fallback = relative_difference(554.0, 556.0)
    assert not fallback
    assert diff == pytest.approx(2.0 / 556.0, abs=1e-6)
    assert diff == pytest.approx(0.0035971223021582736, abs=1e-6)


def test_relative_difference_identity_is_zero():
    for v in (-3.5, 0.25, 1e12, 5e-9):
        diff, fallback = relative_difference(v, v)
        assert diff == 0.0
        assert not fallback


def test_relative_difference_zero_benchmark_fallback():
    diff, fallback = relative_difference(5.0, 0.0)
    assert fallback
    assert diff == 5.0
    diff, fallback = relative_difference(-2.5, 0.0)
    assert fallback and diff == 2.5


def test_relative_difference_rejects_non_finite():
    for bad in (math.nan, math.inf, -math.inf):
        with pytest.raises(ValueError):
            relative_difference(bad, 1.0)
        with pytest.raises(ValueError):
            relative_difference(1.0, bad)


@given(st.floats(min_value=-1e6, max_value=1e6),
       st.floats(min_value=1e-6, max_value=1e6),
       st.sampled_from([2.0, -4.0, 0.5, 1024.0]))
def test_relative_difference_scale_invariant(value, benchmark, scale):
    # power-of-two scales keep the floating point quotient bit-identical
    base, _ = relative_difference(value, benchmark)
    scaled, _ = relative_difference(scale * value, scale * benchmark)
    assert scaled == base


def _glossary():
    return GlossaryMap([
        GlossaryRow("int_stat.mean", "toolA", "Mean"),
        GlossaryRow("int_stat.kurtosis", "toolA", "ExcessKurtosis",
                    scale=1.0, offset=3.0),
        GlossaryRow("int_stat.energy", "toolB", "TotalEnergy",
                    scale=0.001, offset=0.0),
    ])


def test_glossary_lookup_and_correction(tmp_path):
    g = _glossary()
    row = g.lookup("toolA", "ExcessKurtosis")
    assert row.canonical_id == "int_stat.kurtosis"
    # a Pearson kurtosis of 2.5 reported as excess -0.5 corrects back
    assert row.scale * (-0.5) + row.offset == pytest.approx(2.5, abs=0)
    assert g.lookup("toolB", "Mean") is None


def test_glossary_rejects_zero_scale():
    with pytest.raises(ValueError, match="non-invertible"):
        GlossaryMap([GlossaryRow("int_stat.mean", "toolA", "Mean", scale=0.0)])


def test_glossary_rejects_ambiguous_alias():
    with pytest.raises(ValueError, match="ambiguous"):
        GlossaryMap([
            GlossaryRow("int_stat.mean", "toolA", "Mean"),
            GlossaryRow("int_stat.median", "toolA", "Mean"),
        ])


def test_glossary_duplicate_consistent_rows_allowed():
    g = GlossaryMap([
        GlossaryRow("int_stat.mean", "toolA", "Mean"),
        GlossaryRow("int_stat.mean", "toolA", "Mean"),
    ])
    assert g.lookup("toolA", "Mean").canonical_id == "int_stat.mean"


def test_glossary_csv_round_trip(tmp_path):
    path = tmp_path / "glossary.csv"
    path.write_text(
        "canonical_id,source,alias,scale,offset\n"
        "int_stat.kurtosis,toolA,ExcessKurtosis,1.0,3.0\n"
        "int_stat.mean,toolA,Mean,,\n")
    g = GlossaryMap.from_csv(path)
    assert g.lookup("toolA", "Mean").scale == 1.0
    assert g.lookup("toolA", "ExcessKurtosis").offset == 3.0


def test_map_aliases_translates_and_keeps_unmapped(tmp_path):
    path = tmp_path / "external.csv"
    path.write_text(
        "source,feature_name,value\n"
        "toolA,Mean,2.0\n"
        "toolA,ExcessKurtosis,-0.354620480687834\n"
        "toolA,UnknownThing,7.0\n"
        "toolB,TotalEnergy,567000.0\n")
    sets, unmapped = map_aliases(path, _glossary())
    assert set(sets) == {"toolA", "toolB"}
    assert sets["toolA"]["int_stat.mean"].value == 2.0
    assert sets["toolA"]["int_stat.kurtosis"].value == pytest.approx(
        2.645379519312166, rel=1e-12)
    assert sets["toolB"]["int_stat.energy"].value == pytest.approx(567.0, rel=1e-12)
    assert len(unmapped) == 1
    assert unmapped[0]["feature_name"] == "UnknownThing"


def _bench():
    return BenchmarkTable([
        BenchmarkRow("int_stat.mean", 2.0),
        BenchmarkRow("int_stat.variance", 3.0),
        BenchmarkRow("int_stat.skewness", 0.0),
        BenchmarkRow("int_stat.kurtosis", 2.5, tolerance=0.5),
    ])


def test_report_tiers_partition_and_counts():
    fs = FeatureSet()
    fs.add("int_stat.mean", 2.0005)        # rd 2.5e-4 -> match
    fs.add("int_stat.variance", 3.06)      # rd 2e-2 -> close
    fs.add("int_stat.skewness", 0.2)       # zero benchmark -> abs 0.2 -> divergent
    # kurtosis absent -> missing
    report = conformance_report(fs, _bench())
    counts = report.tier_counts()["run"]
    assert counts == {"match": 1, "close": 1, "divergent": 1, "missing": 1}
    assert sum(counts.values()) == len(report.entries)
    skew = [e for e in report.entries if e.feature_id == "int_stat.skewness"][0]
    assert skew.absolute_fallback and skew.tier == "divergent"
    for e in report.entries:
        assert e.tier in TIERS


def test_report_per_row_tolerance_overrides_match():
    fs = FeatureSet()
    fs.add("int_stat.kurtosis", 2.9)  # rd 0.16 > close tol, but row tol is 0.5
    report = conformance_report(fs, BenchmarkTable(
        [BenchmarkRow("int_stat.kurtosis", 2.5, tolerance=0.5)]))
    assert report.entries[0].tier == "match"


def test_report_undefined_value_is_missing():
    fs = FeatureSet()
    fs.add_undefined("int_stat.mean")
    report = conformance_report(fs, BenchmarkTable([BenchmarkRow("int_stat.mean", 2.0)]))
    assert report.entries[0].tier == "missing"
    assert report.entries[0].computed is None


def test_report_multi_source_and_class_summary():
    a, b = FeatureSet(), FeatureSet()
    a.add("int_stat.mean", 2.0)
    b.add("int_stat.mean", 2.5)
    report = conformance_report({"a": a, "b": b}, BenchmarkTable(
        [BenchmarkRow("int_stat.mean", 2.0)]))
    tiers = report.tier_counts()
    assert tiers["a"]["match"] == 1
    assert tiers["b"]["divergent"] == 1
    summary = report.class_summary()
    assert summary["intensity_statistics"]["match"] == 1
    assert summary["intensity_statistics"]["divergent"] == 1


def test_report_threshold_validation():
    fs = FeatureSet()
    fs.add("int_stat.mean", 2.0)
    bench = BenchmarkTable([BenchmarkRow("int_stat.mean", 2.0)])
    with pytest.raises(ValueError):
        conformance_report(fs, bench, match_tol=0.1, close_tol=0.01)
    with pytest.raises(ValueError):
        conformance_report({}, bench)


def test_report_json_and_csv_outputs(tmp_path):
    fs = FeatureSet()
    fs.add("int_stat.mean", 2.0)
    fs.add("int_stat.variance", 100.0)
    report = conformance_report(fs, _bench())
    jpath = tmp_path / "report.json"
    report.write_json(jpath)
    doc = json.loads(jpath.read_text())
    assert doc["thresholds"] == {"match": 1e-3, "close": 5e-2}
    assert len(doc["matrix"]) == 4
    assert doc["tiers"]["run"]["divergent"] == 1
    cpath = tmp_path / "report.csv"
    report.write_csv(cpath)
    lines = cpath.read_text().splitlines()
    assert lines[0] == ("source,feature_id,class,computed,benchmark,"
                        "difference,absolute_fallback,tier")
    assert len(lines) == 5


def test_benchmark_table_validation(tmp_path):
    with pytest.raises(ValueError, match="duplicate"):
        BenchmarkTable([BenchmarkRow("int_stat.mean", 1.0),
                        BenchmarkRow("int_stat.mean", 2.0)])
    with pytest.raises(ValueError, match="non-finite"):
        BenchmarkTable([BenchmarkRow("int_stat.mean", math.nan)])
    path = tmp_path / "bench.csv"
    path.write_text("feature_id,value,tolerance\nint_stat.mean,2.0,\n"
                    "int_stat.variance,3.0,0.1\n")
    table = BenchmarkTable.from_csv(path)
    assert table.rows[0].tolerance is None
    assert table.rows[1].tolerance == 0.1


def test_self_comparison_all_match(phantom, tmp_path):
    from radquant.features import extract_all
    from radquant.preprocess import DiscretizationSpec
    vol, mask = phantom
    fs = extract_all(vol, mask, DiscretizationSpec(method="fbs", bin_width=1.0))
    bench = BenchmarkTable([BenchmarkRow(fv.id, fv.value)
                            for fv in fs.values if fv.defined])
    report = conformance_report(fs, bench)
    counts = report.tier_counts()["run"]
    assert counts["match"] == len(bench)
    assert counts["close"] == counts["divergent"] == counts["missing"] == 0


def test_read_feature_csv_round_trip(tmp_path):
    path = tmp_path / "features.csv"
    path.write_text("feature_id,class,value,flag\n"
                    "int_stat.mean,intensity_statistics,2.5,\n"
                    "int_stat.variance,intensity_statistics,nan,undefined\n")
    fs = read_feature_csv(path)
    assert fs["int_stat.mean"].value == 2.5
    assert not fs["int_stat.variance"].defined
