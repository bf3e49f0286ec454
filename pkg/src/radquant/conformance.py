"""Agreement scoring between feature sets and benchmark tables.

Each computed value is compared to its benchmark through the relative
difference |value - benchmark| / |benchmark| and binned into agreement
tiers; benchmark values of zero fall back to the absolute difference
and are flagged as such.  External result files in foreign naming
schemes are first translated to canonical feature ids through a
glossary of aliases with optional affine corrections.
"""

import csv
import json
import math
from dataclasses import dataclass, field

from .registry import FeatureSet, class_of, is_registered

__all__ = [
    "relative_difference",
    "BenchmarkTable",
    "GlossaryMap",
    "map_aliases",
    "ConformanceEntry",
    "ConformanceReport",
    "conformance_report",
    "read_feature_csv",
]

TIER_MATCH = "match"
TIER_CLOSE = "close"
TIER_DIVERGENT = "divergent"
TIER_MISSING = "missing"
TIERS = (TIER_MATCH, TIER_CLOSE, TIER_DIVERGENT, TIER_MISSING)

DEFAULT_MATCH_TOL = 1e-3
DEFAULT_CLOSE_TOL = 5e-2


def relative_difference(value, benchmark):
    """(difference, absolute_fallback) agreement measure.

    The difference is |value - benchmark| / |benchmark|; a zero
    benchmark switches to the absolute difference |value| and reports
    the fallback flag so the caller can mark the cell.
    """
    value = float(value)
    benchmark = float(benchmark)
    if not (math.isfinite(value) and math.isfinite(benchmark)):
        raise ValueError("relative_difference requires finite inputs")
    if benchmark == 0.0:
        return abs(value), True
    return abs(value - benchmark) / abs(benchmark), False


@dataclass(frozen=True)
class BenchmarkRow:
    feature_id: str
    value: float
    tolerance: float | None = None


@dataclass
class BenchmarkTable:
    """Reference values to score feature sets against."""

    rows: list[BenchmarkRow]

    def __post_init__(self):
        seen = set()
        for row in self.rows:
            if row.feature_id in seen:
                raise ValueError(f"duplicate benchmark feature id {row.feature_id!r}")
            seen.add(row.feature_id)
            if not math.isfinite(row.value):
                raise ValueError(f"non-finite benchmark value for {row.feature_id!r}")

    @classmethod
    def from_csv(cls, path):
        """Read `feature_id,value[,tolerance]` rows."""
        rows = []
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or "feature_id" not in reader.fieldnames \
                    or "value" not in reader.fieldnames:
                raise ValueError("benchmark CSV needs feature_id,value[,tolerance]")
            for rec in reader:
                tol = rec.get("tolerance")
                tol = float(tol) if tol not in (None, "") else None
                rows.append(BenchmarkRow(rec["feature_id"], float(rec["value"]), tol))
        return cls(rows)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)


@dataclass(frozen=True)
class GlossaryRow:
    canonical_id: str
    source: str
    alias: str
    scale: float = 1.0
    offset: float = 0.0


@dataclass
class GlossaryMap:
    """Alias translation table: (source, alias) -> canonical id, with an
    invertible affine correction canonical = scale * x + offset."""

    rows: list[GlossaryRow]

    def __post_init__(self):
        self._index = {}
        for row in self.rows:
            if row.scale == 0.0:
                raise ValueError(f"non-invertible correction for alias {row.alias!r}")
            key = (row.source, row.alias)
            prior = self._index.get(key)
            if prior is not None and prior.canonical_id != row.canonical_id:
                raise ValueError(f"ambiguous alias {row.alias!r} for source {row.source!r}")
            self._index[key] = row

    @classmethod
    def from_csv(cls, path):
        """Read `canonical_id,source,alias[,scale,offset]` rows."""
        rows = []
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            needed = {"canonical_id", "source", "alias"}
            if reader.fieldnames is None or not needed.issubset(reader.fieldnames):
                raise ValueError("glossary CSV needs canonical_id,source,alias[,scale,offset]")
            for rec in reader:
                scale = float(rec.get("scale") or 1.0)
                offset = float(rec.get("offset") or 0.0)
                rows.append(GlossaryRow(rec["canonical_id"], rec["source"],
                                        rec["alias"], scale, offset))
        return cls(rows)

    def lookup(self, source, alias):
        return self._index.get((source, alias))


def map_aliases(path, glossary: GlossaryMap):
    """Translate an external `source,feature_name,value` CSV.

    Returns (sets, unmapped): one canonical FeatureSet per source with
    corrections applied, plus the rows whose names had no glossary
    entry (never dropped silently).
    """
    sets: dict[str, FeatureSet] = {}
    unmapped: list[dict] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        needed = {"source", "feature_name", "value"}
        if reader.fieldnames is None or not needed.issubset(reader.fieldnames):
            raise ValueError("external CSV needs source,feature_name,value")
        for rec in reader:
            source = rec["source"]
            row = glossary.lookup(source, rec["feature_name"])
            if row is None or not is_registered(row.canonical_id):
                unmapped.append(dict(rec))
                continue
            fs = sets.setdefault(source, FeatureSet())
            fs.add(row.canonical_id, row.scale * float(rec["value"]) + row.offset)
    return sets, unmapped


@dataclass(frozen=True)
class ConformanceEntry:
    source: str
    feature_id: str
    computed: float | None
    benchmark: float
    difference: float | None
    absolute_fallback: bool
    tier: str


@dataclass
class ConformanceReport:
    entries: list[ConformanceEntry]
    match_tol: float
    close_tol: float

    def tier_counts(self):
        """Per-source {tier: count}; cells partition into the four tiers."""
        out: dict[str, dict[str, int]] = {}
        for e in self.entries:
            per = out.setdefault(e.source, {t: 0 for t in TIERS})
            per[e.tier] += 1
        return out

    def class_summary(self):
        """Per-feature-class tier counts, aggregated over sources."""
        out: dict[str, dict[str, int]] = {}
        for e in self.entries:
            per = out.setdefault(class_of(e.feature_id), {t: 0 for t in TIERS})
            per[e.tier] += 1
        return out

    def to_json_dict(self):
        matrix = [{
            "source": e.source,
            "feature_id": e.feature_id,
            "computed": e.computed,
            "benchmark": e.benchmark,
            "difference": e.difference,
            "absolute_fallback": e.absolute_fallback,
            "tier": e.tier,
        } for e in self.entries]
        return {
            "thresholds": {"match": self.match_tol, "close": self.close_tol},
            "matrix": matrix,
            "tiers": self.tier_counts(),
            "summary": self.class_summary(),
        }

    def write_json(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def write_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["source", "feature_id", "class", "computed",
                             "benchmark", "difference", "absolute_fallback", "tier"])
            for e in self.entries:
                writer.writerow([
                    e.source, e.feature_id, class_of(e.feature_id),
                    "" if e.computed is None else repr(e.computed),
                    repr(e.benchmark),
                    "" if e.difference is None else repr(e.difference),
                    int(e.absolute_fallback), e.tier,
                ])


def conformance_report(sets, benchmarks: BenchmarkTable,
                       match_tol=DEFAULT_MATCH_TOL,
                       close_tol=DEFAULT_CLOSE_TOL) -> ConformanceReport:
    """Score one or more feature sets against a benchmark table.

    `sets` is a FeatureSet or {source name: FeatureSet}.  Every
    (benchmark feature, source) cell lands in exactly one tier; features
    a source did not produce (or produced as flagged-undefined) are
    tier "missing".  A per-row benchmark tolerance overrides the global
    match threshold for that feature.
    """
    if isinstance(sets, FeatureSet):
        sets = {"run": sets}
    if not sets or not len(benchmarks):
        raise ValueError("conformance_report needs non-empty inputs")
    if not (0.0 < match_tol < close_tol):
        raise ValueError("thresholds must satisfy 0 < match < close")
    entries = []
    for source in sorted(sets):
        fs = sets[source]
        for row in benchmarks:
            computed = None
            if row.feature_id in fs:
                fv = fs[row.feature_id]
                if fv.defined and math.isfinite(fv.value):
                    computed = fv.value
            if computed is None:
                entries.append(ConformanceEntry(source, row.feature_id, None,
                                                row.value, None, False, TIER_MISSING))
                continue
            diff, fallback = relative_difference(computed, row.value)
            limit = row.tolerance if row.tolerance is not None else match_tol
            if diff <= limit:
                tier = TIER_MATCH
            elif diff <= close_tol:
                tier = TIER_CLOSE
            else:
                tier = TIER_DIVERGENT
            entries.append(ConformanceEntry(source, row.feature_id, computed,
                                            row.value, diff, fallback, tier))
    return ConformanceReport(entries, match_tol, close_tol)


def read_feature_csv(path) -> FeatureSet:
    """Read a `feature_id,class,value,flag` CSV back into a FeatureSet."""
    fs = FeatureSet()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        needed = {"feature_id", "class", "value", "flag"}
        if reader.fieldnames is None or not needed.issubset(reader.fieldnames):
            raise ValueError("feature CSV needs feature_id,class,value,flag")
        for rec in reader:
            flag = rec["flag"]
            if flag == "undefined":
                fs.add_undefined(rec["feature_id"])
            else:
                fs.add(rec["feature_id"], float(rec["value"]), flag)
    return fs
