"""Cross-software feature coverage metrics.

Given a binary support matrix (features x software), P1 scores the
weighted coverage sum(w_i) / (n_software * n_features) and P2 the
fraction of features supported by a strict supermajority of programs.
Set intersections of the per-software support columns provide the data
behind Venn / UpSet style plots.

Coverage surveys often publish only per-class support totals; the
ClassTotals form carries those and supports P1 (which only needs sums),
while P2 and intersections require the full per-feature matrix.
"""

import csv
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SupportMatrix",
    "ClassTotals",
    "popularity_p1",
    "popularity_p2",
    "popular_cutoff",
    "intersection_counts",
]

CATEGORIES = ("morphology", "statistic/histogram", "texture")


def popular_cutoff(n_software: int) -> int:
    """w must be strictly greater than this to count as popular."""
    return (2 * n_software) // 3


@dataclass
class SupportMatrix:
    """Per-feature binary support flags across software columns."""

    feature_ids: list[str]
    categories: list[str]
    software: list[str]
    flags: np.ndarray  # (n_features, n_software) bool

    def __post_init__(self):
        f = np.asarray(self.flags, dtype=bool)
        if f.shape != (len(self.feature_ids), len(self.software)):
            raise ValueError("flags shape must be (n_features, n_software)")
        if len(self.categories) != len(self.feature_ids):
            raise ValueError("one category per feature required")
        if len(set(self.feature_ids)) != len(self.feature_ids):
            raise ValueError("duplicate feature ids")
        if not self.software:
            raise ValueError("at least one software column required")
        self.flags = f

    @classmethod
    def from_csv(cls, path):
        """Read `feature_id,category,<software columns of 0/1>` rows."""
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if not header or header[:2] != ["feature_id", "category"]:
                raise ValueError("support CSV needs feature_id,category,<software...>")
            software = header[2:]
            ids, cats, rows = [], [], []
            for rec in reader:
                if not rec:
                    continue
                ids.append(rec[0])
                cats.append(rec[1])
                rows.append([int(v) for v in rec[2:]])
        return cls(ids, cats, software, np.array(rows, dtype=bool))

    def _select(self, category):
        if category is None:
            keep = np.ones(len(self.feature_ids), dtype=bool)
        else:
            keep = np.array([c == category for c in self.categories])
        if not keep.any():
            raise ValueError(f"empty category {category!r}")
        return self.flags[keep]

    def support_counts(self, category=None) -> np.ndarray:
        """w_i row sums for the selected category."""
        return self._select(category).sum(axis=1)

    def p1(self, category=None) -> float:
        flags = self._select(category)
        return float(flags.sum()) / (len(self.software) * flags.shape[0])

    def p2(self, category=None, cutoff=None) -> float:
        w = self.support_counts(category)
        if cutoff is None:
            cutoff = popular_cutoff(len(self.software))
        return float((w > cutoff).sum()) / len(w)


@dataclass
class ClassTotals:
    """Per-class support totals: class name, category, feature count and
    the number of supported features per software column."""

    classes: list[str]
    categories: list[str]
    n_features: list[int]
    software: list[str]
    counts: np.ndarray  # (n_classes, n_software) int

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.shape != (len(self.classes), len(self.software)):
            raise ValueError("counts shape must be (n_classes, n_software)")
        if len(self.categories) != len(self.classes) or \
                len(self.n_features) != len(self.classes):
            raise ValueError("one category and feature count per class required")
        if (c > np.asarray(self.n_features)[:, None]).any() or (c < 0).any():
            raise ValueError("per-class support cannot exceed the class size")
        self.counts = c

    @classmethod
    def from_csv(cls, path):
        """Read `class,category,n_features,<software columns>` rows."""
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if not header or header[:3] != ["class", "category", "n_features"]:
                raise ValueError("class totals CSV needs class,category,n_features,<software...>")
            software = header[3:]
            names, cats, sizes, rows = [], [], [], []
            for rec in reader:
                if not rec:
                    continue
                names.append(rec[0])
                cats.append(rec[1])
                sizes.append(int(rec[2]))
                rows.append([int(v) for v in rec[3:]])
        return cls(names, cats, sizes, software, np.array(rows, dtype=np.int64))

    def _select(self, category):
        if category is None:
            keep = np.ones(len(self.classes), dtype=bool)
        else:
            keep = np.array([c == category for c in self.categories])
        if not keep.any():
            raise ValueError(f"empty category {category!r}")
        return keep

    def p1(self, category=None) -> float:
        keep = self._select(category)
        total = int(self.counts[keep].sum())
        d = int(np.asarray(self.n_features)[keep].sum())
        return total / (len(self.software) * d)


def popularity_p1(matrix, category=None) -> float:
    """Weighted coverage sum(w_i) / (n_software * d)."""
    return matrix.p1(category)


def popularity_p2(matrix, category=None, cutoff=None) -> float:
    """Fraction of features supported by strictly more than `cutoff`
    programs (default: more than two thirds of the columns)."""
    if not isinstance(matrix, SupportMatrix):
        raise ValueError("P2 requires a per-feature support matrix")
    return matrix.p2(category, cutoff)


def intersection_counts(matrix: SupportMatrix):
    """Exact per-subset feature counts plus per-category counts of
    features supported by every program."""
    if not isinstance(matrix, SupportMatrix):
        raise ValueError("intersection counts require a per-feature support matrix")
    names = matrix.software
    subsets: dict[frozenset, int] = {}
    for row in matrix.flags:
        members = frozenset(n for n, hit in zip(names, row) if hit)
        subsets[members] = subsets.get(members, 0) + 1
    subset_list = [{"members": sorted(k), "count": v}
                   for k, v in subsets.items()]
    subset_list.sort(key=lambda s: (-s["count"], s["members"]))
    full = {}
    for category in sorted(set(matrix.categories)):
        keep = np.array([c == category for c in matrix.categories])
        flags = matrix.flags[keep]
        full[category] = {
            "all_software": int(flags.all(axis=1).sum()),
            "total": int(keep.sum()),
        }
    return {"subsets": subset_list, "full_intersection": full}
