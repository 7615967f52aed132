"""Differential (root-cause) analysis: rank factors by group separation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..dataset import Dataset
from ..errors import ColumnTypeMismatch, DegenerateSplit, TooFewRows
from ..profiling import ColumnType, TableProfile, cramers_v, numeric_values


class SplitKind(str, Enum):
    MEDIAN = "median"
    THRESHOLD = "threshold"
    CATEGORY = "category"


@dataclass(frozen=True)
class Split:
    kind: SplitKind = SplitKind.MEDIAN
    threshold: float | None = None
    level: str | None = None  # "high" group level for categorical targets


@dataclass
class FactorScore:
    column: str
    method: str      # "cohens_d" | "cramers_v"
    score: float
    high_n: int
    low_n: int


@dataclass
class RootCauseResult:
    target: str
    split_description: str
    high_n: int
    low_n: int
    factors: list[FactorScore]  # descending score
    split_value: float | None = None  # numeric cut, None for categorical splits


def _group_mask(
    dataset: Dataset, target: str, split: Split, profiles: TableProfile
) -> tuple[np.ndarray, np.ndarray, str, float | None]:
    ctype = profiles.profile(target).ctype
    if split.kind == SplitKind.CATEGORY or ctype in (
        ColumnType.CATEGORICAL,
        ColumnType.BOOLEAN,
    ):
        cells = dataset.column(target).cells
        levels = sorted({c for c in cells if c is not None})
        if len(levels) != 2:
            raise ColumnTypeMismatch(
                f"categorical target {target!r} must be binary, has {len(levels)} levels"
            )
        high_level = split.level if split.level in levels else levels[1]
        valid = np.array([c is not None for c in cells])
        high = np.array([c == high_level for c in cells]) & valid
        low = valid & ~high
        return high, low, f"{target} = {high_level} vs rest", None
    if ctype != ColumnType.NUMERIC:
        raise ColumnTypeMismatch(f"target {target!r} must be numeric or binary categorical")
    values = numeric_values(dataset.column(target))
    if split.kind == SplitKind.THRESHOLD and split.threshold is not None:
        cut = float(split.threshold)
        description = f"{target} > {_fmt(cut)}"
    else:
        present = values[~np.isnan(values)]
        if present.size == 0:
            raise DegenerateSplit("target has no values")
        cut = float(np.median(present))
        description = f"{target} > median ({_fmt(cut)})"
    valid = ~np.isnan(values)
    high = (values > cut) & valid
    low = (values <= cut) & valid
    return high, low, description, cut


def _fmt(value: float) -> str:
    # matches the insight renderer so split values stay numeral-traceable
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return format(value, ".6g")


def cohens_d(high: np.ndarray, low: np.ndarray) -> float | None:
    """Absolute standardized mean difference with pooled sample std."""
    nh, nl = high.size, low.size
    if nh < 2 or nl < 2:
        return None
    vh, vl = float(np.var(high, ddof=1)), float(np.var(low, ddof=1))
    pooled = ((nh - 1) * vh + (nl - 1) * vl) / (nh + nl - 2)
    if pooled == 0.0:
        return 0.0 if float(np.mean(high)) == float(np.mean(low)) else math.inf
    return abs(float(np.mean(high)) - float(np.mean(low))) / math.sqrt(pooled)


def root_cause(
    dataset: Dataset,
    target: str,
    profiles: TableProfile,
    split: Split | None = None,
    min_group: int = 4,
) -> RootCauseResult:
    """Split rows into high/low target groups and score every other column.

    Numeric factors score by |Cohen's d| (pooled std); categorical factors
    by Cramer's V against the group label. Output is sorted descending,
    ties kept in column order.
    """
    split = split or Split()
    high, low, description, cut = _group_mask(dataset, target, split, profiles)
    high_n, low_n = int(high.sum()), int(low.sum())
    if high_n == 0 or low_n == 0:
        raise DegenerateSplit(f"split leaves an empty group ({description})")
    if high_n < min_group or low_n < min_group:
        raise TooFewRows(f"each group needs at least {min_group} rows")

    factors: list[FactorScore] = []
    for order, profile in enumerate(profiles.column_profiles):
        name = profile.name
        if name == target:
            continue
        if profile.ctype == ColumnType.NUMERIC:
            values = numeric_values(dataset.column(name))
            h = values[high & ~np.isnan(values)]
            l_ = values[low & ~np.isnan(values)]
            d = cohens_d(h, l_)
            if d is None:
                continue
            if math.isinf(d):
                # zero pooled variance with distinct means: perfect separation
                d = 1e6
            factors.append(FactorScore(name, "cohens_d", d, int(h.size), int(l_.size)))
        elif profile.ctype in (ColumnType.CATEGORICAL, ColumnType.BOOLEAN):
            cells = dataset.column(name).cells
            labels: list[str | None] = []
            groups: list[str | None] = []
            for i, cell in enumerate(cells):
                if not (high[i] or low[i]):
                    continue
                labels.append(cell)
                groups.append("high" if high[i] else "low")
            v = cramers_v(labels, groups)
            if v is None:
                continue
            n_present = sum(1 for c in labels if c is not None)
            n_high = sum(
                1 for c, g in zip(labels, groups) if c is not None and g == "high"
            )
            factors.append(
                FactorScore(name, "cramers_v", v, n_high, n_present - n_high)
            )

    indexed = list(enumerate(factors))
    indexed.sort(key=lambda pair: (-pair[1].score, pair[0]))
    return RootCauseResult(
        target=target,
        split_description=description,
        high_n=high_n,
        low_n=low_n,
        factors=[f for _, f in indexed],
        split_value=cut,
    )
