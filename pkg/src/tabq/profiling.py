"""Column type detection, per-column statistics, and cross-column matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum

import numpy as np

from .config import BOOLEAN_TOKENS, DATE_FORMATS, TypeDetectionConfig
from .dataset import Column, Dataset
from .errors import AllMissing


class ColumnType(str, Enum):
    NUMERIC = "Numeric"
    CATEGORICAL = "Categorical"
    DATETIME = "Datetime"
    BOOLEAN = "Boolean"
    TEXT = "Text"


def parse_number(cell: str) -> float | None:
    try:
        value = float(cell)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def parse_datetime(cell: str) -> float | None:
    """Epoch seconds for a cell in one of the accepted formats, else None."""
    text = cell.strip()
    for fmt in DATE_FORMATS:
        try:
            return datetime.strptime(text, fmt).timestamp()
        except ValueError:
            continue
    return None


def detect_column_type(
    cells: list[str | None], config: TypeDetectionConfig | None = None
) -> ColumnType:
    """Deterministic type detection over a column's non-missing raw cells."""
    config = config or TypeDetectionConfig()
    present = [c for c in cells if c is not None]
    if not present:
        raise AllMissing("column has no non-missing cells")

    n = len(present)
    numeric_hits = sum(1 for c in present if parse_number(c) is not None)
    if numeric_hits / n >= config.numeric_ratio:
        return ColumnType.NUMERIC

    datetime_hits = sum(1 for c in present if parse_datetime(c) is not None)
    if datetime_hits / n >= config.datetime_ratio:
        return ColumnType.DATETIME

    distinct = {c.casefold() for c in present}
    if distinct <= BOOLEAN_TOKENS and len(distinct) <= 2:
        return ColumnType.BOOLEAN

    if len(distinct) / n <= config.categorical_distinct_ratio and (
        len(distinct) <= config.categorical_distinct_cap
    ):
        return ColumnType.CATEGORICAL
    return ColumnType.TEXT


@dataclass
class NumericStats:
    mean: float
    sample_std: float
    min: float
    max: float
    median: float
    q1: float
    q3: float
    degenerate: bool = False  # single-sample std convention: reported as 0.0

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "sample_std": self.sample_std,
            "min": self.min,
            "max": self.max,
            "median": self.median,
            "q1": self.q1,
            "q3": self.q3,
            "degenerate": self.degenerate,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "NumericStats":
        return cls(**doc)


@dataclass
class ColumnProfile:
    name: str
    ctype: ColumnType
    count: int
    missing_count: int
    distinct_count: int
    numeric_stats: NumericStats | None = None
    categorical_stats: list[tuple[str, int]] | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ctype": self.ctype.value,
            "count": self.count,
            "missing_count": self.missing_count,
            "distinct_count": self.distinct_count,
            "numeric_stats": self.numeric_stats.to_dict() if self.numeric_stats else None,
            "categorical_stats": (
                [[v, f] for v, f in self.categorical_stats]
                if self.categorical_stats is not None
                else None
            ),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ColumnProfile":
        return cls(
            name=doc["name"],
            ctype=ColumnType(doc["ctype"]),
            count=doc["count"],
            missing_count=doc["missing_count"],
            distinct_count=doc["distinct_count"],
            numeric_stats=NumericStats.from_dict(doc["numeric_stats"])
            if doc.get("numeric_stats")
            else None,
            categorical_stats=[(v, f) for v, f in doc["categorical_stats"]]
            if doc.get("categorical_stats") is not None
            else None,
        )


class ProfileStatus(str, Enum):
    PENDING = "Pending"
    READY = "Ready"
    FAILED = "Failed"


@dataclass
class Matrix:
    """Square matrix keyed by column names; None marks a degenerate entry."""

    columns: list[str]
    values: list[list[float | None]]

    def get(self, a: str, b: str) -> float | None:
        return self.values[self.columns.index(a)][self.columns.index(b)]

    def to_dict(self) -> dict:
        return {"columns": self.columns, "values": self.values}

    @classmethod
    def from_dict(cls, doc: dict) -> "Matrix":
        return cls(doc["columns"], [list(row) for row in doc["values"]])


@dataclass
class TableProfile:
    column_profiles: list[ColumnProfile] = field(default_factory=list)
    correlation: Matrix | None = None
    association: Matrix | None = None
    status: ProfileStatus = ProfileStatus.PENDING
    row_count: int = 0

    def profile(self, name: str) -> ColumnProfile:
        for p in self.column_profiles:
            if p.name == name:
                return p
        raise KeyError(name)

    def columns_of_type(self, *ctypes: ColumnType) -> list[str]:
        return [p.name for p in self.column_profiles if p.ctype in ctypes]

    def to_dict(self) -> dict:
        return {
            "schema": "profile/v1",
            "status": self.status.value,
            "row_count": self.row_count,
            "column_profiles": [p.to_dict() for p in self.column_profiles],
            "correlation": self.correlation.to_dict() if self.correlation else None,
            "association": self.association.to_dict() if self.association else None,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TableProfile":
        return cls(
            column_profiles=[ColumnProfile.from_dict(p) for p in doc["column_profiles"]],
            correlation=Matrix.from_dict(doc["correlation"]) if doc.get("correlation") else None,
            association=Matrix.from_dict(doc["association"]) if doc.get("association") else None,
            status=ProfileStatus(doc["status"]),
            row_count=doc.get("row_count", 0),
        )


def numeric_values(column: Column) -> np.ndarray:
    """Column as float array; missing or unparseable cells become NaN."""
    out = np.full(len(column.cells), np.nan)
    for i, cell in enumerate(column.cells):
        if cell is None:
            continue
        value = parse_number(cell)
        if value is not None:
            out[i] = value
    return out


def datetime_values(column: Column) -> np.ndarray:
    """Column as epoch-second array; missing or unparseable cells become NaN."""
    out = np.full(len(column.cells), np.nan)
    for i, cell in enumerate(column.cells):
        if cell is None:
            continue
        value = parse_datetime(cell)
        if value is not None:
            out[i] = value
    return out


def quantitative_values(column: Column, ctype: ColumnType) -> np.ndarray:
    return datetime_values(column) if ctype == ColumnType.DATETIME else numeric_values(column)


def profile_column(column: Column, ctype: ColumnType) -> ColumnProfile:
    """Statistics over non-missing cells.

    Sample std uses the n-1 denominator; a single-sample column reports
    std 0.0 with the degenerate flag set. Quantiles use linear interpolation.
    """
    present = column.non_missing()
    if not present:
        raise AllMissing(f"column {column.name!r} has no non-missing cells")

    count = len(column.cells)
    missing = count - len(present)
    distinct = len(set(present))

    numeric_stats = None
    categorical_stats = None
    if ctype == ColumnType.NUMERIC:
        values = numeric_values(column)
        values = values[~np.isnan(values)]
        degenerate = values.size < 2
        std = 0.0 if degenerate else float(np.std(values, ddof=1))
        q1, median, q3 = (
            float(q) for q in np.quantile(values, [0.25, 0.5, 0.75], method="linear")
        )
        numeric_stats = NumericStats(
            mean=float(np.mean(values)),
            sample_std=std,
            min=float(np.min(values)),
            max=float(np.max(values)),
            median=median,
            q1=q1,
            q3=q3,
            degenerate=degenerate,
        )
    elif ctype in (ColumnType.CATEGORICAL, ColumnType.BOOLEAN):
        counts: dict[str, int] = {}
        for cell in present:
            counts[cell] = counts.get(cell, 0) + 1
        top = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:10]
        categorical_stats = top

    return ColumnProfile(
        name=column.name,
        ctype=ctype,
        count=count,
        missing_count=missing,
        distinct_count=distinct,
        numeric_stats=numeric_stats,
        categorical_stats=categorical_stats,
    )


def pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    """Pearson r over the pairwise-complete entries; None when degenerate."""
    mask = ~(np.isnan(x) | np.isnan(y))
    xs, ys = x[mask], y[mask]
    if xs.size < 2:
        return None
    xd = xs - xs.mean()
    yd = ys - ys.mean()
    sx = float(np.sqrt(np.sum(xd * xd)))
    sy = float(np.sqrt(np.sum(yd * yd)))
    if sx == 0.0 or sy == 0.0:
        return None
    r = float(np.sum(xd * yd) / (sx * sy))
    return max(-1.0, min(1.0, r))


def cramers_v(a: list[str | None], b: list[str | None]) -> float | None:
    """Cramer's V between two nominal columns over pairwise-complete rows."""
    pairs = [(x, y) for x, y in zip(a, b) if x is not None and y is not None]
    if len(pairs) < 2:
        return None
    levels_a = sorted({x for x, _ in pairs})
    levels_b = sorted({y for _, y in pairs})
    if len(levels_a) < 2 or len(levels_b) < 2:
        return None
    index_a = {v: i for i, v in enumerate(levels_a)}
    index_b = {v: i for i, v in enumerate(levels_b)}
    observed = np.zeros((len(levels_a), len(levels_b)))
    for x, y in pairs:
        observed[index_a[x], index_b[y]] += 1
    n = observed.sum()
    row = observed.sum(axis=1, keepdims=True)
    col = observed.sum(axis=0, keepdims=True)
    expected = row @ col / n
    chi2 = float(np.sum((observed - expected) ** 2 / expected))
    k = min(len(levels_a) - 1, len(levels_b) - 1)
    v = math.sqrt(chi2 / (n * k))
    return min(1.0, v)


def correlation_ratio(values: np.ndarray, labels: list[str | None]) -> float | None:
    """Correlation ratio (eta) of a quantitative column against a nominal one."""
    groups: dict[str, list[float]] = {}
    cleaned: list[float] = []
    for v, lab in zip(values, labels):
        if lab is None or np.isnan(v):
            continue
        groups.setdefault(lab, []).append(float(v))
        cleaned.append(float(v))
    if len(cleaned) < 2 or len(groups) < 1:
        return None
    arr = np.asarray(cleaned)
    total_ss = float(np.sum((arr - arr.mean()) ** 2))
    if total_ss == 0.0:
        return None
    grand_mean = arr.mean()
    between = sum(len(g) * (np.mean(g) - grand_mean) ** 2 for g in groups.values())
    eta = math.sqrt(max(0.0, float(between) / total_ss))
    return min(1.0, eta)


def _is_quantitative(ctype: ColumnType) -> bool:
    return ctype in (ColumnType.NUMERIC, ColumnType.DATETIME)


def correlation_matrix(dataset: Dataset, profiles: list[ColumnProfile]) -> tuple[Matrix, Matrix]:
    """Pearson matrix over numeric columns plus an association matrix over all.

    Association entries: |Pearson r| for quantitative pairs, Cramer's V for
    nominal pairs, correlation ratio for mixed pairs; all in [0, 1].
    Degenerate pairs (zero variance, single level) yield None, never NaN.
    """
    by_name = {p.name: p for p in profiles}
    numeric_cols = [p.name for p in profiles if p.ctype == ColumnType.NUMERIC]

    numeric_arrays = {name: numeric_values(dataset.column(name)) for name in numeric_cols}
    n_num = len(numeric_cols)
    corr: list[list[float | None]] = [[None] * n_num for _ in range(n_num)]
    for i in range(n_num):
        for j in range(i, n_num):
            if i == j:
                x = numeric_arrays[numeric_cols[i]]
                x = x[~np.isnan(x)]
                entry = 1.0 if x.size >= 2 and float(np.var(x)) > 0.0 else None
            else:
                entry = pearson(numeric_arrays[numeric_cols[i]], numeric_arrays[numeric_cols[j]])
            corr[i][j] = entry
            corr[j][i] = entry

    all_cols = [p.name for p in profiles]
    quant_arrays: dict[str, np.ndarray] = {}
    for name in all_cols:
        if _is_quantitative(by_name[name].ctype):
            quant_arrays[name] = quantitative_values(dataset.column(name), by_name[name].ctype)

    n_all = len(all_cols)
    assoc: list[list[float | None]] = [[None] * n_all for _ in range(n_all)]
    for i in range(n_all):
        for j in range(i, n_all):
            a, b = all_cols[i], all_cols[j]
            qa, qb = a in quant_arrays, b in quant_arrays
            if i == j:
                if qa:
                    x = quant_arrays[a]
                    x = x[~np.isnan(x)]
                    entry = 1.0 if x.size >= 2 and float(np.var(x)) > 0.0 else None
                else:
                    present = dataset.column(a).non_missing()
                    entry = 1.0 if len(set(present)) >= 2 else None
            elif qa and qb:
                r = pearson(quant_arrays[a], quant_arrays[b])
                entry = None if r is None else abs(r)
            elif qa and not qb:
                entry = correlation_ratio(quant_arrays[a], dataset.column(b).cells)
            elif qb and not qa:
                entry = correlation_ratio(quant_arrays[b], dataset.column(a).cells)
            else:
                entry = cramers_v(dataset.column(a).cells, dataset.column(b).cells)
            assoc[i][j] = entry
            assoc[j][i] = entry

    return Matrix(numeric_cols, corr), Matrix(all_cols, assoc)


def build_profile(
    dataset: Dataset, config: TypeDetectionConfig | None = None
) -> TableProfile:
    """Full synchronous profiling pass: types, statistics, matrices."""
    profiles: list[ColumnProfile] = []
    for column in dataset.columns:
        try:
            ctype = detect_column_type(column.cells, config)
        except AllMissing:
            # All-missing columns profile as Text with zero distinct values.
            profiles.append(
                ColumnProfile(
                    name=column.name,
                    ctype=ColumnType.TEXT,
                    count=len(column.cells),
                    missing_count=len(column.cells),
                    distinct_count=0,
                )
            )
            continue
        profiles.append(profile_column(column, ctype))

    correlation, association = correlation_matrix(dataset, profiles)
    return TableProfile(
        column_profiles=profiles,
        correlation=correlation,
        association=association,
        status=ProfileStatus.READY,
        row_count=dataset.row_count,
    )
