"""Feature encoding: numeric passthrough, datetime as epoch, one-hot categoricals."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..dataset import Dataset
from ..errors import SchemaMismatch
from ..profiling import ColumnType, TableProfile, parse_datetime, parse_number

UNKNOWN = "__unknown__"


@dataclass
class FeatureEncoding:
    """Column -> design-matrix mapping frozen at train time.

    Every categorical feature carries its seen levels plus an implicit
    unknown bucket, so rows with unseen levels still encode.
    """

    numeric: list[str] = field(default_factory=list)
    datetime: list[str] = field(default_factory=list)
    categorical: dict[str, list[str]] = field(default_factory=dict)

    def feature_names(self) -> list[str]:
        names = list(self.numeric) + list(self.datetime)
        for column, levels in self.categorical.items():
            names += [f"{column}={level}" for level in levels + [UNKNOWN]]
        return names

    def width(self) -> int:
        return (
            len(self.numeric)
            + len(self.datetime)
            + sum(len(levels) + 1 for levels in self.categorical.values())
        )

    def columns(self) -> list[str]:
        return self.numeric + self.datetime + list(self.categorical)

    def encode_value(self, column: str, raw) -> list[float]:
        """Encode one raw cell for `column` into its design-matrix slice."""
        if column in self.numeric or column in self.datetime:
            if isinstance(raw, (int, float)):
                return [float(raw)]
            value = (
                parse_number(str(raw))
                if column in self.numeric
                else parse_datetime(str(raw))
            )
            if value is None:
                raise SchemaMismatch(f"cannot parse {raw!r} for feature {column!r}")
            return [float(value)]
        levels = self.categorical[column]
        slot = [0.0] * (len(levels) + 1)
        label = str(raw)
        slot[levels.index(label) if label in levels else len(levels)] = 1.0
        return slot

    def encode_row(self, row: dict) -> list[float]:
        out: list[float] = []
        for column in self.columns():
            if column not in row or row[column] is None:
                raise SchemaMismatch(f"row is missing feature {column!r}")
            out.extend(self.encode_value(column, row[column]))
        return out

    def to_dict(self) -> dict:
        return {
            "numeric": self.numeric,
            "datetime": self.datetime,
            "categorical": self.categorical,
            "unknown_bucket": UNKNOWN,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "FeatureEncoding":
        return cls(
            numeric=list(doc["numeric"]),
            datetime=list(doc["datetime"]),
            categorical={k: list(v) for k, v in doc["categorical"].items()},
        )


def build_encoding(
    profiles: TableProfile, feature_columns: list[str]
) -> FeatureEncoding:
    encoding = FeatureEncoding()
    for name in feature_columns:
        profile = profiles.profile(name)
        if profile.ctype == ColumnType.NUMERIC:
            encoding.numeric.append(name)
        elif profile.ctype == ColumnType.DATETIME:
            encoding.datetime.append(name)
        elif profile.ctype in (ColumnType.CATEGORICAL, ColumnType.BOOLEAN):
            encoding.categorical[name] = []  # levels filled from training rows
    return encoding


def complete_rows(
    dataset: Dataset, target: str, encoding: FeatureEncoding
) -> list[dict]:
    """Raw rows (cell strings) where the target and every feature are usable."""
    rows: list[dict] = []
    columns = encoding.columns()
    for i in range(dataset.row_count):
        row = dataset.row(i)
        cell = row.get(target)
        if cell is None or parse_number(cell) is None:
            continue
        ok = True
        for column in columns:
            value = row.get(column)
            if value is None:
                ok = False
                break
            if column in encoding.numeric and parse_number(value) is None:
                ok = False
                break
            if column in encoding.datetime and parse_datetime(value) is None:
                ok = False
                break
        if ok:
            rows.append({c: row[c] for c in columns + [target]})
    return rows


def fit_levels(encoding: FeatureEncoding, rows: list[dict]) -> None:
    """Populate categorical level lists from the training rows."""
    for column in encoding.categorical:
        levels = sorted({str(row[column]) for row in rows})
        encoding.categorical[column] = levels


def design_matrix(
    encoding: FeatureEncoding, rows: list[dict], target: str
) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray([encoding.encode_row(row) for row in rows], dtype=float)
    y = np.asarray([float(parse_number(str(row[target]))) for row in rows], dtype=float)
    return X, y
