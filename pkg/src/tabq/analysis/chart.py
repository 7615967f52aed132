"""Declarative, renderer-agnostic chart descriptions."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import ColumnTypeMismatch
from ..profiling import ColumnType, TableProfile


class ChartKind(str, Enum):
    BAR = "bar"
    LINE = "line"
    SCATTER = "scatter"
    HISTOGRAM = "histogram"
    BOX = "box"
    HEATMAP = "heatmap"
    PIE = "pie"


@dataclass(frozen=True)
class Encoding:
    column: str
    aggregate: str | None = None

    def to_dict(self) -> dict:
        return {"column": self.column, "aggregate": self.aggregate}


@dataclass
class ChartSpec:
    kind: ChartKind
    x: Encoding
    y: Encoding | None = None
    series: str | None = None
    title: str = ""

    def validate(self, profiles: TableProfile) -> None:
        names = {p.name for p in profiles.column_profiles}
        referenced = [self.x.column] + ([self.y.column] if self.y else [])
        if self.series:
            referenced.append(self.series)
        for column in referenced:
            if column not in names and not column.startswith("expr("):
                raise ColumnTypeMismatch(f"chart references unknown column {column!r}")
        if self.kind == ChartKind.HISTOGRAM and self.x.column in names:
            if profiles.profile(self.x.column).ctype != ColumnType.NUMERIC:
                raise ColumnTypeMismatch("histogram requires a numeric x column")
        if self.kind == ChartKind.PIE and self.x.column in names:
            if profiles.profile(self.x.column).ctype not in (
                ColumnType.CATEGORICAL,
                ColumnType.BOOLEAN,
                ColumnType.TEXT,
            ):
                raise ColumnTypeMismatch("pie requires a categorical x column")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "x": self.x.to_dict(),
            "y": self.y.to_dict() if self.y else None,
            "series": self.series,
            "title": self.title,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ChartSpec":
        return cls(
            kind=ChartKind(doc["kind"]),
            x=Encoding(doc["x"]["column"], doc["x"].get("aggregate")),
            y=Encoding(doc["y"]["column"], doc["y"].get("aggregate")) if doc.get("y") else None,
            series=doc.get("series"),
            title=doc.get("title", ""),
        )
