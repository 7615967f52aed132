"""Executed analysis results: tables, findings, chart."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from ..matching.plans import QueryPlan
from .chart import ChartSpec


@dataclass
class Table:
    """Small named table; cells are numbers or strings."""

    columns: list[str]
    rows: list[list]

    def to_dict(self) -> dict:
        return {"columns": self.columns, "rows": self.rows}

    @classmethod
    def from_dict(cls, doc: dict) -> "Table":
        return cls(list(doc["columns"]), [list(r) for r in doc["rows"]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return buf.getvalue()

    def column_values(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


@dataclass
class AnalysisResult:
    plan: QueryPlan
    chart: ChartSpec
    tables: dict[str, Table] = field(default_factory=dict)
    findings: list[tuple[str, object]] = field(default_factory=list)
    insight_text: str = ""
    followups: list[str] = field(default_factory=list)

    def finding(self, key: str, default=None):
        for k, v in self.findings:
            if k == key:
                return v
        return default

    def numeric_cells(self) -> set[float]:
        cells: set[float] = set()
        for table in self.tables.values():
            for row in table.rows:
                for cell in row:
                    if isinstance(cell, bool):
                        continue
                    if isinstance(cell, (int, float)):
                        cells.add(float(cell))
        return cells

    def to_dict(self) -> dict:
        return {
            "plan": self.plan.to_dict(),
            "chart": self.chart.to_dict(),
            "tables": {name: t.to_dict() for name, t in self.tables.items()},
            "findings": [[k, v] for k, v in self.findings],
            "insight_text": self.insight_text,
            "followups": self.followups,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "AnalysisResult":
        return cls(
            plan=QueryPlan.from_dict(doc["plan"]),
            chart=ChartSpec.from_dict(doc["chart"]),
            tables={name: Table.from_dict(t) for name, t in doc.get("tables", {}).items()},
            findings=[(k, v) for k, v in doc.get("findings", [])],
            insight_text=doc.get("insight_text", ""),
            followups=list(doc.get("followups", [])),
        )
