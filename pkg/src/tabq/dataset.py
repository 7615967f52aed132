"""Tabular dataset snapshots and CSV ingestion."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .config import DEFAULT_NULL_TOKENS
from .errors import EmptyInput, HeaderDuplicate, UndecodableBytes


def normalize_name(name: str) -> str:
    """Trim and case-fold a column name for uniqueness checks."""
    return name.strip().casefold()


@dataclass
class Column:
    """One column of raw cells; ``None`` marks a missing cell."""

    name: str
    cells: list[str | None]

    def non_missing(self) -> list[str]:
        return [c for c in self.cells if c is not None]


@dataclass
class Dataset:
    """Immutable snapshot of a loaded table.

    Invariants: every column has exactly ``row_count`` cells and normalized
    column names are unique. Mutating a dataset after profiling starts is
    not supported anywhere in the engine.
    """

    project_id: str
    columns: list[Column]
    row_count: int
    warnings: list[str] = field(default_factory=list)

    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> Column:
        wanted = normalize_name(name)
        for col in self.columns:
            if normalize_name(col.name) == wanted:
                return col
        raise KeyError(name)

    def has_column(self, name: str) -> bool:
        wanted = normalize_name(name)
        return any(normalize_name(c.name) == wanted for c in self.columns)

    def row(self, i: int) -> dict[str, str | None]:
        return {c.name: c.cells[i] for c in self.columns}

    def subset(self, row_indices: list[int]) -> "Dataset":
        """New snapshot containing only the given rows, in the given order."""
        cols = [Column(c.name, [c.cells[i] for i in row_indices]) for c in self.columns]
        return Dataset(self.project_id, cols, len(row_indices), list(self.warnings))

    def with_column(self, column: Column) -> "Dataset":
        if len(column.cells) != self.row_count:
            raise ValueError("column length mismatch")
        return Dataset(
            self.project_id, self.columns + [column], self.row_count, list(self.warnings)
        )

    def to_dict(self) -> dict:
        return {
            "schema": "dataset/v1",
            "project_id": self.project_id,
            "row_count": self.row_count,
            "columns": [{"name": c.name, "cells": c.cells} for c in self.columns],
            "warnings": self.warnings,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Dataset":
        cols = [Column(c["name"], list(c["cells"])) for c in doc["columns"]]
        return cls(doc["project_id"], cols, doc["row_count"], list(doc.get("warnings", [])))


@dataclass(frozen=True)
class LoadOptions:
    delimiter: str = ","
    has_header: bool = True
    null_tokens: tuple[str, ...] = DEFAULT_NULL_TOKENS


def load_table(data: bytes, options: LoadOptions | None = None, project_id: str = "") -> Dataset:
    """Parse CSV bytes (RFC 4180 quoting) into a Dataset.

    Ragged rows are tolerated: short rows are padded with missing cells,
    extra trailing cells are dropped; both cases are recorded as warnings.
    """
    options = options or LoadOptions()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UndecodableBytes(f"input is not valid UTF-8: {exc}") from None

    if text.startswith("﻿"):
        text = text[1:]

    reader = csv.reader(io.StringIO(text), delimiter=options.delimiter)
    rows = [row for row in reader if row]
    if not rows:
        raise EmptyInput("no rows in input")

    if options.has_header:
        header = [h.strip() for h in rows[0]]
        data_rows = rows[1:]
    else:
        header = [f"column_{i + 1}" for i in range(len(rows[0]))]
        data_rows = rows

    seen: dict[str, str] = {}
    for name in header:
        key = normalize_name(name)
        if key in seen:
            raise HeaderDuplicate(f"duplicate column name after normalization: {name!r}")
        seen[key] = name

    null_set = {t.casefold() for t in options.null_tokens}
    n_cols = len(header)
    warnings: list[str] = []
    cells: list[list[str | None]] = [[] for _ in range(n_cols)]

    for row_idx, row in enumerate(data_rows):
        if len(row) < n_cols:
            warnings.append(f"row {row_idx}: {n_cols - len(row)} short cell(s) padded as missing")
            row = row + [None] * (n_cols - len(row))  # type: ignore[list-item]
        elif len(row) > n_cols:
            warnings.append(f"row {row_idx}: {len(row) - n_cols} extra cell(s) dropped")
            row = row[:n_cols]
        for col_idx in range(n_cols):
            raw = row[col_idx]
            if raw is None:
                cells[col_idx].append(None)
                continue
            value = raw.strip()
            cells[col_idx].append(None if value.casefold() in null_set else value)

    columns = [Column(header[i], cells[i]) for i in range(n_cols)]
    return Dataset(project_id, columns, len(data_rows), warnings)
