"""Column tables with deterministic CSV and JSON renderings."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return "" if value is None else str(value)


def _json_cell(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


@dataclass
class OutputTable:
    columns: list[tuple[str, str]]
    rows: list[list[Any]] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.columns = [tuple(c) for c in self.columns]
        for row in self.rows:
            self._check(row)

    def _check(self, row) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} cells for {len(self.columns)} columns")

    def add_row(self, row: list[Any]) -> None:
        self._check(row)
        self.rows.append(list(row))

    def column(self, name: str) -> list[Any]:
        i = [c[0] for c in self.columns].index(name)
        return [row[i] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([name for name, _ in self.columns])
        for row in self.rows:
            writer.writerow([format_cell(v) for v in row])
        return buf.getvalue()

    def to_dict(self) -> dict[str, Any]:
        return {
            "columns": [{"name": n, "unit": u} for n, u in self.columns],
            "rows": [[_json_cell(v) for v in row] for row in self.rows],
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "OutputTable":
        data = json.loads(text)
        rows = [[math.nan if v is None else v for v in row] for row in data["rows"]]
        return cls([(c["name"], c["unit"]) for c in data["columns"]], rows, data.get("metadata", {}))

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")
