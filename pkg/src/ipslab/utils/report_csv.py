"""Plot-ready CSV output: one ``# config`` header line, then a fixed column set."""

import csv
import io
import json
from dataclasses import dataclass
from typing import Any

CSV_COLUMNS = (
    "family",
    "n",
    "field",
    "seed",
    "quantity",
    "value",
    "bound",
    "satisfied",
)


@dataclass(frozen=True)
class CsvRow:
    """One measured quantity of one instance/block/partition/trial."""

    family: str
    n: int
    field: str
    seed: int | None
    quantity: str
    value: Any
    bound: Any = None
    satisfied: bool | None = None

    def cells(self) -> list[str]:
        return [
            self.family,
            str(self.n),
            self.field,
            "" if self.seed is None else str(self.seed),
            self.quantity,
            _cell(self.value),
            _cell(self.bound),
            "" if self.satisfied is None else str(self.satisfied).lower(),
        ]


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple, set, frozenset)):
        return " ".join(str(v) for v in value)
    return str(value)


def render_csv(rows: list[CsvRow], config: dict[str, Any]) -> str:
    """Render *rows* below a ``# config {json}`` reproducibility header."""
    buffer = io.StringIO()
    buffer.write("# config " + json.dumps(config, sort_keys=True) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.cells())
    return buffer.getvalue()
