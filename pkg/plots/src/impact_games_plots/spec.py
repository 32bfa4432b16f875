"""Figure specifications and tabular input loading.

This package only draws: every number comes from CSV/JSON files produced by
the impact-games command-line tool, never from recomputed mathematics.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

KINDS = ("trajectory", "grid-panel", "cumulative-cost", "cost-matrix-heatmap")

# line roles shared by every figure kind
ROLE_STYLES = {
    "unit": {"color": "tab:blue", "label": "unit trader a(t)"},
    "adversary": {"color": "tab:red", "label": "scaled adversary"},
    "reference": {"color": "0.6", "linestyle": "--", "label": "reference t"},
    "cost": {"color": "tab:green", "label": "cumulative cost"},
}


class InputError(ValueError):
    """Raised when a referenced input is missing or has the wrong schema."""


@dataclass(frozen=True)
class Table:
    """One parsed CLI output file."""

    path: Path
    columns: tuple[str, ...]
    rows: np.ndarray  # numeric columns only; label column kept separately
    labels: tuple[str, ...] = ()
    meta: dict | None = None

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise InputError(f"{self.path}: missing column {name!r} (has {', '.join(self.columns)})")
        return self.rows[:, self.columns.index(name)]


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: a kind, its input files and optional styling overrides."""

    kind: str
    inputs: tuple[Path, ...]
    title: str = ""
    styling: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown figure kind {self.kind!r}; known: {', '.join(KINDS)}")
        if not self.inputs:
            raise InputError("figure spec needs at least one input file")
        for path in self.inputs:
            if not Path(path).is_file():
                raise InputError(f"input file not found: {path}")


def load_table(path: Path) -> Table:
    """Parse one CLI CSV or JSON output file into numeric columns.

    A leading non-numeric column (such as the cost-matrix row labels) is split
    off into Table.labels.  A <name>.meta.json sidecar is attached if present.
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"input file not found: {path}")
    if path.suffix == ".json":
        doc = json.loads(path.read_text())
        try:
            columns, raw = list(doc["columns"]), doc["rows"]
        except (KeyError, TypeError):
            raise InputError(f"{path}: JSON input must carry 'columns' and 'rows'") from None
        meta = doc.get("meta")
    else:
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            try:
                columns = next(reader)
            except StopIteration:
                raise InputError(f"{path}: empty file") from None
            raw = list(reader)
        meta = None
        sidecar = path.with_suffix(".meta.json")
        if sidecar.is_file():
            meta = json.loads(sidecar.read_text())
    if not raw:
        raise InputError(f"{path}: no data rows")

    labels: tuple[str, ...] = ()
    first = raw[0][0]
    try:
        float(first)
    except (TypeError, ValueError):
        labels = tuple(str(row[0]) for row in raw)
        columns = columns[1:]
        raw = [row[1:] for row in raw]
    try:
        rows = np.array([[float(v) for v in row] for row in raw])
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: non-numeric data ({exc})") from None
    if rows.shape[1] != len(columns):
        raise InputError(f"{path}: {rows.shape[1]} data columns but {len(columns)} headers")
    return Table(path=path, columns=tuple(columns), rows=rows, labels=labels, meta=meta)
