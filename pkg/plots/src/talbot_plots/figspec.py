"""Figure specifications and CSV loading."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field


KINDS = ("sobolev-curve", "param-region", "slope-fit", "amplitude-heatmap")

#: columns each figure kind requires in its (first) CSV
REQUIRED_COLUMNS = {
    "sobolev-curve": ["alpha", "s", "branch", "is_breakpoint"],
    "param-region": ["vertex", "u1", "u2"],
    "slope-fit": ["R", "radius", "count"],
    "amplitude-heatmap": ["p0", "p1", "abs"],
}


class SchemaError(ValueError):
    """A CSV does not carry the columns its figure kind needs."""


@dataclass
class FigureSpec:
    csv_paths: list[str]
    kind: str
    title: str = ""
    style: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}; "
                              f"expected one of {', '.join(KINDS)}")
        if not self.csv_paths:
            raise SchemaError("a figure needs at least one CSV path")


def load_csv(path: str) -> dict[str, list[str]]:
    """Columns of a talbot CSV as {name: values}; '#' lines skipped."""
    with open(path, encoding="utf-8") as fh:
        rows = [r for r in csv.reader(line for line in fh
                                      if not line.startswith("#"))]
    if not rows:
        raise SchemaError(f"{path}: empty CSV")
    header, body = rows[0], rows[1:]
    return {name: [r[i] for r in body] for i, name in enumerate(header)}


def load_for(spec: FigureSpec, path: str) -> dict[str, list[str]]:
    """Load one CSV and verify it matches the spec's kind."""
    cols = load_csv(path)
    missing = [c for c in REQUIRED_COLUMNS[spec.kind] if c not in cols]
    if missing:
        raise SchemaError(
            f"{path}: kind {spec.kind!r} needs columns "
            f"{REQUIRED_COLUMNS[spec.kind]}, missing {missing}; "
            f"found {sorted(cols)}")
    return cols
