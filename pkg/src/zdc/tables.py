"""Reproduction of the appendix tables with a per-column tolerance policy."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import D3Mode
from .detector import JMode
from .pipeline import RowResult, ScheduleRow, assemble_row, default_schedule, display_B

# Table names in appendix order and the columns each one shows.
TABLES = {
    "CB": ("C", "B"),
    "b": ("b1", "b2"),
    "params": ("u", "x", "v", "w"),
    "d": ("d11", "d12", "d21", "d22", "d3", "d4", "d5"),
    "c": ("c1", "c2", "c3", "c4", "c5"),
}

# (kind, tolerance).  "rel": relative, "abs": absolute, "display": printed
# 3-decimal B must match.  Columns without a policy are reported only.
TOLERANCE = {
    "C": ("rel", 0.02), "B": ("display", 0.0),
    "b1": ("rel", 0.02), "b2": ("rel", 0.02),
    "u": ("abs", 0.0), "x": ("abs", 0.0), "v": ("abs", 0.0), "w": ("abs", 0.0),
    "d4": ("rel", 0.02), "d5": ("rel", 0.001),
    "c1": ("abs", 0.005), "c2": ("rel", 0.02), "c3": ("rel", 0.02), "c4": ("rel", 0.02),
    "c5": ("rel", 0.10),
}


@dataclass(frozen=True)
class Cell:
    column: str
    value: float
    published: str | None
    diff: float | None
    ok: bool | None  # None: no published value or no policy


def compare_cell(column: str, value: float, published: str | None) -> Cell:
    if published is None:
        return Cell(column, value, None, None, None)
    pub = float(published)
    kind, tol = TOLERANCE.get(column, ("info", 0.0))
    if kind == "abs" or (kind == "info" and pub == 0):
        diff = value - pub
    else:
        diff = (value - pub) / pub
    if kind == "rel":
        ok = abs(diff) <= tol
    elif kind == "abs":
        ok = abs(diff) <= tol
    elif kind == "display":
        ok = display_B(value) == published
    else:
        ok = None
    return Cell(column, value, published, diff, ok)


@dataclass(frozen=True)
class ReproducedRow:
    index: int
    row: ScheduleRow
    result: RowResult

    def cells(self, columns) -> list[Cell]:
        rec = self.result.record()
        return [compare_cell(c, rec[c], self.row.published.get(c)) for c in columns]


def reproduce_schedule(d3_mode: D3Mode | None = None, j_mode: JMode = JMode.CERTIFIED,
                       rows: list[ScheduleRow] | None = None) -> list[ReproducedRow]:
    rows = default_schedule() if rows is None else rows
    return [ReproducedRow(i, r, assemble_row(r.spec, r.params, d3_mode=d3_mode, j_mode=j_mode))
            for i, r in enumerate(rows)]


def failures(rows: list[ReproducedRow], which: str) -> list[tuple[int, Cell]]:
    return [(r.index, c) for r in rows for c in r.cells(TABLES[which]) if c.ok is False]
