"""Load one numeric survey column as a universe and describe it.

CSV dialect: comma separated, header in the first row, quoted fields
allowed, ``.`` as decimal point. Row numbers in errors count the header as
row 1, so they match a spreadsheet view of the file.
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import queries
from .exceptions import ColumnNotFound, EmptyAfterFilter, InputError, ParseError
from .model import Universe


@dataclass(frozen=True)
class IngestPolicy:
    """How to read a column.

    ``missing_codes=None`` drops every strictly negative value (the SOEP
    convention); a tuple drops exactly the listed codes instead.
    ``min_floor_zero`` sets the universe's lower bound to 0, for variables
    where 0 is a valid answer even if nobody gave it.
    """

    column: str | int = 0
    missing_codes: tuple[float, ...] | None = None
    min_floor_zero: bool = False

    def __post_init__(self):
        if self.missing_codes is not None:
            codes = tuple(float(c) for c in self.missing_codes)
            if not all(math.isfinite(c) for c in codes):
                raise InputError("missing-value codes must be finite")
            object.__setattr__(self, "missing_codes", codes)

    def is_missing(self, value: float) -> bool:
        if self.missing_codes is None:
            return value < 0
        return value in self.missing_codes


def _column_index(header: list[str], column) -> int:
    if isinstance(column, int):
        if 0 <= column < len(header):
            return column
        raise ColumnNotFound(f"column index {column} out of range ({len(header)} columns)")
    names = [h.strip() for h in header]
    if column in names:
        return names.index(column)
    raise ColumnNotFound(f"column {column!r} not found; available: {', '.join(names)}")


def read_column(path, policy: IngestPolicy = IngestPolicy()) -> np.ndarray:
    """Retained values of one column, in file order. Blank cells count as missing."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyAfterFilter(f"{path}: file is empty") from None
        idx = _column_index(header, policy.column)
        kept = []
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if idx >= len(row):
                raise ParseError(row_no, "<missing field>")
            cell = row[idx].strip()
            if not cell:
                continue
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(row_no, cell) from None
            if not math.isfinite(value):
                raise ParseError(row_no, cell)
            if not policy.is_missing(value):
                kept.append(value)
    if not kept:
        raise EmptyAfterFilter(f"{path}: no valid values in column {policy.column!r} after filtering")
    return np.array(kept, dtype=np.float64)


def load_column(path, policy: IngestPolicy = IngestPolicy(), label: str | None = None) -> Universe:
    values = read_column(path, policy)
    if label is None:
        label = str(policy.column)
    return Universe(values, min_bound=0.0 if policy.min_floor_zero else None, label=label)


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    min: float
    max: float
    mean: float
    median: float
    std: float

    def to_dict(self) -> dict:
        return asdict(self)


def summarize(universe: Universe) -> DescriptiveStats:
    """Table-style summary of the observed values; ``std`` is the population standard deviation."""
    v = universe.values
    return DescriptiveStats(
        n=int(v.size),
        min=queries.evaluate_values("min", v),
        max=queries.evaluate_values("max", v),
        mean=queries.evaluate_values("mean", v),
        median=queries.evaluate_values("median", v),
        std=math.sqrt(queries.evaluate_values("variance", v)),
    )
