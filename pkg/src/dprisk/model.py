"""Core domain types and the add/remove-one neighbor relation."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InputError, RemovalWouldEmpty, ValueNotInUniverse


class QueryKind(str, enum.Enum):
    COUNT = "count"
    MEAN = "mean"
    MEDIAN = "median"
    MIN = "min"
    MAX = "max"
    VARIANCE = "variance"

    @classmethod
    def parse(cls, name: "str | QueryKind") -> "QueryKind":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            choices = ", ".join(q.value for q in cls)
            raise InputError(f"unknown query {name!r}; expected one of {choices}") from None

    def __str__(self) -> str:
        return self.value


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Universe:
    """All values known to exist for one variable.

    ``min_bound`` and ``max_bound`` default to the observed extremes. A bound
    outside the observed range (e.g. a floor of 0 for a variable where 0 is a
    valid answer) is itself treated as a possible value.
    """

    values: np.ndarray
    min_bound: float = None
    max_bound: float = None
    label: str = ""
    distinct: np.ndarray = field(init=False, repr=False)
    candidates: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        values = _frozen_array(self.values)
        if values.size == 0:
            raise InputError("a universe needs at least one value")
        if not np.all(np.isfinite(values)):
            raise InputError("universe values must be finite")
        lo, hi = float(values.min()), float(values.max())
        min_bound = lo if self.min_bound is None else float(self.min_bound)
        max_bound = hi if self.max_bound is None else float(self.max_bound)
        if not (np.isfinite(min_bound) and np.isfinite(max_bound)):
            raise InputError("universe bounds must be finite")
        if min_bound > lo or max_bound < hi:
            raise InputError(
                f"bounds [{min_bound}, {max_bound}] do not cover observed range [{lo}, {hi}]"
            )
        distinct = np.unique(values)
        candidates = np.unique(np.concatenate([distinct, [min_bound, max_bound]]))
        distinct.flags.writeable = False
        candidates.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "min_bound", min_bound)
        object.__setattr__(self, "max_bound", max_bound)
        object.__setattr__(self, "distinct", distinct)
        object.__setattr__(self, "candidates", candidates)

    @property
    def range(self) -> float:
        return self.max_bound - self.min_bound

    def __len__(self) -> int:
        return self.values.size

    def contains(self, value: float) -> bool:
        return bool(np.isin(value, self.candidates))

    def sample(self, values) -> "Sample":
        return Sample(values, self)


@dataclass(frozen=True, eq=False)
class Sample:
    """A non-empty data set whose every value is known to the universe."""

    values: np.ndarray
    universe: Universe = field(repr=False)

    def __post_init__(self):
        values = _frozen_array(self.values)
        if values.size == 0:
            raise InputError("a sample needs at least one value")
        unknown = ~np.isin(values, self.universe.candidates)
        if unknown.any():
            bad = values[unknown][0]
            raise ValueNotInUniverse(f"value {bad!r} does not occur in universe {self.universe.label!r}")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class AddValue:
    value: float


@dataclass(frozen=True)
class RemoveIndex:
    index: int


NeighborOp = AddValue | RemoveIndex


def apply_neighbor(sample: Sample, op: NeighborOp) -> Sample:
    """Return the neighbor of ``sample`` obtained by adding or removing one individual."""
    if isinstance(op, AddValue):
        if not sample.universe.contains(op.value):
            raise ValueNotInUniverse(f"value {op.value!r} does not occur in the universe")
        return Sample(np.append(sample.values, float(op.value)), sample.universe)
    if isinstance(op, RemoveIndex):
        n = len(sample)
        if n == 1:
            raise RemovalWouldEmpty("cannot remove the only element of a sample")
        if not -n <= op.index < n:
            raise IndexError(f"index {op.index} out of range for sample of size {n}")
        return Sample(np.delete(sample.values, op.index), sample.universe)
    raise TypeError(f"not a neighbor operation: {op!r}")


def neighbors(sample: Sample):
    """Yield every distinct neighbor operation of ``sample``.

    Adding copies of the same value, or removing any of several equal values,
    produce identical data sets, so each distinct value appears once.
    """
    for v in sample.universe.candidates:
        yield AddValue(float(v))
    if len(sample) > 1:
        _, first = np.unique(sample.values, return_index=True)
        for i in first:
            yield RemoveIndex(int(i))
