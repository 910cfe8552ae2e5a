"""Statistic definitions shared by sensitivity, risk and release code."""

import math

import numpy as np

from .model import QueryKind, Sample


def mean(values) -> float:
    values = np.asarray(values, dtype=np.float64)
    return math.fsum(values) / values.size


def variance(values) -> float:
    """Population variance (divides by n), two-pass with compensated sums."""
    values = np.asarray(values, dtype=np.float64)
    center = mean(values)
    dev = values - center
    # second term corrects the residual error of the first-pass mean
    return max((math.fsum(dev * dev) - math.fsum(dev) ** 2 / values.size) / values.size, 0.0)


def median(values) -> float:
    """Middle order statistic, or the midpoint of the two middle ones for even sizes."""
    s = np.sort(np.asarray(values, dtype=np.float64))
    n = s.size
    mid = n // 2
    if n % 2:
        return float(s[mid])
    return float(s[mid - 1] / 2 + s[mid] / 2)


_RULES = {
    QueryKind.COUNT: lambda v: float(np.asarray(v).size),
    QueryKind.MEAN: mean,
    QueryKind.MEDIAN: median,
    QueryKind.MIN: lambda v: float(np.min(v)),
    QueryKind.MAX: lambda v: float(np.max(v)),
    QueryKind.VARIANCE: variance,
}


def evaluate_values(query, values) -> float:
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("queries are undefined on an empty data set")
    return _RULES[QueryKind.parse(query)](values)


def evaluate(query, sample: Sample) -> float:
    """Evaluate ``query`` on ``sample``.

    >>> from dprisk.model import Universe
    >>> u = Universe([3, 1, 10, 675, 17])
    >>> evaluate("median", u.sample([3, 1, 10, 17]))
    6.5
    """
    return evaluate_values(query, sample.values)
