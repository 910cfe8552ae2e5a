"""Global and local sensitivity of the supported queries.

Three engines are available for local sensitivity:

``analytic``
    Only the extreme-case neighbors are tried: add the universe minimum or
    maximum, remove the sample minimum or maximum. Exact for count, mean,
    median, min and max; an underestimate for variance on some inputs.
``exact``
    Every distinct neighbor is scored with closed-form incremental updates,
    O(|U| + |X| log |X|). This is the default for risk computation.
``brute-force``
    Direct re-evaluation of every neighbor; a test oracle only.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from . import queries
from .exceptions import ConfigError, InvariantViolation, UniverseTooLarge
from .model import QueryKind, Sample, Universe, apply_neighbor, neighbors

DEFAULT_MAX_DISTINCT = 8
DEFAULT_MAX_SIZE = 12


class Method(str, enum.Enum):
    ANALYTIC = "analytic"
    EXACT = "exact"
    BRUTE_FORCE = "brute-force"

    @classmethod
    def parse(cls, name: "str | Method") -> "Method":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise ConfigError(f"unknown sensitivity method {name!r}") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SensitivityPair:
    global_delta_f: float
    local_delta_v: float
    method: Method


def global_sensitivity(universe: Universe, query) -> float:
    """Largest change of ``query`` between any two neighboring data sets over ``universe``."""
    query = QueryKind.parse(query)
    if query is QueryKind.COUNT:
        return 1.0
    r = universe.range
    if query in (QueryKind.MEAN, QueryKind.MEDIAN):
        return r / 2
    if query in (QueryKind.MIN, QueryKind.MAX):
        return r
    return (r / 2) ** 2


# --- local sensitivity -------------------------------------------------------


def _insert_stat(s, pos, v, j):
    """Order statistic ``j`` of ``s`` after inserting ``v`` at sorted position ``pos``."""
    hi = s.size - 1
    left = s[np.clip(j, 0, hi)]
    right = s[np.clip(j - 1, 0, hi)]
    return np.where(j < pos, left, np.where(j == pos, v, right))


def _delete_stat(s, pos, j):
    hi = s.size - 1
    return np.where(j < pos, s[np.clip(j, 0, hi)], s[np.clip(j + 1, 0, hi)])


def _midpoint(a, b):
    return a / 2 + b / 2


def _median_changes(s, med, adds, removes):
    n = s.size
    out = []
    if adds.size:
        pos = np.searchsorted(s, adds)
        m = n + 1
        if m % 2:
            new = _insert_stat(s, pos, adds, m // 2)
        else:
            new = _midpoint(_insert_stat(s, pos, adds, m // 2 - 1), _insert_stat(s, pos, adds, m // 2))
        out.append(np.abs(new - med))
    if removes.size:
        pos = np.searchsorted(s, removes)
        m = n - 1
        if m % 2:
            new = _delete_stat(s, pos, m // 2)
        else:
            new = _midpoint(_delete_stat(s, pos, m // 2 - 1), _delete_stat(s, pos, m // 2))
        out.append(np.abs(new - med))
    return out


def _max_change(query: QueryKind, s: np.ndarray, adds: np.ndarray, removes: np.ndarray) -> float:
    """Largest |f(X) - f(X')| over adding each of ``adds`` and removing each of ``removes``.

    ``s`` is the sorted sample; ``removes`` must be values present in ``s``
    and is ignored for singleton samples.
    """
    n = s.size
    if n == 1:
        removes = removes[:0]
    if query is QueryKind.COUNT:
        return 1.0
    changes = []
    if query in (QueryKind.MEAN, QueryKind.VARIANCE):
        center = queries.mean(s)
        if query is QueryKind.MEAN:
            changes.append(np.abs(adds - center) / (n + 1))
            if removes.size:
                changes.append(np.abs(removes - center) / (n - 1))
        else:
            m2 = queries.variance(s) * n
            d = adds - center
            changes.append(np.abs(d * d * n / (n + 1) ** 2 - m2 / (n * (n + 1))))
            if removes.size:
                d = removes - center
                changes.append(np.abs(m2 / (n * (n - 1)) - d * d * n / (n - 1) ** 2))
    elif query is QueryKind.MEDIAN:
        changes.extend(_median_changes(s, queries.median(s), adds, removes))
    elif query is QueryKind.MIN:
        lo = s[0]
        changes.append(np.maximum(lo - adds, 0.0))
        if removes.size:
            unique_min = s[1] > lo
            changes.append(np.where((removes == lo) & unique_min, s[1] - lo, 0.0))
    else:
        hi = s[-1]
        changes.append(np.maximum(adds - hi, 0.0))
        if removes.size:
            unique_max = s[-2] < hi
            changes.append(np.where((removes == hi) & unique_max, hi - s[-2], 0.0))
    return float(max(c.max() for c in changes if c.size))


def local_sensitivity(universe: Universe, sample: Sample, query, method="exact") -> float:
    """Largest change of ``query`` between ``sample`` and any of its neighbors.

    >>> u = Universe([3, 1, 10, 675, 17])
    >>> round(local_sensitivity(u, u.sample([3, 1, 10, 17]), "mean", "analytic"), 6)
    133.45
    """
    query = QueryKind.parse(query)
    method = Method.parse(method)
    if method is Method.BRUTE_FORCE:
        return brute_force_local(universe, sample, query)
    s = np.sort(sample.values)
    if method is Method.EXACT:
        adds = universe.candidates
        removes = np.unique(s)
    else:
        lo, hi = universe.min_bound, universe.max_bound
        if query is QueryKind.MIN:
            adds, removes = np.array([lo]), s[:1]
        elif query is QueryKind.MAX:
            adds, removes = np.array([hi]), s[-1:]
        else:
            adds, removes = np.array([lo, hi]), s[[0, -1]]
    return _max_change(query, s, adds, removes)


def sensitivities(universe: Universe, sample: Sample, query, method="exact") -> SensitivityPair:
    """Global and local sensitivity together; local is clamped to global against rounding."""
    method = Method.parse(method)
    df = global_sensitivity(universe, query)
    dv = local_sensitivity(universe, sample, query, method)
    if dv > df * (1 + 1e-9) + 1e-300:
        raise InvariantViolation(f"local sensitivity {dv} exceeds global sensitivity {df}")
    return SensitivityPair(global_delta_f=df, local_delta_v=min(dv, df), method=method)


# --- brute-force oracles -----------------------------------------------------


def _oracle_multiset(universe: Universe):
    """Distinct values and multiplicities, counting unobserved bounds once."""
    values, counts = np.unique(universe.values, return_counts=True)
    extra = [b for b in (universe.min_bound, universe.max_bound) if b not in values]
    if extra:
        values = np.concatenate([values, np.unique(extra)])
        counts = np.concatenate([counts, np.ones(len(set(extra)), dtype=counts.dtype)])
        order = np.argsort(values)
        values, counts = values[order], counts[order]
    return values, counts


def _grid_statistic(query: QueryKind, values, grid, sizes):
    """Evaluate ``query`` on every data set given as a row of value counts."""
    if query is QueryKind.MIN:
        return values[np.argmax(grid > 0, axis=1)]
    if query is QueryKind.MAX:
        return values[values.size - 1 - np.argmax(grid[:, ::-1] > 0, axis=1)]
    means = (grid @ values) / sizes
    if query is QueryKind.MEAN:
        return means
    if query is QueryKind.VARIANCE:
        dev = values[None, :] - means[:, None]
        return (grid * dev * dev).sum(axis=1) / sizes
    cum = grid.cumsum(axis=1)

    def order_stat(j):
        return values[(cum <= j[:, None]).sum(axis=1)]

    half = sizes // 2
    odd = order_stat(half)
    even = order_stat(np.maximum(half - 1, 0)) / 2 + odd / 2
    return np.where(sizes % 2 == 1, odd, even)


def brute_force_global(
    universe: Universe,
    query,
    max_distinct: int = DEFAULT_MAX_DISTINCT,
    max_size: int = DEFAULT_MAX_SIZE,
) -> float:
    """Exhaustive global sensitivity over every pair of neighboring sub-multisets.

    Each non-empty sub-multiset X of the universe is compared with every
    non-empty X' obtained by removing one element; this covers all
    neighboring pairs because the relation is symmetric.
    """
    query = QueryKind.parse(query)
    values, counts = _oracle_multiset(universe)
    if values.size > max_distinct or counts.sum() > max_size:
        raise UniverseTooLarge(
            f"brute force needs <= {max_distinct} distinct values and <= {max_size} entries, "
            f"got {values.size} and {counts.sum()}"
        )
    if query is QueryKind.COUNT:
        return 1.0
    # every count vector, in mixed-radix order so that row index is computable
    grid = np.array(list(itertools.product(*(range(c + 1) for c in counts))), dtype=np.int64)
    radix = np.ones(values.size, dtype=np.int64)
    for i in range(values.size - 2, -1, -1):
        radix[i] = radix[i + 1] * (counts[i + 1] + 1)
    sizes = grid.sum(axis=1)
    stat = _grid_statistic(query, values, grid[1:], sizes[1:])
    stat = np.concatenate([[np.nan], stat])

    best = 0.0
    for i in range(values.size):
        ok = (grid[:, i] > 0) & (sizes > 1)
        idx = np.nonzero(ok)[0]
        if idx.size:
            best = max(best, float(np.abs(stat[idx] - stat[idx - radix[i]]).max()))
    return best


def brute_force_local(
    universe: Universe,
    sample: Sample,
    query,
    max_distinct: int | None = None,
) -> float:
    """Exhaustive local sensitivity by applying and re-evaluating every neighbor operation."""
    query = QueryKind.parse(query)
    if max_distinct is not None and universe.candidates.size > max_distinct:
        raise UniverseTooLarge(f"brute force needs <= {max_distinct} distinct universe values")
    base = queries.evaluate(query, sample)
    return max(abs(queries.evaluate(query, apply_neighbor(sample, op)) - base) for op in neighbors(sample))
