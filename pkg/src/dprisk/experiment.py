"""Repeated-sampling sweep over variables, queries, epsilons and sample proportions.

Every repetition draws a fresh sample without replacement from the
variable's universe. Global sensitivity comes from the whole universe,
local sensitivity from the drawn sample, and ``n`` is the sample size.

Seeds: the sample of repetition ``r`` in cell ``(v, q, e, p)`` (indices
into the config lists) is drawn with
``numpy.random.SeedSequence(master_seed, spawn_key=(v, q, e, p, r))``.
Output is therefore independent of the number of workers.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .exceptions import ConfigError, SampleTooSmall
from .ingest import IngestPolicy, load_column
from .model import QueryKind, Sample, Universe
from .risk import check_epsilon, report_from_sensitivities
from .sensitivity import Method, sensitivities

DEFAULT_EPSILONS = (0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
DEFAULT_PROPORTIONS = (0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0)
METRICS = ("rho_mw", "rho_tw", "rho_gl")


@dataclass(frozen=True)
class SweepConfig:
    variables: list[tuple[str, Universe]]
    queries: list[QueryKind] = field(default_factory=lambda: list(QueryKind))
    epsilons: list[float] = DEFAULT_EPSILONS
    proportions: list[float] = DEFAULT_PROPORTIONS
    repetitions: int = 100
    master_seed: int = 0
    local_method: Method = Method.EXACT

    def __post_init__(self):
        if not self.variables:
            raise ConfigError("at least one variable is required")
        if not (self.queries and self.epsilons and self.proportions):
            raise ConfigError("queries, epsilons and proportions must be non-empty")
        for p in self.proportions:
            if not 0 < p <= 1:
                raise ConfigError(f"proportion {p} is not in (0, 1]")
        if int(self.repetitions) != self.repetitions or self.repetitions < 1:
            raise ConfigError(f"repetitions must be a positive integer, got {self.repetitions}")
        if int(self.master_seed) != self.master_seed or self.master_seed < 0:
            raise ConfigError(f"master_seed must be a non-negative integer, got {self.master_seed}")
        set_ = object.__setattr__
        set_(self, "variables", [(str(label), u) for label, u in self.variables])
        set_(self, "queries", [QueryKind.parse(q) for q in self.queries])
        set_(self, "epsilons", [check_epsilon(e) for e in self.epsilons])
        set_(self, "proportions", [float(p) for p in self.proportions])
        set_(self, "repetitions", int(self.repetitions))
        set_(self, "master_seed", int(self.master_seed))
        set_(self, "local_method", Method.parse(self.local_method))
        if self.local_method is Method.BRUTE_FORCE:
            raise ConfigError("local_method must be 'analytic' or 'exact'")


@dataclass(frozen=True)
class SweepRow:
    variable: str
    query: str
    epsilon: float
    proportion: float
    sample_size: int
    repetition: int
    delta_f: float
    delta_v: float
    rho_mw: float
    rho_tw: float
    rho_gl: float


ROW_FIELDS = [f.name for f in fields(SweepRow)]


@dataclass(frozen=True)
class SkippedCell:
    variable: str
    query: str
    epsilon: float
    proportion: float
    reason: str


@dataclass
class SweepResult:
    rows: list[SweepRow]
    skipped: list[SkippedCell]

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def derive_seed(master_seed: int, *indices: int) -> int:
    ss = np.random.SeedSequence(master_seed, spawn_key=tuple(int(i) for i in indices))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def sample_size(n: int, proportion: float) -> int:
    # rounding guard: 0.29 * 100 must floor to 29, not 28
    return math.floor(round(proportion * n, 9))


def draw_sample(universe: Universe, proportion: float, seed: int) -> Sample:
    """Uniform sample without replacement of ``floor(proportion * |U|)`` entries, in universe order."""
    size = sample_size(len(universe), proportion)
    if size < 1:
        raise SampleTooSmall(
            f"proportion {proportion} of {len(universe)} values gives sample size {size}"
        )
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(len(universe), size=size, replace=False))
    return Sample(universe.values[idx], universe)


_WORKER_CONFIG = None


def _init_worker(config):
    global _WORKER_CONFIG
    _WORKER_CONFIG = config


def _run_indexed_cell(index):
    return _run_cell(_WORKER_CONFIG, *index)


def _run_cell(config, vi, qi, ei, pi):
    label, universe = config.variables[vi]
    query, eps, prop = config.queries[qi], config.epsilons[ei], config.proportions[pi]
    rows = []
    for rep in range(config.repetitions):
        seed = derive_seed(config.master_seed, vi, qi, ei, pi, rep)
        sample = draw_sample(universe, prop, seed)
        pair = sensitivities(universe, sample, query, config.local_method)
        report = report_from_sensitivities(query, eps, len(sample), pair)
        rows.append(
            SweepRow(
                variable=label,
                query=query.value,
                epsilon=eps,
                proportion=prop,
                sample_size=len(sample),
                repetition=rep,
                delta_f=report.delta_f,
                delta_v=report.delta_v,
                rho_mw=report.rho_mw,
                rho_tw=report.rho_tw,
                rho_gl=report.rho_gl,
            )
        )
    return rows


def run_sweep(config: SweepConfig, workers: int = 1) -> SweepResult:
    """Run every cell of ``config``; cells with too-small samples are reported as skipped."""
    cells = []
    skipped = []
    for vi, (label, universe) in enumerate(config.variables):
        for qi, query in enumerate(config.queries):
            for ei, eps in enumerate(config.epsilons):
                for pi, prop in enumerate(config.proportions):
                    size = sample_size(len(universe), prop)
                    if size < 1:
                        skipped.append(
                            SkippedCell(label, query.value, eps, prop, f"sample size {size} < 1")
                        )
                    else:
                        cells.append((vi, qi, ei, pi))
    if workers > 1 and len(cells) > 1:
        chunk = max(1, len(cells) // (4 * workers))
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(config,)) as pool:
            results = list(pool.map(_run_indexed_cell, cells, chunksize=chunk))
    else:
        results = [_run_cell(config, *c) for c in cells]
    # cells were enumerated in canonical index order, and map preserves order
    return SweepResult([row for cell in results for row in cell], skipped)


@dataclass(frozen=True)
class AggregateCell:
    variable: str
    query: str
    epsilon: float
    proportion: float
    repetitions: int
    stats: dict

    def to_record(self) -> dict:
        rec = {
            "variable": self.variable,
            "query": self.query,
            "epsilon": self.epsilon,
            "proportion": self.proportion,
            "repetitions": self.repetitions,
        }
        for metric in METRICS:
            for stat, value in self.stats[metric].items():
                rec[f"{metric}_{stat}"] = value
        return rec


def _describe(values) -> dict:
    v = np.asarray(values, dtype=np.float64)
    p25, p50, p75 = np.percentile(v, [25, 50, 75])
    return {
        "mean": math.fsum(v) / v.size,
        "min": float(v.min()),
        "p25": float(p25),
        "p50": float(p50),
        "p75": float(p75),
        "max": float(v.max()),
    }


def aggregate(rows) -> list[AggregateCell]:
    """Summary statistics of each risk metric over the repetitions of every cell."""
    groups: dict[tuple, list[SweepRow]] = {}
    for row in rows:
        groups.setdefault((row.variable, row.query, row.epsilon, row.proportion), []).append(row)
    cells = []
    for key, members in groups.items():
        stats = {m: _describe([getattr(r, m) for r in members]) for m in METRICS}
        cells.append(AggregateCell(*key, repetitions=len(members), stats=stats))
    return cells


# --- files --------------------------------------------------------------------


def _fmt(value):
    return repr(value) if isinstance(value, float) else str(value)


def write_rows_csv(rows, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(ROW_FIELDS)
        for row in rows:
            writer.writerow([_fmt(getattr(row, f)) for f in ROW_FIELDS])
    return path


def read_rows_csv(path) -> list[SweepRow]:
    types = {f.name: f.type for f in fields(SweepRow)}
    cast = {"str": str, "int": int, "float": float}
    with Path(path).open(newline="") as fh:
        return [SweepRow(**{k: cast[types[k]](v) for k, v in rec.items()}) for rec in csv.DictReader(fh)]


def write_aggregate_csv(cells, path) -> Path:
    path = Path(path)
    records = [c.to_record() for c in cells]
    with path.open("w", newline="") as fh:
        if records:
            writer = csv.DictWriter(fh, fieldnames=list(records[0]), lineterminator="\n")
            writer.writeheader()
            for rec in records:
                writer.writerow({k: _fmt(v) for k, v in rec.items()})
    return path


def write_json(records, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(records, indent=1) + "\n")
    return path


def rows_to_records(rows) -> list[dict]:
    return [asdict(r) for r in rows]


# --- config file ------------------------------------------------------------

_VARIABLE_KEYS = {"label", "path", "column", "missing_codes", "min_floor_zero"}
_CONFIG_KEYS = {f.name for f in fields(SweepConfig)}


def load_config(path) -> SweepConfig:
    """Read a JSON sweep configuration whose keys are the SweepConfig field names.

    ``variables`` is a list of objects with ``label``, ``path`` (relative to
    the config file), ``column`` and optionally ``missing_codes`` and
    ``min_floor_zero``. Omitted top-level keys take their defaults.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
    if "variables" not in raw or not isinstance(raw["variables"], list):
        raise ConfigError(f"{path}: 'variables' must be a list")
    variables = []
    for spec in raw["variables"]:
        if not isinstance(spec, dict) or "path" not in spec:
            raise ConfigError(f"{path}: each variable needs at least a 'path'")
        bad = set(spec) - _VARIABLE_KEYS
        if bad:
            raise ConfigError(f"{path}: unknown variable keys {sorted(bad)}")
        policy = IngestPolicy(
            column=spec.get("column", 0),
            missing_codes=spec.get("missing_codes"),
            min_floor_zero=bool(spec.get("min_floor_zero", False)),
        )
        label = spec.get("label", str(policy.column))
        variables.append((label, load_column(path.parent / spec["path"], policy, label=label)))
    kwargs = {k: v for k, v in raw.items() if k != "variables"}
    try:
        return SweepConfig(variables=variables, **kwargs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None
