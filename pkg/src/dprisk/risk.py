"""Identifiability risk bounds for Laplace-noised query releases.

All three metrics are logistic in ``epsilon * delta_v / delta_f``:

* many-worlds ``1 / (1 + (n - 1) exp(-eps * dv / df))``: the attacker must
  single out the true data set among ``n`` candidates;
* two-worlds ``1 / (1 + exp(-eps * dv / df))``: presence or absence of one
  individual, i.e. many-worlds with ``n = 2``;
* global ``1 / (1 + exp(-eps))``: two-worlds with ``dv = df``.

When ``delta_f`` is zero the query output never varies, so the ratio is
taken to be zero.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .exceptions import InvalidEpsilon, InvalidSensitivity
from .model import QueryKind, Sample, Universe
from .sensitivity import Method, SensitivityPair, sensitivities


def check_epsilon(epsilon) -> float:
    try:
        epsilon = float(epsilon)
    except (TypeError, ValueError):
        raise InvalidEpsilon(f"epsilon must be a number, got {epsilon!r}") from None
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise InvalidEpsilon(f"epsilon must be finite and positive, got {epsilon}")
    return epsilon


def sensitivity_ratio(delta_v: float, delta_f: float) -> float:
    if delta_v < 0 or delta_f < 0 or not (math.isfinite(delta_v) and math.isfinite(delta_f)):
        raise InvalidSensitivity(f"sensitivities must be finite and non-negative, got {delta_v}, {delta_f}")
    if delta_v > delta_f:
        raise InvalidSensitivity(f"local sensitivity {delta_v} exceeds global sensitivity {delta_f}")
    if delta_f == 0:
        return 0.0
    return delta_v / delta_f


def risk_many_worlds(epsilon: float, n: int, delta_v: float, delta_f: float) -> float:
    epsilon = check_epsilon(epsilon)
    if n < 1 or int(n) != n:
        raise InvalidSensitivity(f"n must be a positive integer, got {n}")
    ratio = sensitivity_ratio(delta_v, delta_f)
    return 1.0 / (1.0 + (int(n) - 1) * math.exp(-epsilon * ratio))


def risk_two_worlds(epsilon: float, delta_v: float, delta_f: float) -> float:
    return risk_many_worlds(epsilon, 2, delta_v, delta_f)


def risk_global(epsilon: float) -> float:
    return risk_many_worlds(epsilon, 2, 1.0, 1.0)


@dataclass(frozen=True)
class RiskReport:
    query: QueryKind
    epsilon: float
    n: int
    delta_f: float
    delta_v: float
    method: Method
    ratio: float
    rho_mw: float
    rho_tw: float
    rho_gl: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["query"] = self.query.value
        d["method"] = self.method.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RiskReport":
        d = dict(d)
        d["query"] = QueryKind.parse(d["query"])
        d["method"] = Method.parse(d["method"])
        return cls(**d)


def report_from_sensitivities(query, epsilon: float, n: int, pair: SensitivityPair) -> RiskReport:
    epsilon = check_epsilon(epsilon)
    dv, df = pair.local_delta_v, pair.global_delta_f
    return RiskReport(
        query=QueryKind.parse(query),
        epsilon=epsilon,
        n=int(n),
        delta_f=df,
        delta_v=dv,
        method=pair.method,
        ratio=sensitivity_ratio(dv, df),
        rho_mw=risk_many_worlds(epsilon, n, dv, df),
        rho_tw=risk_two_worlds(epsilon, dv, df),
        rho_gl=risk_global(epsilon),
    )


def risk_report(universe: Universe, sample: Sample, query, epsilon: float, method="exact") -> RiskReport:
    """All three risk metrics for releasing ``query`` on ``sample``.

    ``n`` is the size of the queried sample, not of the universe.
    """
    epsilon = check_epsilon(epsilon)
    pair = sensitivities(universe, sample, query, method)
    return report_from_sensitivities(query, epsilon, len(sample), pair)
