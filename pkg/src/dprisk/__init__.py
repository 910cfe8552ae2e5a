"""Identifiability risk of differentially private statistical queries."""

__version__ = "0.1.0"

from .estimators import IdentifiabilityRisk, LaplaceRelease
from .exceptions import DPRiskError
from .ingest import DescriptiveStats, IngestPolicy, load_column, summarize
from .mechanism import NoisyRelease, laplace_scale, release
from .model import AddValue, QueryKind, RemoveIndex, Sample, Universe, apply_neighbor
from .queries import evaluate
from .risk import RiskReport, risk_global, risk_many_worlds, risk_report, risk_two_worlds
from .sensitivity import (
    Method,
    SensitivityPair,
    brute_force_global,
    brute_force_local,
    global_sensitivity,
    local_sensitivity,
)

__all__ = [
    "AddValue",
    "DPRiskError",
    "DescriptiveStats",
    "IdentifiabilityRisk",
    "IngestPolicy",
    "LaplaceRelease",
    "Method",
    "NoisyRelease",
    "QueryKind",
    "RemoveIndex",
    "RiskReport",
    "Sample",
    "SensitivityPair",
    "Universe",
    "apply_neighbor",
    "brute_force_global",
    "brute_force_local",
    "evaluate",
    "global_sensitivity",
    "laplace_scale",
    "load_column",
    "local_sensitivity",
    "release",
    "risk_global",
    "risk_many_worlds",
    "risk_report",
    "risk_two_worlds",
    "summarize",
]
