"""Laplace mechanism calibrated to global sensitivity."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Sample, Universe
from .queries import evaluate
from .risk import check_epsilon
from .sensitivity import global_sensitivity

_UNIT = float(2**53)


def laplace_scale(delta_f: float, epsilon: float) -> float:
    epsilon = check_epsilon(epsilon)
    if delta_f < 0 or not math.isfinite(delta_f):
        raise ValueError(f"sensitivity must be finite and non-negative, got {delta_f}")
    return delta_f / epsilon


def laplace_noise(scale: float, seed=None, size=None):
    """Draw Laplace(0, scale) noise by inverse-CDF sampling.

    A PCG64 generator seeded with ``seed`` yields 53-bit integers ``k``;
    ``u = (k + 1/2) / 2**53`` lies strictly inside (0, 1) and maps to
    ``scale * log(2u)`` below one half and ``-scale * log(2(1 - u))`` above.
    ``seed`` may also be an existing ``numpy.random.Generator``.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    k = rng.integers(0, 2**53, size=size, dtype=np.uint64)
    u = (k.astype(np.float64) + 0.5) / _UNIT
    noise = np.where(u < 0.5, np.log(2 * u), -np.log(2 * (1 - u))) * scale
    return float(noise) if size is None else noise


@dataclass(frozen=True)
class NoisyRelease:
    true_value: float
    noisy_value: float
    scale: float
    epsilon: float
    seed: int


def release(universe: Universe, sample: Sample, query, epsilon: float, seed: int) -> NoisyRelease:
    """Release ``query`` on ``sample`` with Laplace noise; deterministic per ``seed``."""
    epsilon = check_epsilon(epsilon)
    true_value = evaluate(query, sample)
    scale = laplace_scale(global_sensitivity(universe, query), epsilon)
    noisy = true_value + laplace_noise(scale, seed) if scale > 0 else true_value
    return NoisyRelease(true_value, noisy, scale, epsilon, int(seed))
