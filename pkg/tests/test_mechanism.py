import math

import numpy as np
import pytest

from dprisk.exceptions import InvalidEpsilon
from dprisk.mechanism import laplace_noise, laplace_scale, release
from dprisk.model import Universe


def test_scale():
    assert laplace_scale(337, 1) == 337
    assert laplace_scale(1, 0.5) == 2
    assert laplace_scale(0, 1) == 0
    with pytest.raises(InvalidEpsilon):
        laplace_scale(1, 0)


def test_zero_sensitivity_releases_exactly():
    u = Universe([5, 5])
    r = release(u, u.sample([5]), "mean", 1.0, seed=3)
    assert r.noisy_value == r.true_value == 5
    assert r.scale == 0


def test_release_is_deterministic(table1):
    x = table1.sample(table1.values)
    assert release(table1, x, "mean", 1.0, 11) == release(table1, x, "mean", 1.0, 11)
    assert release(table1, x, "mean", 1.0, 11) != release(table1, x, "mean", 1.0, 12)


def test_release_uses_global_sensitivity(table1):
    r = release(table1, table1.sample([3, 1]), "variance", 2.0, 0)
    assert r.scale == 113569 / 2
    assert r.true_value == 1.0


def test_bulk_and_scalar_draws_agree():
    bulk = laplace_noise(2.0, seed=5, size=3)
    rng = np.random.default_rng(5)
    assert [laplace_noise(2.0, rng) for _ in range(3)] == bulk.tolist()


def test_release_noise_over_seeds(table1):
    b = 337.0
    x = table1.sample(table1.values)
    true = table1.values.mean()
    noise = np.array([release(table1, x, "mean", 1.0, s).noisy_value - true for s in range(20_000)])
    assert abs(noise.mean()) < 5 * b * math.sqrt(2) / math.sqrt(noise.size)
    assert noise.var() == pytest.approx(2 * b * b, rel=0.08)


def test_noise_median_and_half_mass():
    b = 3.0
    n = 100_000
    noise = laplace_noise(b, seed=1, size=n)
    # median of Laplace has standard error 1 / (2 f(0) sqrt(n)) = b / sqrt(n)
    assert abs(np.median(noise)) < 5 * b / math.sqrt(n)
    share = np.mean(np.abs(noise) > b * math.log(2))
    assert abs(share - 0.5) < 3 * math.sqrt(0.25 / n)
