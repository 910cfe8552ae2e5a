import json
import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from dprisk.exceptions import InvalidEpsilon, InvalidSensitivity
from dprisk.model import Universe
from dprisk.risk import RiskReport, risk_global, risk_many_worlds, risk_report, risk_two_worlds

from .conftest import WITHOUT_MAX

# reference values below were evaluated with mpmath at 40 digits


def test_global_at_epsilon_one():
    assert risk_global(1) == pytest.approx(0.731, abs=1e-3)
    assert risk_global(1) == pytest.approx(0.7310585786300049, rel=1e-14)


def test_global_values():
    assert risk_global(5) == pytest.approx(0.9933071490757151, rel=1e-14)
    assert risk_global(1e-9) == pytest.approx(0.5, abs=1e-9)


def test_many_worlds_values():
    assert risk_many_worlds(1, 2, 3, 3) == pytest.approx(0.7310585786300049, rel=1e-14)
    assert risk_many_worlds(10, 10_000, 1, 1) == pytest.approx(0.6877797168020754, rel=1e-14)
    assert risk_many_worlds(0.3, 1, 0.2, 1) == 1.0


def test_two_worlds_values():
    assert risk_two_worlds(2, 1, 4) == pytest.approx(0.6224593312018546, rel=1e-14)
    assert risk_two_worlds(7, 0, 3) == 0.5


def test_zero_global_sensitivity():
    assert risk_two_worlds(1, 0, 0) == 0.5
    assert risk_many_worlds(1, 2, 0, 0) == 0.5


@pytest.mark.parametrize("dv, df", [(2, 1), (-1, 1), (0, -1), (math.inf, math.inf)])
def test_invalid_sensitivities(dv, df):
    with pytest.raises(InvalidSensitivity):
        risk_two_worlds(1, dv, df)


@pytest.mark.parametrize("eps", [0, -1, math.nan, math.inf, "x"])
def test_invalid_epsilon(eps):
    with pytest.raises(InvalidEpsilon):
        risk_global(eps)


def test_invalid_n():
    with pytest.raises(InvalidSensitivity):
        risk_many_worlds(1, 0, 1, 1)


def test_report_count(table1):
    r = risk_report(table1, table1.sample(table1.values), "count", 1.0)
    assert r.ratio == 1
    assert r.rho_tw == r.rho_gl == pytest.approx(0.7310585786300049)
    assert r.rho_mw == pytest.approx(0.4046096751916897, rel=1e-14)


def test_report_mean_worked_example(table1):
    r = risk_report(table1, table1.sample(WITHOUT_MAX), "mean", 1.0, "analytic")
    assert r.n == 4
    assert r.delta_f == 337
    assert r.delta_v == pytest.approx(133.45)
    assert r.ratio == pytest.approx(133.45 / 337)
    assert r.rho_tw == pytest.approx(0.5977248118884214, rel=1e-12)


def test_report_constant_universe():
    u = Universe([3, 3, 3])
    r = risk_report(u, u.sample([3, 3]), "mean", 2.0)
    assert r.ratio == 0
    assert r.rho_tw == 0.5


def test_report_json_roundtrip(table1):
    r = risk_report(table1, table1.sample(WITHOUT_MAX), "variance", 0.7)
    again = RiskReport.from_dict(json.loads(json.dumps(r.to_dict())))
    assert again == r


eps = st.floats(0.01, 10)
ratio = st.floats(0.0, 1.0)
n = st.integers(2, 10**6)


@given(eps, n, ratio)
def test_ordering_and_bounds(e, k, r):
    mw, tw, gl = risk_many_worlds(e, k, r, 1.0), risk_two_worlds(e, r, 1.0), risk_global(e)
    assert 0 < mw <= tw <= gl < 1
    assert tw >= 0.5


@given(eps, ratio)
def test_reductions(e, r):
    assert risk_many_worlds(e, 2, r, 1.0) == risk_two_worlds(e, r, 1.0)
    assert risk_two_worlds(e, 4.2, 4.2) == risk_global(e)


@given(eps, eps, n, st.floats(0.01, 1.0))
def test_monotone_in_epsilon(e1, e2, k, r):
    assume(abs(e1 - e2) > 1e-3)
    lo, hi = sorted((e1, e2))
    assert risk_two_worlds(lo, r, 1) < risk_two_worlds(hi, r, 1)
    assert risk_global(lo) < risk_global(hi)
    assert risk_many_worlds(lo, k, r, 1) < risk_many_worlds(hi, k, r, 1)


@given(eps, n, n, ratio)
def test_many_worlds_decreasing_in_n(e, k1, k2, r):
    assume(k1 != k2)
    lo, hi = sorted((k1, k2))
    assert risk_many_worlds(e, lo, r, 1) > risk_many_worlds(e, hi, r, 1)
