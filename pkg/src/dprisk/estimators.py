"""scikit-learn style front end.

``fit`` takes the universe (every value known for a variable); the other
methods take the queried sample.

>>> import numpy as np
>>> est = IdentifiabilityRisk(query="mean", epsilon=1.0).fit([3, 1, 10, 675, 17])
>>> est.global_sensitivity_
337.0
>>> round(est.report([3, 1, 10, 17]).delta_v, 6)
133.45
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .mechanism import laplace_noise, laplace_scale
from .model import QueryKind, Sample, Universe
from .queries import evaluate
from .risk import check_epsilon, risk_report
from .sensitivity import Method, global_sensitivity, local_sensitivity
from .validation import check_values


def _fit_universe(est, X):
    values = check_values(X)
    est.universe_ = Universe(values, min_bound=est.min_bound, max_bound=est.max_bound)
    est.n_features_in_ = 1
    return est.universe_


class IdentifiabilityRisk(BaseEstimator):
    """Many-worlds, two-worlds and worst-case risk of releasing one statistic.

    Parameters
    ----------
    query : str, default="mean"
        One of count, mean, median, min, max, variance.
    epsilon : float, default=1.0
        Privacy parameter of the Laplace release.
    method : {"exact", "analytic"}, default="exact"
        Local sensitivity engine.
    min_bound, max_bound : float, optional
        Override the universe bounds, e.g. ``min_bound=0`` when 0 is a valid answer.
    """

    def __init__(self, query="mean", epsilon=1.0, method="exact", min_bound=None, max_bound=None):
        self.query = query
        self.epsilon = epsilon
        self.method = method
        self.min_bound = min_bound
        self.max_bound = max_bound

    def fit(self, X, y=None):
        QueryKind.parse(self.query)
        Method.parse(self.method)
        check_epsilon(self.epsilon)
        universe = _fit_universe(self, X)
        self.global_sensitivity_ = global_sensitivity(universe, self.query)
        return self

    def _sample(self, X):
        check_is_fitted(self, "universe_")
        return Sample(check_values(X), self.universe_)

    def local_sensitivity(self, X):
        sample = self._sample(X)
        return local_sensitivity(self.universe_, sample, self.query, self.method)

    def report(self, X):
        sample = self._sample(X)
        return risk_report(self.universe_, sample, self.query, self.epsilon, self.method)

    def predict(self, X):
        """Risks of the sample ``X`` as ``[rho_mw, rho_tw, rho_gl]``."""
        r = self.report(X)
        return np.array([r.rho_mw, r.rho_tw, r.rho_gl])

    def score(self, X, y=None):
        """Two-worlds risk of releasing the query on ``X``."""
        return self.report(X).rho_tw


class LaplaceRelease(TransformerMixin, BaseEstimator):
    """Release a statistic of a sample with Laplace noise scaled to global sensitivity.

    ``transform`` returns a ``(1, 1)`` array with the noisy value. With an
    integer ``random_state`` each call is reproducible; ``None`` draws fresh
    entropy.
    """

    def __init__(self, query="mean", epsilon=1.0, random_state=None, min_bound=None, max_bound=None):
        self.query = query
        self.epsilon = epsilon
        self.random_state = random_state
        self.min_bound = min_bound
        self.max_bound = max_bound

    def fit(self, X, y=None):
        QueryKind.parse(self.query)
        universe = _fit_universe(self, X)
        self.scale_ = laplace_scale(global_sensitivity(universe, self.query), self.epsilon)
        return self

    def transform(self, X):
        check_is_fitted(self, "scale_")
        value = evaluate(self.query, Sample(check_values(X), self.universe_))
        if self.scale_ > 0:
            value += laplace_noise(self.scale_, self.random_state)
        return np.array([[value]])
