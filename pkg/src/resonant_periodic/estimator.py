"""scikit-learn style front ends.

``ResonantPeriodicSolver`` fits the periodic solution for one parameter
triple and predicts it at arbitrary original times. ``BarrierTransformer``
maps rows of (mu, epsilon, omega) to their certificates.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, column_or_1d

from .barriers import certify, resonance_condition
from .exceptions import OscillatorError
from .model import ProblemParams, rescale_period
from .pipeline import solve_instance
from .solvers import SolverConfig
from .verify import back_transform


class ResonantPeriodicSolver(BaseEstimator):
    """Periodic solution of ``u'' + u + mu u^2 = epsilon cos(omega t)``.

    Parameters
    ----------
    mu, epsilon, omega : float
        Problem coefficients. ``4 |mu| |epsilon| < 1`` is required.
    n_grid : int, default=128
        Collocation points per period (power of two).
    iterate_tol, residual_tol : float
        Step and refined-residual tolerances of the monotone iteration.
    lam : float or None
        Monotone shift; ``None`` picks ``omega**-2 (1 + 2 |mu| R)``.
    r, R : float or None
        Bracket overrides, validated against the barrier roots.
    ascending : bool, default=True
        Also run the iteration upward from the lower barrier.
    allow_degenerate : bool, default=False
        Accept ``epsilon == 0``.

    Attributes
    ----------
    outcome_ : SolveOutcome
    certificate_ : BarrierCertificate
    solution_ : PeriodicFunction
        Solution in the rescaled variable ``s = omega t``.
    period_ : float
    n_iter_ : int
    """

    def __init__(
        self,
        mu=-0.1,
        epsilon=0.1,
        omega=1.0,
        *,
        n_grid=128,
        iterate_tol=1e-10,
        residual_tol=1e-8,
        lam=None,
        r=None,
        R=None,
        ascending=True,
        allow_degenerate=False,
    ):
        self.mu = mu
        self.epsilon = epsilon
        self.omega = omega
        self.n_grid = n_grid
        self.iterate_tol = iterate_tol
        self.residual_tol = residual_tol
        self.lam = lam
        self.r = r
        self.R = R
        self.ascending = ascending
        self.allow_degenerate = allow_degenerate

    def _problem(self):
        return ProblemParams(self.mu, self.epsilon, self.omega, self.allow_degenerate)

    def _config(self):
        return SolverConfig(
            n_grid=self.n_grid,
            lam=self.lam,
            iterate_tol=self.iterate_tol,
            residual_tol=self.residual_tol,
        )

    def fit(self, X=None, y=None):
        """Solve the boundary-value problem. ``X`` and ``y`` are ignored."""
        outcome = solve_instance(
            self._problem(), self._config(), self.r, self.R, ascending=self.ascending
        )
        self.outcome_ = outcome
        self.certificate_ = outcome.certification.cert
        self.solution_ = outcome.solution
        self.period_ = rescale_period(outcome.params)
        self.n_iter_ = outcome.descending.iterations
        return self

    def predict(self, X):
        """Solution values at original times ``X`` (shape (n,) or (n, 1))."""
        check_is_fitted(self, "solution_")
        t = column_or_1d(check_array(X, ensure_2d=False, dtype=np.float64))
        return self.solution_(np.mod(self.omega * t, 2.0 * np.pi))

    def sample(self):
        """Grid samples ``(t, u)`` over one period of the original time."""
        check_is_fitted(self, "solution_")
        sampled = back_transform(self.solution_, self.outcome_.params)
        return sampled.t, sampled.values

    def score(self, X=None, y=None):
        """Negative refined-grid residual (closer to 0 is better)."""
        check_is_fitted(self, "outcome_")
        return -self.outcome_.descending.residual_sup_refined


_CERT_FEATURES = ("cond", "ok", "reflected", "a2", "a1", "b2", "b1", "r", "R")


class BarrierTransformer(TransformerMixin, BaseEstimator):
    """Rows ``(mu, epsilon, omega)`` -> certificate columns.

    Uncertifiable rows get ``ok = 0`` and NaN roots.
    """

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 3:
            raise ValueError(f"expected 3 columns (mu, epsilon, omega), got {X.shape[1]}")
        self.n_features_in_ = 3
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected 3 columns, got {X.shape[1]}")
        out = np.full((X.shape[0], len(_CERT_FEATURES)), np.nan)
        for i, (mu, eps, omega) in enumerate(X):
            params = ProblemParams(mu, eps, omega)
            out[i, 0] = 4.0 * abs(mu) * abs(eps)
            out[i, 1] = 0.0
            out[i, 2] = float(mu > 0)
            if not resonance_condition(params):
                continue
            try:
                c = certify(params).cert
            except OscillatorError:
                continue
            out[i, 1] = 1.0
            out[i, 3:] = (c.a2, c.a1, c.b2, c.b1, c.r, c.R)
        return out

    def get_feature_names_out(self, input_features=None):
        return np.asarray(_CERT_FEATURES, dtype=object)
