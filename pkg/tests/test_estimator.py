import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from resonant_periodic import BarrierTransformer, ResonantPeriodicSolver
from resonant_periodic.exceptions import ResonanceConditionViolated


def test_get_set_params_and_clone():
    est = ResonantPeriodicSolver(mu=-0.2, epsilon=0.3, omega=2.0, n_grid=64)
    params = est.get_params()
    assert params["mu"] == -0.2 and params["n_grid"] == 64
    other = clone(est).set_params(epsilon=-0.3)
    assert other.epsilon == -0.3 and est.epsilon == 0.3


def test_predict_requires_fit():
    with pytest.raises(NotFittedError):
        ResonantPeriodicSolver().predict([0.0])


def test_fit_predict_positive_solution():
    est = ResonantPeriodicSolver(mu=-0.1, epsilon=0.1, omega=1.0).fit()
    t = np.linspace(0, 2 * np.pi, 17)
    u = est.predict(t)
    assert np.all(u >= est.certificate_.r)
    assert np.max(np.abs(u - (10 - 0.05 * np.cos(t)))) <= 5e-3
    assert est.period_ == pytest.approx(2 * np.pi)
    assert est.score() >= -1e-8
    assert est.n_iter_ > 0


def test_predict_is_periodic_in_original_time():
    est = ResonantPeriodicSolver(mu=-0.2, epsilon=0.4, omega=2.5, ascending=False).fit()
    t = np.random.default_rng(1).uniform(0, 10, size=20)
    assert np.allclose(est.predict(t), est.predict(t + est.period_), atol=1e-12)
    # 2-D column input is accepted
    assert np.allclose(est.predict(t[:, None]), est.predict(t))


def test_predict_matches_grid_samples():
    est = ResonantPeriodicSolver(mu=0.3, epsilon=0.5, omega=0.7, ascending=False).fit()
    t, u = est.sample()
    assert np.allclose(est.predict(t), u, atol=1e-12)
    assert np.all(u < 0)


def test_fit_raises_outside_condition():
    with pytest.raises(ResonanceConditionViolated):
        ResonantPeriodicSolver(mu=-0.5, epsilon=0.5).fit()


def test_degenerate_mode():
    est = ResonantPeriodicSolver(mu=-0.1, epsilon=0.0, allow_degenerate=True).fit()
    assert np.max(np.abs(est.predict(np.linspace(0, 6, 9)) - 10.0)) < 1e-10


def test_barrier_transformer():
    X = np.array([[-0.1, 1.0, 1.0], [-0.5, 0.5, 1.0], [0.1, 1.0, 1.0]])
    out = BarrierTransformer().fit_transform(X)
    names = list(BarrierTransformer().fit(X).get_feature_names_out())
    col = {n: i for i, n in enumerate(names)}
    assert out.shape == (3, len(names))
    assert out[0, col["ok"]] == 1 and out[0, col["a2"]] == pytest.approx(1.1270167, abs=1e-7)
    assert out[1, col["ok"]] == 0 and np.isnan(out[1, col["a2"]])
    assert out[1, col["cond"]] == 1.0
    assert out[2, col["reflected"]] == 1 and out[2, col["b1"]] == pytest.approx(10.9160798, abs=1e-7)


def test_barrier_transformer_in_pipeline():
    pipe = make_pipeline(FunctionTransformer(lambda X: X * np.array([1.0, 2.0, 1.0])), BarrierTransformer())
    out = pipe.fit_transform(np.array([[-0.1, 0.5, 1.0]]))
    assert out[0, 1] == 1


def test_barrier_transformer_rejects_wrong_width():
    with pytest.raises(ValueError):
        BarrierTransformer().fit(np.zeros((2, 2)))
