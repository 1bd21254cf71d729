import numpy as np
import pytest

from vcselect.linear import ols_fit
from vcselect.selection import corr_order
from vcselect.simulate import SimulationConfig, SimulationResult, simulate


def test_config_validation():
    with pytest.raises(ValueError):
        SimulationConfig(p=0, n=10)
    with pytest.raises(ValueError):
        SimulationConfig(p=2, n=0)
    with pytest.raises(ValueError):
        SimulationConfig(p=2, n=10, sigma_eps=0.0)
    with pytest.raises(ValueError):
        SimulationConfig(p=2, n=10, decoys=-1)


def test_shapes_and_names():
    out = simulate(SimulationConfig(p=3, n=40, decoys=2, seed=0))
    d = out.dataset
    assert d.X.shape == (40, 5)
    assert d.columns == ("x1", "x2", "x3", "decoy1", "decoy2")
    assert out.beta.shape == (6,)  # intercept + 3 true + 2 decoy zeros
    np.testing.assert_array_equal(out.beta[4:], [0.0, 0.0])


def test_output_is_standardized():
    d = simulate(SimulationConfig(p=4, n=200, decoys=3, seed=1)).dataset
    np.testing.assert_allclose(d.X.mean(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(d.X.std(axis=0, ddof=1), 1.0, rtol=1e-12)
    assert d.y.mean() == pytest.approx(0.0, abs=1e-12)
    assert d.y.std(ddof=1) == pytest.approx(1.0, rel=1e-12)


def test_deterministic_per_seed():
    a = simulate(SimulationConfig(p=2, n=30, decoys=1, seed=7))
    b = simulate(SimulationConfig(p=2, n=30, decoys=1, seed=7))
    assert np.array_equal(a.dataset.X, b.dataset.X)
    assert np.array_equal(a.dataset.y, b.dataset.y)
    assert np.array_equal(a.beta, b.beta)
    c = simulate(SimulationConfig(p=2, n=30, decoys=1, seed=8))
    assert not np.array_equal(a.dataset.y, c.dataset.y)


def test_decoys_extend_not_disturb():
    # adding decoys must not change the true covariates or the response
    plain = simulate(SimulationConfig(p=3, n=50, seed=3))
    extended = simulate(SimulationConfig(p=3, n=50, decoys=4, seed=3))
    raw_plain = plain.standardizer.inverse(plain.dataset)
    raw_ext = extended.standardizer.inverse(extended.dataset)
    np.testing.assert_allclose(raw_ext.X[:, :3], raw_plain.X, rtol=1e-12)
    np.testing.assert_allclose(raw_ext.y, raw_plain.y, rtol=1e-12)


def test_low_noise_ols_recovers_standardized_beta():
    cfg = SimulationConfig(p=4, n=3000, sigma_eps=1e-8, seed=5)
    out = simulate(cfg)
    fit = ols_fit(out.dataset, list(range(4)))
    want = out.standardizer.transform_beta(out.beta)
    np.testing.assert_allclose(fit.coefficients, want, atol=1e-6)


def test_statistical_moments_raw_units():
    cfg = SimulationConfig(p=3, n=20000, decoys=2, seed=11)
    out = simulate(cfg)
    raw = out.standardizer.inverse(out.dataset)
    np.testing.assert_allclose(raw.X.mean(axis=0), cfg.mu_x, atol=0.1)
    np.testing.assert_allclose(raw.X.std(axis=0, ddof=1), cfg.sigma_x, atol=0.1)
    resid = raw.y - (out.beta[0] + raw.X @ out.beta[1:])
    assert resid.std(ddof=1) == pytest.approx(cfg.sigma_eps, rel=0.05)
    assert abs(resid.mean()) < 0.02


def test_decoys_rank_behind_signal():
    out = simulate(SimulationConfig(p=5, n=2000, decoys=5, seed=13))
    order = corr_order(out.dataset).order
    assert set(order[:5]) == {0, 1, 2, 3, 4}


def test_result_carries_config():
    cfg = SimulationConfig(p=2, n=25, seed=17)
    out = simulate(cfg)
    assert isinstance(out, SimulationResult)
    assert out.config == cfg
