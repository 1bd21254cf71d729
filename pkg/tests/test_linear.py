import numpy as np
import pytest

from vcselect.data import Dataset
from vcselect.errors import (
    MissingColumnError,
    SingularCovarianceError,
    ZeroVarianceError,
)
from vcselect.linear import (
    LinearFit,
    min_norm_solve,
    design_matrix,
    ols_fit,
    ols_predict,
    rss,
    sphere,
    squared_errors,
    standardize,
)


def make_data(seed=0, n=60, p=4):
    rg = np.random.default_rng(seed)
    X = rg.normal(size=(n, p))
    beta = rg.normal(size=p + 1)
    y = beta[0] + X @ beta[1:] + 0.1 * rg.normal(size=n)
    return Dataset(X, y), beta


def test_min_norm_matches_lstsq_full_rank():
    rg = np.random.default_rng(1)
    for _ in range(20):
        n = int(rg.integers(5, 40))
        k = int(rg.integers(1, min(n, 8)))
        A = rg.normal(size=(n, k))
        b = rg.normal(size=n)
        x, rank = min_norm_solve(A, b)
        ref = np.linalg.lstsq(A, b, rcond=None)[0]
        assert rank == k
        np.testing.assert_allclose(x, ref, rtol=1e-9, atol=1e-9)


def test_min_norm_rank_deficient_is_min_norm():
    rg = np.random.default_rng(2)
    A = rg.normal(size=(30, 3))
    A = np.hstack([A, A[:, :1] + A[:, 1:2]])  # column 3 = col0 + col1
    b = rg.normal(size=30)
    x, rank = min_norm_solve(A, b)
    assert rank == 3
    # residual matches pinv solution and norm is minimal among solutions
    ref = np.linalg.pinv(A) @ b
    np.testing.assert_allclose(x, ref, rtol=1e-8, atol=1e-10)


def test_min_norm_underdetermined():
    rg = np.random.default_rng(3)
    A = rg.normal(size=(3, 7))
    b = rg.normal(size=3)
    x, rank = min_norm_solve(A, b)
    assert rank == 3
    np.testing.assert_allclose(A @ x, b, rtol=1e-10, atol=1e-10)


def test_min_norm_batched_bitwise_equals_single():
    rg = np.random.default_rng(4)
    A = rg.normal(size=(6, 25, 4))
    b = rg.normal(size=(6, 25, 1))
    xs, ranks = min_norm_solve(A, b)
    for i in range(6):
        xi, ri = min_norm_solve(A[i], b[i, :, 0])
        assert ri == ranks[i]
        assert np.array_equal(xs[i, :, 0], xi)  # exact, not approximate


def test_design_matrix_intercept_first():
    d, _ = make_data()
    A = design_matrix(d, [2, 0])
    assert A.shape == (d.n, 3)
    assert np.all(A[:, 0] == 1.0)
    assert np.array_equal(A[:, 1], d.X[:, 2])
    with pytest.raises(MissingColumnError):
        design_matrix(d, [0, 99])


def test_ols_recovers_coefficients():
    d, beta = make_data(seed=5, n=500)
    fit = ols_fit(d, [0, 1, 2, 3])
    assert fit.rank == 5
    np.testing.assert_allclose(fit.coefficients[0], beta[0], atol=0.05)
    np.testing.assert_allclose(fit.coefficients[1:], beta[1:], atol=0.05)
    # normal-equation residual orthogonality
    A = design_matrix(d, fit.column_ids)
    resid = d.y - ols_predict(fit, d)
    np.testing.assert_allclose(A.T @ resid, 0.0, atol=1e-8)


def test_rss_and_squared_errors_consistent():
    d, _ = make_data(seed=6)
    fit = ols_fit(d, [0, 1])
    se = squared_errors(fit, d)
    assert se.shape == (d.n,)
    assert np.all(se >= 0)
    assert rss(fit, d) == pytest.approx(se.sum())


def test_ols_predict_on_other_data():
    d, _ = make_data(seed=7)
    d2, _ = make_data(seed=8)
    fit = ols_fit(d, [1, 3])
    pred = ols_predict(fit, d2)
    manual = fit.coefficients[0] + d2.X[:, [1, 3]] @ fit.coefficients[1:]
    np.testing.assert_allclose(pred, manual, rtol=1e-12)


def test_standardize_moments_and_inverse():
    d, _ = make_data(seed=9, n=200)
    z, st = standardize(d)
    np.testing.assert_allclose(z.X.mean(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(z.X.std(axis=0, ddof=1), 1.0, rtol=1e-12)
    assert z.y.mean() == pytest.approx(0.0, abs=1e-12)
    assert z.y.std(ddof=1) == pytest.approx(1.0, rel=1e-12)
    back = st.inverse(z)
    np.testing.assert_allclose(back.X, d.X, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(back.y, d.y, rtol=1e-12, atol=1e-12)


def test_standardize_zero_variance_column():
    X = np.ones((10, 2))
    X[:, 1] = np.arange(10)
    with pytest.raises(ZeroVarianceError) as err:
        standardize(Dataset(X, np.arange(10.0), ("const", "ramp")))
    assert "const" in str(err.value)
    with pytest.raises(ZeroVarianceError):
        standardize(Dataset(X[:, 1:], np.ones(10)))


def test_transform_beta_identity():
    # standardize, refit, map raw coefficients into standardized units:
    # both routes must agree
    d, _ = make_data(seed=10, n=300)
    z, st = standardize(d)
    cols = [0, 1, 2, 3]
    raw = ols_fit(d, cols).coefficients
    std = ols_fit(z, cols).coefficients
    np.testing.assert_allclose(st.transform_beta(raw), std, rtol=1e-8, atol=1e-10)


def test_sphere_unit_covariance():
    rg = np.random.default_rng(11)
    base = rg.normal(size=(400, 3))
    mix = np.array([[2.0, 0.3, 0.0], [0.0, 1.0, 0.7], [0.0, 0.0, 0.5]])
    d = Dataset(base @ mix, rg.normal(size=400))
    s = sphere(d)
    Xc = s.X - s.X.mean(axis=0)
    cov = Xc.T @ Xc / (s.n - 1)
    np.testing.assert_allclose(cov, np.eye(3), atol=1e-10)
    assert np.array_equal(s.y, d.y)


def test_sphere_singular():
    rg = np.random.default_rng(12)
    X = rg.normal(size=(50, 2))
    X = np.hstack([X, X[:, :1]])  # exact copy makes the covariance singular
    with pytest.raises(SingularCovarianceError):
        sphere(Dataset(X, rg.normal(size=50)))


def test_linear_fit_intercept_property():
    fit = LinearFit(np.array([1.5, 2.0]), (0,), 2)
    assert fit.intercept == 1.5
