"""Ordinary least squares, standardization and sphering.

The solver composes the minimum-norm solution from an SVD by hand rather
than calling a LAPACK least-squares driver.  numpy's batched SVD gives
bitwise-identical factors to the single-matrix call, so the stacked solver
used inside the bootstrap agrees exactly with the one-at-a-time path the
reference tests take.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .data import Dataset
from .errors import MissingColumnError, SingularCovarianceError, ZeroVarianceError

# relative cutoff below which singular values count as zero
SVD_RTOL = 1e-10


@dataclass(frozen=True)
class LinearFit:
    """Fitted linear model: intercept first, then one coefficient per column."""

    coefficients: np.ndarray
    column_ids: Tuple[int, ...]
    rank: int

    @property
    def intercept(self):
        return self.coefficients[0]


@dataclass(frozen=True)
class Standardizer:
    """Column means and sds (response last) for undoing standardization."""

    x_mean: np.ndarray
    x_sd: np.ndarray
    y_mean: float
    y_sd: float

    def transform_beta(self, beta):
        """Map raw-unit coefficients (intercept first) to standardized units."""
        beta = np.asarray(beta, dtype=np.float64)
        out = np.empty_like(beta)
        out[1:] = beta[1:] * self.x_sd / self.y_sd
        # centering absorbs the intercept entirely
        out[0] = (
            beta[0] + np.dot(beta[1:], self.x_mean) - self.y_mean
        ) / self.y_sd
        return out

    def inverse(self, d: Dataset) -> Dataset:
        X = d.X * self.x_sd + self.x_mean
        y = d.y * self.y_sd + self.y_mean
        return Dataset(X, y, d.columns, d.blocks)


def min_norm_solve(A, b):
    """Minimum-norm least-squares solution of A @ x = b.

    Accepts a single (n, k) system or a stacked (..., n, k) batch; b has
    shape (..., n, 1) in the batched case.  Singular values below
    SVD_RTOL * sigma_max are treated as zero.
    """
    A = np.asarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    single = A.ndim == 2
    if single:
        A = A[None]
        b = b[None, :, None] if b.ndim == 1 else b[None]
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    cut = SVD_RTOL * s.max(axis=-1, keepdims=True)
    keep = s > cut
    inv = np.where(keep, 1.0 / np.where(keep, s, 1.0), 0.0)
    x = np.matmul(
        np.swapaxes(Vt, -1, -2), inv[..., None] * np.matmul(np.swapaxes(U, -1, -2), b)
    )
    rank = keep.sum(axis=-1)
    if single:
        return x[0, :, 0], int(rank[0])
    return x, rank


def design_matrix(d: Dataset, columns: Sequence[int]) -> np.ndarray:
    """[1 | X[:, columns]] with the intercept in the first column."""
    cols = list(columns)
    for j in cols:
        if not (0 <= j < d.p):
            raise MissingColumnError(j)
    return np.concatenate([np.ones((d.n, 1)), d.X[:, cols]], axis=1)


def ols_fit(d: Dataset, columns: Sequence[int]) -> LinearFit:
    """Least squares with intercept on the given columns (minimum norm)."""
    A = design_matrix(d, columns)
    beta, rank = min_norm_solve(A, d.y)
    return LinearFit(beta, tuple(int(j) for j in columns), rank)


def ols_predict(fit: LinearFit, d: Dataset) -> np.ndarray:
    A = design_matrix(d, fit.column_ids)
    return A @ fit.coefficients


def squared_errors(fit: LinearFit, d: Dataset) -> np.ndarray:
    r = ols_predict(fit, d) - d.y
    return r * r


def rss(fit: LinearFit, d: Dataset) -> float:
    return float(np.sum(squared_errors(fit, d)))


def standardize(d: Dataset) -> Tuple[Dataset, Standardizer]:
    """Center and scale every covariate and the response (sd with ddof=1)."""
    x_mean = d.X.mean(axis=0)
    x_sd = d.X.std(axis=0, ddof=1) if d.n > 1 else np.zeros(d.p)
    for j, s in enumerate(x_sd):
        if s <= 0:
            raise ZeroVarianceError(d.columns[j])
    y_mean = float(d.y.mean())
    y_sd = float(d.y.std(ddof=1)) if d.n > 1 else 0.0
    if y_sd <= 0:
        raise ZeroVarianceError("response")
    out = Dataset((d.X - x_mean) / x_sd, (d.y - y_mean) / y_sd, d.columns, d.blocks)
    return out, Standardizer(x_mean, x_sd, y_mean, y_sd)


def sphere(d: Dataset) -> Dataset:
    """Decorrelate covariates to unit sample covariance (symmetric whitening)."""
    Xc = d.X - d.X.mean(axis=0)
    cov = (Xc.T @ Xc) / (d.n - 1)
    w, V = np.linalg.eigh(cov)
    if w.min() <= 1e-12 * max(w.max(), 1.0):
        raise SingularCovarianceError(
            "covariate covariance is singular; drop collinear columns first"
        )
    W = V @ np.diag(1.0 / np.sqrt(w)) @ V.T
    return Dataset(Xc @ W, d.y, d.columns, d.blocks)
