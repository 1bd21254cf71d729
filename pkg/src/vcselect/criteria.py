"""Model scoring criteria: penalized empirical risks, AIC, BIC, k-fold CV.

The two penalized risks come from Chernoff-style uniform bounds over the m
discretization intervals; both take the VC dimension d as a plug-in, so a
caller can supply either the fitted d_hat or a nominal model size.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .data import Dataset, validate_dataset
from .errors import DomainError, TooFewRowsError
from .linear import ols_fit, squared_errors


@dataclass(frozen=True)
class ErmInputs:
    """Inputs shared by erm1 and erm2."""

    r_emp: float
    n: int
    d: float
    m: int = 10
    eta: float = 0.05

    def __post_init__(self):
        if self.r_emp < 0:
            raise DomainError("r_emp must be >= 0")
        if not 0 < self.eta < 1:
            raise DomainError("eta must be in (0, 1)")
        if self.n < 1 or self.m < 1:
            raise DomainError("n and m must be >= 1")
        if self.d < 1:
            raise DomainError("d must be >= 1")
        if 2.0 * self.n * math.e / self.d < 1.0:
            raise DomainError("d must not exceed 2ne")


def log_capacity(i: ErmInputs) -> float:
    """A = ln((2m/eta) * (2ne/d)^d), expanded to avoid overflow."""
    return math.log(2.0 * i.m / i.eta) + i.d * math.log(2.0 * i.n * math.e / i.d)


def erm1(i: ErmInputs) -> float:
    """Additive penalized risk: r_emp + m * sqrt(A/n)."""
    return i.r_emp + i.m * math.sqrt(log_capacity(i) / i.n)


def erm2(i: ErmInputs) -> float:
    """Multiplicative penalized risk.

    r_emp + (m^2/2n) * A * (1 + sqrt(1 + 4n*r_emp/(m^2*A))); at r_emp = 0
    the radical collapses and the value is r_emp + (m^2/n) * A.
    """
    A = log_capacity(i)
    if A <= 0:
        raise DomainError("capacity term must be positive")
    # 4n*r_emp/(m^2*A) == 2*r_emp/base with base = m^2*A/(2n)
    base = i.m * i.m * A / (2.0 * i.n)
    return i.r_emp + base * (1.0 + math.sqrt(1.0 + 2.0 * i.r_emp / base))


def aic(rss: float, n: int, k: int) -> float:
    """n*ln(rss/n) + 2k (Gaussian profile likelihood, constants dropped)."""
    return n * math.log(rss / n) + 2.0 * k


def bic(rss: float, n: int, k: int) -> float:
    """n*ln(rss/n) + k*ln(n)."""
    return n * math.log(rss / n) + k * math.log(n)


def kfold_cv(d: Dataset, columns: Sequence[int], folds: int = 10, g=None) -> float:
    """Mean over folds of the held-out mean squared error.

    Fold membership is a seeded random partition of row indices into
    near-equal parts; pass the generator g to control it.
    """
    validate_dataset(d)
    if folds < 2:
        raise ValueError("folds must be >= 2")
    if d.n < folds:
        raise TooFewRowsError(f"{d.n} rows cannot fill {folds} folds")
    if g is None:
        g = np.random.default_rng(0)
    perm = g.permutation(d.n)
    parts = np.array_split(perm, folds)
    cols = list(columns)
    errs = np.empty(folds)
    for f, held in enumerate(parts):
        train = np.concatenate([p for j, p in enumerate(parts) if j != f])
        fit = ols_fit(d.take_rows(train), cols)
        errs[f] = squared_errors(fit, d.take_rows(held)).mean()
    return float(errs.mean())
