"""Synthetic regression data with optional decoy covariates.

Raw draws follow the simulation design the package is benchmarked on:
x_j ~ N(mu_x, sigma_x), beta_j ~ N(mu_beta, sigma_beta), eps ~ N(0,
sigma_eps), y = beta_0 + sum_j beta_j x_j + eps.  Decoy columns are drawn
like real covariates but contribute nothing to the response.  The returned
dataset is standardized (all covariates and the response), with the raw
coefficients and the standardizer kept so callers can map between units.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .data import Dataset
from .linear import Standardizer, standardize
from .rng import DOMAIN_SIM, stream


@dataclass(frozen=True)
class SimulationConfig:
    p: int
    n: int
    sigma_eps: float = 0.4
    mu_beta: float = 5.0
    sigma_beta: float = 3.0
    mu_x: float = 5.0
    sigma_x: float = 2.0
    decoys: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.p < 1 or self.n < 1:
            raise ValueError("p and n must be >= 1")
        if min(self.sigma_eps, self.sigma_beta, self.sigma_x) <= 0:
            raise ValueError("sigmas must be positive")
        if self.decoys < 0:
            raise ValueError("decoys must be >= 0")


@dataclass(frozen=True)
class SimulationResult:
    dataset: Dataset
    beta: np.ndarray  # raw-unit coefficients, intercept first, decoys zero
    standardizer: Standardizer
    config: SimulationConfig


def simulate(cfg: SimulationConfig) -> SimulationResult:
    """Generate one standardized dataset under the config.

    Draw order (one counter-based stream per seed): beta, true covariates,
    noise, decoy covariates; fixed so results are reproducible bit-for-bit.
    """
    g = stream(cfg.seed, DOMAIN_SIM)
    beta = g.normal(cfg.mu_beta, cfg.sigma_beta, size=cfg.p + 1)
    X_true = g.normal(cfg.mu_x, cfg.sigma_x, size=(cfg.n, cfg.p))
    eps = g.normal(0.0, cfg.sigma_eps, size=cfg.n)
    y = beta[0] + X_true @ beta[1:] + eps
    if cfg.decoys:
        X_decoy = g.normal(cfg.mu_x, cfg.sigma_x, size=(cfg.n, cfg.decoys))
        X = np.concatenate([X_true, X_decoy], axis=1)
    else:
        X = X_true
    names = tuple(f"x{j + 1}" for j in range(cfg.p)) + tuple(
        f"decoy{j + 1}" for j in range(cfg.decoys)
    )
    std_data, std = standardize(Dataset(X, y, names))
    full_beta = np.concatenate([beta, np.zeros(cfg.decoys)])
    return SimulationResult(std_data, full_beta, std, cfg)
