"""Nested model lists, criterion sweeps and the VC selection rule."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .bootstrap import xi_curve
from .bound import fit_vc
from .config import (
    GLOBAL_MIN,
    SMALLEST_LOCAL_MIN,
    BootstrapConfig,
    CGrid,
    DesignPoints,
    DiscretizationConfig,
    SelectionConfig,
)
from .criteria import ErmInputs, aic, bic, erm1, erm2, kfold_cv
from .data import Dataset, validate_dataset
from .errors import NoModelWithinTError, ZeroVarianceError
from .linear import ols_fit, squared_errors
from .rng import DOMAIN_CV, stream

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NestedModelList:
    """Column inclusion order; model q uses the first q columns."""

    order: Tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(j) for j in self.order)
        if len(set(order)) != len(order):
            raise ValueError("duplicate columns in model order")
        object.__setattr__(self, "order", order)

    @property
    def Q(self):
        return len(self.order)

    def model(self, q):
        if not 1 <= q <= self.Q:
            raise ValueError(f"q must be in [1, {self.Q}]")
        return self.order[:q]


@dataclass(frozen=True)
class ModelRecord:
    q: int
    columns: Tuple[int, ...]
    d_hat: float
    c_hat: float
    objective: float
    g: int
    erm1: float
    erm2: float
    aic: float
    bic: float
    cv: float


@dataclass(frozen=True)
class SelectionReport:
    """Per-model criterion values for a nested sweep."""

    records: Tuple[ModelRecord, ...]
    column_names: Tuple[str, ...] = ()

    FIELDS = ("q", "d_hat", "g", "c_hat", "objective", "erm1", "erm2", "aic", "bic", "cv")

    def g_values(self):
        return np.array([r.g for r in self.records])

    def d_values(self):
        return np.array([r.d_hat for r in self.records])

    def argmin(self, name):
        """q minimizing the named criterion column; ties go to smaller q."""
        vals = [getattr(r, name) for r in self.records]
        return self.records[int(np.argmin(vals))].q

    def to_tsv(self, path):
        with open(path, "w") as fh:
            fh.write("\t".join(self.FIELDS) + "\n")
            for r in self.records:
                cells = []
                for name in self.FIELDS:
                    v = getattr(r, name)
                    cells.append(str(v) if isinstance(v, int) else format(v, ".17g"))
                fh.write("\t".join(cells) + "\n")

    def to_json(self):
        return {
            "column_names": list(self.column_names),
            "records": [
                {name: getattr(r, name) for name in self.FIELDS}
                | {"columns": list(r.columns)}
                for r in self.records
            ],
        }


def corr_order(d: Dataset) -> NestedModelList:
    """Columns by decreasing |Pearson correlation with y|; ties keep file order."""
    validate_dataset(d)
    sx = d.X.std(axis=0, ddof=1)
    for j, s in enumerate(sx):
        if s <= 0:
            raise ZeroVarianceError(d.columns[j])
    if d.y.std(ddof=1) <= 0:
        raise ZeroVarianceError("response")
    xc = d.X - d.X.mean(axis=0)
    yc = d.y - d.y.mean()
    corr = (xc.T @ yc) / ((d.n - 1) * sx * d.y.std(ddof=1))
    # stable sort on -|corr| keeps the original index order within ties
    order = np.argsort(-np.abs(corr), kind="stable")
    return NestedModelList(tuple(int(j) for j in order))


def round_half_even(x):
    return int(np.rint(x))


def sweep(
    d: Dataset,
    models: NestedModelList,
    design: DesignPoints,
    dcfg: DiscretizationConfig = DiscretizationConfig(),
    bcfg: BootstrapConfig = BootstrapConfig(),
    grid: CGrid = CGrid(),
    eta: float = 0.05,
    folds: int = 10,
    d_max: Optional[float] = None,
) -> SelectionReport:
    """Fit every nested model and score it with all six criteria.

    The ERM risks plug in each model's own fitted d_hat rather than its
    parameter count; r_emp is the model's mean squared error on the full
    data.
    """
    validate_dataset(d)
    records = []
    for q in range(1, models.Q + 1):
        cols = models.model(q)
        curve = xi_curve(d, cols, design, dcfg, bcfg)
        est = fit_vc(curve, grid, d_max)
        fit = ols_fit(d, cols)
        se = squared_errors(fit, d)
        r_emp = float(se.mean())
        total = float(se.sum())
        k = q + 1  # intercept counts as a parameter
        inputs = ErmInputs(r_emp=r_emp, n=d.n, d=est.d_hat, m=dcfg.m, eta=eta)
        # one shared fold partition across models, so CV differences come
        # from the models rather than the splits
        cv = kfold_cv(d, cols, folds, stream(bcfg.seed, DOMAIN_CV))
        records.append(
            ModelRecord(
                q=q,
                columns=cols,
                d_hat=est.d_hat,
                c_hat=est.c_hat,
                objective=est.objective,
                g=abs(q - round_half_even(est.d_hat)),
                erm1=erm1(inputs),
                erm2=erm2(inputs),
                aic=aic(total, d.n, k),
                bic=bic(total, d.n, k),
                cv=cv,
            )
        )
        log.debug("q=%d d_hat=%.3f", q, est.d_hat)
    return SelectionReport(tuple(records), d.columns)


def select_vc(report: SelectionReport, cfg: SelectionConfig = SelectionConfig()) -> int:
    """Pick q* from g(q) = |q - round(d_hat_q)| under the configured rule.

    t > 0: smallest q with g(q) <= t (NoModelWithinTError if none).
    t = 0, smallest-local-min: first boundary-aware local minimum of g.
    global-min: argmin of g, ties to smaller q.
    """
    g = report.g_values()
    qs = [r.q for r in report.records]
    if cfg.t > 0:
        hits = np.flatnonzero(g <= cfg.t)
        if hits.size == 0:
            raise NoModelWithinTError(f"no model has |q - round(d_hat)| <= {cfg.t}")
        return qs[int(hits[0])]
    if cfg.rule == GLOBAL_MIN:
        return qs[int(np.argmin(g))]
    assert cfg.rule == SMALLEST_LOCAL_MIN
    for i in range(len(g)):
        left_ok = i == 0 or g[i] <= g[i - 1]
        right_ok = i == len(g) - 1 or g[i] <= g[i + 1]
        if left_ok and right_ok:
            return qs[i]
    return qs[int(np.argmin(g))]  # unreachable: some index is a local min
