"""scikit-learn style wrappers around the functional pipeline."""

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .bootstrap import xi_curve
from .bound import fit_vc
from .config import (
    BootstrapConfig,
    CGrid,
    DesignPoints,
    DiscretizationConfig,
    SelectionConfig,
)
from .data import Dataset
from .linear import ols_fit
from .selection import NestedModelList, corr_order, select_vc, sweep


class VCDimensionEstimator(BaseEstimator):
    """Estimate the VC dimension of the linear model spanned by all columns.

    fit(X, y) runs the double bootstrap over the design points and fits the
    bound curve; the result is exposed as d_hat_ and c_hat_ with the full
    discrepancy curve in curve_.
    """

    def __init__(
        self,
        design_points=None,
        m=10,
        b1=50,
        b2=50,
        seed=0,
        bound_policy="pooled-max",
        fixed_b=None,
        c_min=0.01,
        c_max=100.0,
        c_step=0.01,
        d_max=None,
        stratified=False,
        workers=1,
    ):
        self.design_points = design_points
        self.m = m
        self.b1 = b1
        self.b2 = b2
        self.seed = seed
        self.bound_policy = bound_policy
        self.fixed_b = fixed_b
        self.c_min = c_min
        self.c_max = c_max
        self.c_step = c_step
        self.d_max = d_max
        self.stratified = stratified
        self.workers = workers

    def _configs(self):
        if self.design_points is None:
            raise ValueError("design_points must be set before fitting")
        return (
            DesignPoints(tuple(self.design_points)),
            DiscretizationConfig(self.m, self.bound_policy, self.fixed_b),
            BootstrapConfig(self.b1, self.b2, self.seed, self.stratified, self.workers),
            CGrid(self.c_min, self.c_max, self.c_step),
        )

    def fit(self, X, y, blocks=None):
        X, y = check_X_y(X, y, y_numeric=True)
        design, dcfg, bcfg, grid = self._configs()
        data = Dataset(X, y, blocks=blocks)
        self.curve_ = xi_curve(data, range(X.shape[1]), design, dcfg, bcfg)
        est = fit_vc(self.curve_, grid, self.d_max)
        self.estimate_ = est
        self.d_hat_ = est.d_hat
        self.c_hat_ = est.c_hat
        self.n_features_in_ = X.shape[1]
        return self


class VCModelSelector(RegressorMixin, BaseEstimator):
    """Select a nested linear model by the VC dimension rule, then predict.

    The inclusion order is either the correlation ranking ('correlation')
    or the given column order ('given').  After the sweep the model chosen
    by the configured rule is refitted by least squares and used by
    predict; the full per-model report stays available as report_.
    """

    def __init__(
        self,
        design_points=None,
        order="correlation",
        rule="local",
        t=0.0,
        m=10,
        b1=50,
        b2=50,
        seed=0,
        folds=10,
        eta=0.05,
        d_max=None,
        stratified=False,
        workers=1,
    ):
        self.design_points = design_points
        self.order = order
        self.rule = rule
        self.t = t
        self.m = m
        self.b1 = b1
        self.b2 = b2
        self.seed = seed
        self.folds = folds
        self.eta = eta
        self.d_max = d_max
        self.stratified = stratified
        self.workers = workers

    def fit(self, X, y, blocks=None):
        X, y = check_X_y(X, y, y_numeric=True)
        if self.design_points is None:
            raise ValueError("design_points must be set before fitting")
        if self.order not in ("correlation", "given"):
            raise ValueError(f"unknown order {self.order!r}")
        data = Dataset(X, y, blocks=blocks)
        if self.order == "correlation":
            models = corr_order(data)
        else:
            models = NestedModelList(tuple(range(X.shape[1])))
        report = sweep(
            data,
            models,
            DesignPoints(tuple(self.design_points)),
            DiscretizationConfig(self.m),
            BootstrapConfig(self.b1, self.b2, self.seed, self.stratified, self.workers),
            eta=self.eta,
            folds=self.folds,
            d_max=self.d_max,
        )
        self.report_ = report
        self.model_order_ = models.order
        self.q_star_ = select_vc(report, SelectionConfig(self.rule, self.t))
        self.selected_columns_ = models.model(self.q_star_)
        fit = ols_fit(data, self.selected_columns_)
        self.fit_ = fit
        self.intercept_ = float(fit.coefficients[0])
        coef = np.zeros(X.shape[1])
        coef[list(self.selected_columns_)] = fit.coefficients[1:]
        self.coef_ = coef
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X)
        return self.intercept_ + X @ self.coef_
