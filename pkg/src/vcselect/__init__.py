"""VC dimension estimation and model selection for regression model classes."""

__version__ = "0.1.0"

from .bootstrap import (
    LossProfile,
    XiCurve,
    bootstrap_pair,
    discretize_losses,
    nu_values,
    r_b1,
    replicate_gap,
    xi_curve,
)
from .bound import VcEstimate, fit_vc, objective_f, phi
from .config import (
    BootstrapConfig,
    CGrid,
    DesignPoints,
    DiscretizationConfig,
    SelectionConfig,
    configs_from_json,
    configs_to_json,
)
from .criteria import ErmInputs, aic, bic, erm1, erm2, kfold_cv
from .data import Dataset, validate_dataset
from .estimators import VCDimensionEstimator, VCModelSelector
from .linear import (
    LinearFit,
    Standardizer,
    ols_fit,
    ols_predict,
    rss,
    sphere,
    squared_errors,
    standardize,
)
from .selection import (
    NestedModelList,
    SelectionReport,
    corr_order,
    select_vc,
    sweep,
)
from .simulate import SimulationConfig, SimulationResult, simulate

__all__ = [
    "__version__",
    "aic",
    "bic",
    "bootstrap_pair",
    "BootstrapConfig",
    "CGrid",
    "configs_from_json",
    "configs_to_json",
    "corr_order",
    "Dataset",
    "DesignPoints",
    "discretize_losses",
    "DiscretizationConfig",
    "erm1",
    "erm2",
    "ErmInputs",
    "fit_vc",
    "kfold_cv",
    "LinearFit",
    "LossProfile",
    "NestedModelList",
    "nu_values",
    "objective_f",
    "ols_fit",
    "ols_predict",
    "phi",
    "r_b1",
    "replicate_gap",
    "rss",
    "select_vc",
    "SelectionConfig",
    "SelectionReport",
    "simulate",
    "SimulationConfig",
    "SimulationResult",
    "sphere",
    "squared_errors",
    "standardize",
    "Standardizer",
    "sweep",
    "validate_dataset",
    "VcEstimate",
    "VCDimensionEstimator",
    "VCModelSelector",
    "XiCurve",
    "xi_curve",
]
