"""Configuration types shared by the estimation pipeline, plus JSON I/O."""

import json
import warnings
from dataclasses import asdict, dataclass, field
from typing import Optional, Tuple

from .errors import DesignPointsWarning

POOLED_MAX = "pooled-max"
FIXED_B = "fixed"

SMALLEST_LOCAL_MIN = "local"
GLOBAL_MIN = "global"

# resampling draws 2*n_l rows with replacement; well beyond the data size it
# is allowed but worth flagging
OVERSAMPLE_FACTOR = 2.0


@dataclass(frozen=True)
class DesignPoints:
    """Strictly increasing subsample sizes n_1 < ... < n_L."""

    points: Tuple[int, ...]

    def __post_init__(self):
        pts = [int(p) for p in self.points]
        if any(p < 1 for p in pts):
            raise ValueError("design points must be positive")
        cleaned = sorted(set(pts))
        if cleaned != pts:
            warnings.warn(
                "design points deduplicated and sorted", DesignPointsWarning
            )
        if len(cleaned) < 2:
            raise ValueError("need at least two distinct design points")
        object.__setattr__(self, "points", tuple(cleaned))

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def check_against(self, n, factor=OVERSAMPLE_FACTOR):
        """Warn when 2*n_L far exceeds the dataset size (allowed, but noisy)."""
        if 2 * self.points[-1] > factor * n:
            warnings.warn(
                f"largest design point {self.points[-1]} resamples "
                f"{2 * self.points[-1]} rows from only {n}",
                DesignPointsWarning,
            )


@dataclass(frozen=True)
class DiscretizationConfig:
    """Loss discretization: m intervals over [0, B)."""

    m: int = 10
    bound_policy: str = POOLED_MAX
    B: Optional[float] = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.bound_policy not in (POOLED_MAX, FIXED_B):
            raise ValueError(f"unknown bound policy {self.bound_policy!r}")
        if self.bound_policy == FIXED_B:
            if self.B is None or self.B <= 0:
                raise ValueError("fixed bound policy needs B > 0")
        elif self.B is not None:
            raise ValueError("B is only meaningful under the fixed policy")


@dataclass(frozen=True)
class BootstrapConfig:
    """Replicate counts and seeding for the double bootstrap."""

    b1: int = 50
    b2: int = 50
    seed: int = 0
    stratified: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.b1 < 1 or self.b2 < 1:
            raise ValueError("b1 and b2 must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class CGrid:
    """Grid for the bound-curve scale constant c."""

    c_min: float = 0.01
    c_max: float = 100.0
    c_step: float = 0.01

    def __post_init__(self):
        if not (0 < self.c_min <= self.c_max):
            raise ValueError("need 0 < c_min <= c_max")
        if self.c_step <= 0:
            raise ValueError("c_step must be positive")


@dataclass(frozen=True)
class SelectionConfig:
    """Model selection rule over g(q) = |q - round(d_hat_q)|."""

    rule: str = SMALLEST_LOCAL_MIN
    t: float = 0.0

    def __post_init__(self):
        if self.rule not in (SMALLEST_LOCAL_MIN, GLOBAL_MIN):
            raise ValueError(f"unknown selection rule {self.rule!r}")
        if self.t < 0:
            raise ValueError("t must be >= 0")


_TYPES = {
    "design_points": DesignPoints,
    "discretization": DiscretizationConfig,
    "bootstrap": BootstrapConfig,
    "c_grid": CGrid,
    "selection": SelectionConfig,
}


def configs_to_json(path=None, **configs):
    """Serialize any subset of the config types to a JSON string or file."""
    payload = {}
    for key, cfg in configs.items():
        if key not in _TYPES:
            raise KeyError(f"unknown config section {key!r}")
        payload[key] = asdict(cfg)
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def configs_from_json(source):
    """Inverse of configs_to_json; accepts a JSON string or a file path."""
    if isinstance(source, (str, bytes)) and not str(source).lstrip().startswith("{"):
        with open(source) as fh:
            payload = json.load(fh)
    else:
        payload = json.loads(source)
    out = {}
    for key, body in payload.items():
        if key not in _TYPES:
            raise KeyError(f"unknown config section {key!r}")
        if key == "design_points":
            body = {"points": tuple(body["points"])}
        out[key] = _TYPES[key](**body)
    return out
