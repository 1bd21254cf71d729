import json

import pytest

from vcselect.config import (
    BootstrapConfig,
    CGrid,
    DesignPoints,
    DiscretizationConfig,
    SelectionConfig,
    configs_from_json,
    configs_to_json,
)
from vcselect.errors import DesignPointsWarning


def test_design_points_sorted_strictly_increasing():
    dp = DesignPoints((50, 100, 150))
    assert dp.points == (50, 100, 150)
    assert len(dp) == 3


def test_design_points_dedupe_and_sort_warns():
    with pytest.warns(DesignPointsWarning):
        dp = DesignPoints((100, 50, 100, 150))
    assert dp.points == (50, 100, 150)


def test_design_points_reject_bad():
    with pytest.raises(ValueError):
        DesignPoints((0, 10))
    with pytest.raises(ValueError):
        DesignPoints((10,))  # a curve needs at least two abscissae


def test_design_points_oversample_warning():
    dp = DesignPoints((50, 400))
    with pytest.warns(DesignPointsWarning):
        dp.check_against(100)
    dp.check_against(400)  # 2*400 <= 2*400: quiet


def test_discretization_validation():
    DiscretizationConfig(m=1)
    with pytest.raises(ValueError):
        DiscretizationConfig(m=0)
    with pytest.raises(ValueError):
        DiscretizationConfig(m=5, bound_policy="fixed")  # needs B
    with pytest.raises(ValueError):
        DiscretizationConfig(m=5, B=2.0)  # B without fixed policy
    cfg = DiscretizationConfig(m=5, bound_policy="fixed", B=2.0)
    assert cfg.B == 2.0


def test_bootstrap_and_grid_validation():
    with pytest.raises(ValueError):
        BootstrapConfig(b1=0)
    with pytest.raises(ValueError):
        CGrid(c_min=0.0)
    with pytest.raises(ValueError):
        CGrid(c_min=2.0, c_max=1.0)
    with pytest.raises(ValueError):
        SelectionConfig(rule="nope")
    with pytest.raises(ValueError):
        SelectionConfig(t=-1.0)


def test_json_round_trip(tmp_path):
    path = tmp_path / "cfg.json"
    configs_to_json(
        path,
        design_points=DesignPoints((50, 100)),
        discretization=DiscretizationConfig(m=7),
        bootstrap=BootstrapConfig(b1=3, b2=4, seed=123456789012345, workers=2),
        c_grid=CGrid(0.05, 10.0, 0.05),
        selection=SelectionConfig(rule="global", t=1.5),
    )
    out = configs_from_json(str(path))
    assert out["design_points"].points == (50, 100)
    assert out["discretization"].m == 7
    assert out["bootstrap"].seed == 123456789012345
    assert out["c_grid"].c_step == 0.05
    assert out["selection"].rule == "global"
    # reals survive the round trip exactly at these magnitudes
    assert out["c_grid"].c_min == 0.05
    assert out["selection"].t == 1.5


def test_json_rejects_unknown_section():
    with pytest.raises(KeyError):
        configs_from_json(json.dumps({"mystery": {}}))
