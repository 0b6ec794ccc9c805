import pytest

from giantatom.errors import GridError
from giantatom.grid import common_step, n_steps


def test_step_divides_every_anchor():
    h = common_step([0.2, 0.5, 0.7], 0.2 / 64, 10.0)
    for a in (0.2, 0.5, 0.7):
        assert abs(round(a / h) * h - a) < 1e-12
    assert h <= 0.2 / 64


def test_no_anchors_returns_cap():
    assert common_step([], 0.01, 5.0) == 0.01


def test_grid_finer_than_minimum_is_rejected():
    # common divisor 1e-8 is below horizon * 1e-8 = 1e-7
    with pytest.raises(GridError):
        common_step([1.0, 1.00000001], 0.01, 10.0)


def test_n_steps_covers_horizon():
    assert n_steps(10.0, 0.2 / 64) == 3200
    assert n_steps(1.0, 0.3) == 4
