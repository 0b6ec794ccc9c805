import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from giantatom.errors import ValidationError
from giantatom.schedules import (
    Constant,
    Cosine,
    PeriodicQuench,
    Step,
    breakpoints,
    eval_profile,
)


def test_cosine_at_zero_phase_starts_at_one():
    assert eval_profile(Cosine(omega=3.7, theta=0.0), 0.0) == 1.0


def test_step_takes_right_limit_at_switch():
    assert eval_profile(Step(delta_rel=-0.5, t_switch=0.5), 0.5) == 0.5
    assert eval_profile(Step(delta_rel=-0.5, t_switch=0.5), 0.5, side="left") == 1.0


def test_quench_is_off_inside_first_off_window():
    assert eval_profile(PeriodicQuench(t_on=0.1, t_off=0.4), 0.25) == 0.0


@pytest.mark.parametrize(
    "t, right, left",
    [(0.0, 1, 1), (0.05, 1, 1), (0.1, 0, 1), (0.3, 0, 0), (0.5, 1, 0), (0.6, 0, 1), (1.0, 1, 0)],
)
def test_quench_edges(t, right, left):
    q = PeriodicQuench(t_on=0.1, t_off=0.4)
    assert eval_profile(q, t) == right
    assert eval_profile(q, t, side="left") == left


def test_quench_without_off_time_is_always_on():
    q = PeriodicQuench(t_on=0.3, t_off=0.0)
    t = np.linspace(0, 5, 1001)
    assert np.all(eval_profile(q, t) == 1.0)
    assert breakpoints(q, 5.0) == []


def test_breakpoints_examples():
    assert breakpoints(Constant(), 10) == []
    assert breakpoints(Cosine(2.0), 10) == []
    assert breakpoints(Step(0.3, 0.5), 10) == [0.5]
    assert breakpoints(Step(0.3, 12.0), 10) == []
    assert breakpoints(PeriodicQuench(0.1, 0.4), 1.05) == pytest.approx([0.1, 0.5, 0.6, 1.0], abs=1e-15)


def test_invalid_profiles_rejected():
    with pytest.raises(ValidationError):
        Step(0.1, -1.0)
    with pytest.raises(ValidationError):
        PeriodicQuench(0.0, 1.0)
    with pytest.raises(ValidationError):
        PeriodicQuench(0.1, -0.1)


def test_vectorised_matches_scalar():
    q = PeriodicQuench(0.1, 0.4)
    t = np.linspace(0, 3, 301)
    vec = eval_profile(q, t)
    assert vec.tolist() == [eval_profile(q, float(x)) for x in t]


profiles = st.one_of(
    st.builds(Constant, st.floats(-2, 2)),
    st.builds(Cosine, st.floats(0.1, 20), st.floats(-7, 7), st.floats(-2, 2)),
    st.builds(Step, st.floats(-1, 1), st.floats(0, 5)),
    st.builds(PeriodicQuench, st.floats(0.05, 1), st.floats(0, 1)),
)


@settings(max_examples=200, deadline=None)
@given(profiles, st.floats(0.0, 6.0))
def test_continuous_away_from_breakpoints(profile, t):
    bps = breakpoints(profile, 10.0)
    eps = 1e-9
    if any(abs(t - b) < 1e-6 for b in bps):
        return
    u = eval_profile(profile, t)
    assert abs(eval_profile(profile, t + eps) - u) < 1e-6
    if t > eps:
        assert abs(eval_profile(profile, t - eps) - u) < 1e-6


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 1), st.floats(0, 1), st.floats(0, 10))
def test_quench_values_are_binary(t_on, t_off, t):
    assert eval_profile(PeriodicQuench(t_on, t_off), t) in (0.0, 1.0)


@pytest.mark.parametrize("t_on, t_off, n", [(0.1, 0.4, 7), (0.3, 0.2, 5), (0.25, 1.9, 3)])
def test_quench_on_measure(t_on, t_off, n):
    # exact integral of the indicator, piecewise between breakpoints
    q = PeriodicQuench(t_on, t_off)
    horizon = n * (t_on + t_off)
    edges = [0.0] + breakpoints(q, horizon) + [horizon]
    edges = sorted(set(edges))
    measure = sum(
        (b - a) * eval_profile(q, 0.5 * (a + b)) for a, b in zip(edges[:-1], edges[1:])
    )
    assert abs(measure - n * t_on) <= 1e-12 * n * t_on


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 20), st.floats(0, 10))
def test_cosine_phase_is_2pi_periodic(omega, t):
    a = eval_profile(Cosine(omega, 0.0), t)
    b = eval_profile(Cosine(omega, 2 * math.pi), t)
    assert abs(a - b) < 1e-12
