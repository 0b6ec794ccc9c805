"""Dimensionless coupling profiles u(t) = g(t)/g0.

Four shapes are supported: a constant, a cosine, a single step and a
periodic ON/OFF quench.  Profiles are frozen dataclasses; evaluation is
vectorised over numpy arrays of times.

Discontinuous profiles are right-continuous: the value at a breakpoint is
the value just after it.  ``side="left"`` returns the left limit instead,
which the integrators use for the last Runge-Kutta stage of a step that
ends on a breakpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ValidationError

# relative tolerance for deciding that a time sits on a breakpoint
EDGE_RTOL = 1e-12


@dataclass(frozen=True)
class Constant:
    scale: float = 1.0


@dataclass(frozen=True)
class Cosine:
    """u(t) = scale * cos(omega * t + theta)."""

    omega: float
    theta: float = 0.0
    scale: float = 1.0


@dataclass(frozen=True)
class Step:
    """u(t) = 1 before ``t_switch`` and ``1 + delta_rel`` from then on."""

    delta_rel: float
    t_switch: float

    def __post_init__(self):
        if not self.t_switch >= 0:
            raise ValidationError(f"Step.t_switch must be >= 0, got {self.t_switch}")


@dataclass(frozen=True)
class PeriodicQuench:
    """Coupling ON for ``t_on``, then OFF for ``t_off``, repeated; starts ON."""

    t_on: float
    t_off: float

    def __post_init__(self):
        if not self.t_on > 0:
            raise ValidationError(f"PeriodicQuench.t_on must be > 0, got {self.t_on}")
        if not self.t_off >= 0:
            raise ValidationError(f"PeriodicQuench.t_off must be >= 0, got {self.t_off}")

    @property
    def period(self) -> float:
        return self.t_on + self.t_off


ModulationProfile = Union[Constant, Cosine, Step, PeriodicQuench]


def _tol(t):
    return EDGE_RTOL * np.maximum(1.0, np.abs(t))


def eval_profile(profile: ModulationProfile, t, side: str = "right"):
    """Evaluate u(t) for a scalar or array of times.

    ``side`` selects the right limit (default, the value *at* a breakpoint)
    or the left limit.  Both coincide away from breakpoints.
    """
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)

    if isinstance(profile, Constant):
        u = np.full(t.shape, float(profile.scale))
    elif isinstance(profile, Cosine):
        u = profile.scale * np.cos(profile.omega * t + profile.theta)
    elif isinstance(profile, Step):
        tol = _tol(t)
        if side == "right":
            after = t >= profile.t_switch - tol
        else:
            after = t > profile.t_switch + tol
        u = np.where(after, 1.0 + profile.delta_rel, 1.0)
    elif isinstance(profile, PeriodicQuench):
        u = _eval_quench(profile, t, side)
    else:
        raise TypeError(f"unknown profile type {type(profile).__name__}")

    return float(u) if scalar else u


def _eval_quench(profile: PeriodicQuench, t, side):
    if profile.t_off == 0:
        return np.ones(t.shape)
    period = profile.period
    tol = _tol(t)
    if side == "right":
        n = np.floor((t + tol) / period)
        r = t - n * period
        on = r < profile.t_on - tol
    else:
        n = np.ceil((t - tol) / period) - 1
        r = t - n * period
        on = r <= profile.t_on + tol
        # the left limit at t = 0 does not exist; fall back to the value at 0
        on = np.where(t <= tol, True, on)
    return on.astype(float)


def breakpoints(profile: ModulationProfile, horizon: float) -> list[float]:
    """Sorted discontinuity times of ``profile`` in ``[0, horizon]``."""
    if not horizon > 0:
        raise ValueError(f"horizon must be > 0, got {horizon}")
    tol = EDGE_RTOL * max(1.0, horizon)

    if isinstance(profile, (Constant, Cosine)):
        return []
    if isinstance(profile, Step):
        return [profile.t_switch] if profile.t_switch <= horizon + tol else []
    if isinstance(profile, PeriodicQuench):
        if profile.t_off == 0:
            return []
        period = profile.period
        out = []
        for n in range(int(math.floor(horizon / period)) + 2):
            for edge in (n * period + profile.t_on, (n + 1) * period):
                if edge <= horizon + tol:
                    out.append(edge)
        return sorted(set(out))
    raise TypeError(f"unknown profile type {type(profile).__name__}")


def profile_timescale(profile: ModulationProfile) -> float:
    """Shortest time over which ``profile`` changes appreciably (inf if never)."""
    if isinstance(profile, Cosine) and profile.omega != 0:
        return 2 * math.pi / abs(profile.omega)
    return math.inf
