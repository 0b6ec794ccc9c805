"""Giant atom coupled at two sites of a finite tight-binding resonator chain.

Coupled-mode equations in the frame rotating at the band centre (atom
resonant with the band middle):

    dc_e/dt = -i g(t) (c_p + c_{p+N})
    dc_m/dt = -i J (c_{m-1} + c_{m+1}) - i g(t) c_e (delta_{m,p} + delta_{m,p+N})

The chain has hard walls.  Its length is bounded below by the light cone of
the run so that no amplitude reaches the ends; a runtime guard raises
BoundaryLeakError if it does anyway.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import grid
from .continuum import Trajectory
from .errors import BoundaryLeakError, ValidationError
from .schedules import Constant, ModulationProfile, breakpoints, eval_profile

MAX_STEP_J = 0.05
DEFAULT_STEP_J = 0.01
EDGE_SITES = 4
LEAK_LIMIT = 1e-6


def light_cone_bound(span: int, hopping: float, horizon: float) -> int:
    return span + 2 * math.ceil(2 * hopping * horizon) + 16


def minimal_chain_length(span: int, hopping: float, horizon: float) -> int:
    """Default chain: the light-cone bound widened by the front's Bessel tail.

    The excitation front spreads as J_n(2Jt), whose tail beyond n = 2Jt decays
    over ~(2Jt)^(1/3) sites, so a fixed margin is not enough for long runs.
    """
    front = 2 * hopping * horizon
    m = light_cone_bound(span, hopping, horizon) + 2 * math.ceil(6 * front ** (1 / 3))
    if (m - 1 - span) % 2:
        m += 1
    return m


@dataclass(frozen=True)
class LatticeConfig:
    """Chain and drive parameters; ``chain_len`` and ``step`` default from the others."""

    hopping: float
    g0: float
    span: int
    horizon: float
    schedule: ModulationProfile = Constant()
    chain_len: int | None = None
    step: float | None = None

    def __post_init__(self):
        if not self.hopping > 0:
            raise ValidationError(f"hopping J must be > 0, got {self.hopping}")
        if not self.g0 > 0:
            raise ValidationError(f"g0 must be > 0, got {self.g0}")
        if int(self.span) != self.span or self.span < 1:
            raise ValidationError(f"span N must be an integer >= 1, got {self.span}")
        if not self.horizon > 0:
            raise ValidationError(f"horizon must be > 0, got {self.horizon}")
        if self.step is None:
            object.__setattr__(self, "step", DEFAULT_STEP_J / self.hopping)
        if not 0 < self.step * self.hopping <= MAX_STEP_J + 1e-15:
            raise ValidationError(
                f"step*J = {self.step * self.hopping:g} must lie in (0, {MAX_STEP_J}]"
            )
        bound = light_cone_bound(self.span, self.hopping, self.horizon)
        if self.chain_len is None:
            m = minimal_chain_length(self.span, self.hopping, self.horizon)
            object.__setattr__(self, "chain_len", m)
        if self.chain_len < bound:
            raise ValidationError(
                f"chain_len M={self.chain_len} violates the light-cone bound "
                f"M >= N + 2*ceil(2*J*horizon) + 16 = {bound}"
            )
        if (self.chain_len - 1 - self.span) % 2:
            raise ValidationError(
                f"chain_len M={self.chain_len} cannot centre the coupling sites: "
                "M - 1 - N must be even"
            )

    @property
    def left_site(self) -> int:
        return (self.chain_len - 1 - self.span) // 2

    @property
    def right_site(self) -> int:
        return self.left_site + self.span


@dataclass
class LatticeState:
    c_e: complex
    field: np.ndarray

    @property
    def norm(self) -> float:
        return abs(self.c_e) ** 2 + float(np.vdot(self.field, self.field).real)


class LatticeResult(NamedTuple):
    trajectory: Trajectory
    norms: np.ndarray
    coupling: np.ndarray
    field_times: np.ndarray
    fields: np.ndarray


def _pack(state: LatticeState) -> np.ndarray:
    y = np.empty(len(state.field) + 1, dtype=complex)
    y[0] = state.c_e
    y[1:] = state.field
    return y


def _derivative(y: np.ndarray, g: float, hopping: float, p: int, q: int) -> np.ndarray:
    out = np.empty_like(y)
    f = y[1:]
    df = out[1:]
    df[0] = f[1]
    df[1:-1] = f[:-2] + f[2:]
    df[-1] = f[-2]
    df *= -1j * hopping
    if g != 0:
        df[p] -= 1j * g * y[0]
        df[q] -= 1j * g * y[0]
        out[0] = -1j * g * (f[p] + f[q])
    else:
        out[0] = 0
    return out


def lattice_rhs(cfg: LatticeConfig, t: float, state: LatticeState) -> LatticeState:
    """Time derivative of ``state`` at time ``t``."""
    if len(state.field) != cfg.chain_len:
        raise ValueError(f"field has length {len(state.field)}, expected {cfg.chain_len}")
    g = cfg.g0 * eval_profile(cfg.schedule, t)
    d = _derivative(_pack(state), g, cfg.hopping, cfg.left_site, cfg.right_site)
    return LatticeState(c_e=complex(d[0]), field=d[1:])


def integrate_lattice(cfg: LatticeConfig, field_stride: int = 0) -> LatticeResult:
    """RK4 evolution from the excited atom and an empty chain.

    Records c_e, |c_e|^2 and the total norm at every step.  With
    ``field_stride > 0`` the chain amplitudes are also kept every
    ``field_stride`` steps (and at the final step).
    """
    horizon = cfg.horizon
    h = grid.common_step(breakpoints(cfg.schedule, horizon), cfg.step, horizon)
    n = grid.n_steps(horizon, h)
    times = h * np.arange(n + 1)
    g_s = cfg.g0 * eval_profile(cfg.schedule, times, "right")
    g_m = cfg.g0 * eval_profile(cfg.schedule, times[:-1] + 0.5 * h, "right")
    g_e = cfg.g0 * eval_profile(cfg.schedule, times[1:], "left")
    g_s, g_m, g_e = g_s.tolist(), g_m.tolist(), g_e.tolist()

    J = cfg.hopping
    p, q = cfg.left_site, cfg.right_site
    m = cfg.chain_len
    y = np.zeros(m + 1, dtype=complex)
    y[0] = 1.0

    amps = np.empty(n + 1, dtype=complex)
    derivs = np.empty(n + 1, dtype=complex)
    derivs_left = np.empty(n + 1, dtype=complex)
    norms = np.empty(n + 1)
    amps[0] = y[0]
    norms[0] = 1.0
    snaps, snap_times = [], []
    if field_stride > 0:
        snaps.append(y[1:].copy())
        snap_times.append(0.0)

    half = 0.5 * h
    sixth = h / 6.0
    for i in range(n):
        k1 = _derivative(y, g_s[i], J, p, q)
        k2 = _derivative(y + half * k1, g_m[i], J, p, q)
        k3 = _derivative(y + half * k2, g_m[i], J, p, q)
        k4 = _derivative(y + h * k3, g_e[i], J, p, q)
        derivs[i] = k1[0]
        y = y + sixth * (k1 + 2 * k2 + 2 * k3 + k4)

        amps[i + 1] = y[0]
        derivs_left[i + 1] = -1j * g_e[i] * (y[1 + p] + y[1 + q])
        norms[i + 1] = np.vdot(y, y).real
        edge = np.vdot(y[1 : 1 + EDGE_SITES], y[1 : 1 + EDGE_SITES]).real + np.vdot(
            y[-EDGE_SITES:], y[-EDGE_SITES:]
        ).real
        if edge > LEAK_LIMIT:
            raise BoundaryLeakError(
                f"edge occupancy {edge:.3e} at t = {times[i + 1]:.6g}; lengthen the chain"
            )
        if field_stride > 0 and ((i + 1) % field_stride == 0 or i + 1 == n):
            snaps.append(y[1:].copy())
            snap_times.append(times[i + 1])

    derivs[n] = -1j * g_s[n] * (y[1 + p] + y[1 + q])
    derivs_left[0] = derivs[0]
    traj = Trajectory(step=h, times=times, amps=amps, derivs=derivs, derivs_left=derivs_left)
    fields = np.array(snaps) if snaps else np.empty((0, m), dtype=complex)
    return LatticeResult(
        trajectory=traj,
        norms=norms,
        coupling=np.asarray(g_s) / cfg.g0,
        field_times=np.asarray(snap_times),
        fields=fields,
    )


def effective_phase_and_delay(cfg: LatticeConfig) -> tuple[float, float]:
    """Continuum phase N*pi/2 and delay N/(2J) of the resonant lattice run."""
    return cfg.span * math.pi / 2, cfg.span / (2 * cfg.hopping)
