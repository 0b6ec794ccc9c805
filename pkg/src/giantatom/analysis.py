"""Observables and parameter sweeps on top of the two integrators."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence, Union

import numpy as np

from .continuum import ContinuumParams, Trajectory, integrate
from .errors import FitError, GiantAtomError, RangeError
from .lattice import MAX_STEP_J, LatticeConfig, integrate_lattice
from .schedules import Cosine, PeriodicQuench, Step

DEFAULT_TAIL_FRACTION = 0.2
DEFAULT_TOL = 1e-3
FIT_RMS_LIMIT = 1e-3
WORKERS_ENV = "GIANTATOM_WORKERS"

AXES = ("delta_rel", "theta", "omega", "phi", "t_switch", "t_on", "t_off", "span", "hopping")
REDUCERS = ("plateau", "population_at")

Config = Union[ContinuumParams, LatticeConfig]


def fs_metric(delta_rel: float) -> float:
    """Sign indicator of the population jump at a coupling step.

    Negative values mean a revival, positive values a further reduction.
    """
    return delta_rel * (1.0 + delta_rel)


@dataclass(frozen=True)
class PlateauReport:
    value: float
    window: tuple[float, float]
    converged: bool
    max_slope: float


def detect_plateau(
    traj: Trajectory, tail_fraction: float = DEFAULT_TAIL_FRACTION, tol: float = DEFAULT_TOL
) -> PlateauReport:
    """Check whether the population has settled over the last part of ``traj``.

    The window is the final ``tail_fraction`` of the stored samples.  The run
    counts as converged when both the spread of the population and
    ``max_slope * window length`` stay below ``tol``.
    """
    if not 0 < tail_fraction <= 0.5:
        raise ValueError(f"tail_fraction must lie in (0, 0.5], got {tail_fraction}")
    n = len(traj)
    if n == 0:
        raise ValueError("empty trajectory")
    start = min(n - 1, int(math.floor((n - 1) * (1.0 - tail_fraction))))
    pops = traj.populations[start:]
    t0, t1 = float(traj.times[start]), float(traj.times[-1])
    slope = float(np.max(np.abs(np.diff(pops)))) / traj.step if len(pops) > 1 else 0.0
    spread = float(pops.max() - pops.min())
    converged = spread < tol and slope * (t1 - t0) < tol
    return PlateauReport(float(pops.mean()), (t0, t1), converged, slope)


def population_at(traj: Trajectory, t: float) -> float:
    """|c_e|^2 at the grid node nearest to ``t``."""
    if t < 0:
        raise RangeError(f"t must be >= 0, got {t}")
    return float(traj.populations[traj.index_of(t)])


def short_time_quadratic(traj: Trajectory, t_max: float) -> float:
    """Least-squares coefficient ``a`` of population ~ 1 - a t^2 on [0, t_max]."""
    mask = traj.times <= t_max + 0.5 * traj.step
    t = traj.times[mask]
    y = 1.0 - traj.populations[mask]
    if len(t) < 3:
        raise FitError(f"only {len(t)} samples in [0, {t_max}]")
    t2 = t * t
    a = float(np.dot(t2, y) / np.dot(t2, t2))
    rms = float(np.sqrt(np.mean((y - a * t2) ** 2)))
    if rms > FIT_RMS_LIMIT:
        raise FitError(f"population is not parabolic on [0, {t_max}] (rms residual {rms:.2e})")
    return a


@dataclass(frozen=True)
class SweepCell:
    axis_value: float
    params: Config
    value: float
    error: str | None = None


@dataclass(frozen=True)
class SweepTable:
    axis: str
    values: tuple
    reducer: str
    cells: tuple = field(default_factory=tuple)

    @property
    def metrics(self) -> np.ndarray:
        return np.array([c.value for c in self.cells], dtype=float)


def _map_profiles(params: ContinuumParams, kind, **changes) -> ContinuumParams:
    profs = []
    for prof in (params.profile1, params.profile2):
        profs.append(replace(prof, **changes) if isinstance(prof, kind) else prof)
    if all(not isinstance(p, kind) for p in profs):
        raise ValueError(f"base profiles contain no {kind.__name__} to vary")
    return replace(params, profile1=profs[0], profile2=profs[1])


def with_axis(base: Config, axis: str, value) -> Config:
    """Copy of ``base`` with one sweep parameter replaced."""
    if axis not in AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {AXES}")
    if isinstance(base, ContinuumParams):
        if axis == "phi":
            return replace(base, phi=float(value))
        if axis == "delta_rel":
            return _map_profiles(base, Step, delta_rel=float(value))
        if axis == "t_switch":
            return _map_profiles(base, Step, t_switch=float(value))
        if axis == "omega":
            return _map_profiles(base, Cosine, omega=float(value))
        if axis == "theta":
            if not isinstance(base.profile2, Cosine):
                raise ValueError("theta sweeps need a cosine profile on the second leg")
            return replace(base, profile2=replace(base.profile2, theta=float(value)))
        raise ValueError(f"axis {axis!r} does not apply to continuum runs")

    if isinstance(base, LatticeConfig):
        if axis in ("t_on", "t_off"):
            if not isinstance(base.schedule, PeriodicQuench):
                raise ValueError(f"axis {axis!r} needs a PeriodicQuench schedule")
            schedule = replace(base.schedule, **{axis: float(value)})
            return replace(base, schedule=schedule, chain_len=None)
        if axis == "span":
            return replace(base, span=int(value), chain_len=None)
        if axis == "hopping":
            step = base.step if base.step * float(value) <= MAX_STEP_J else None
            return replace(base, hopping=float(value), chain_len=None, step=step)
        raise ValueError(f"axis {axis!r} does not apply to lattice runs")
    raise TypeError(f"unsupported base config {type(base).__name__}")


def simulate(config: Config, horizon: float | None = None, steps_per_tau: int = 64) -> Trajectory:
    """Run either model and return the atomic trajectory."""
    if isinstance(config, LatticeConfig):
        return integrate_lattice(config).trajectory
    if horizon is None:
        raise ValueError("continuum runs need a horizon")
    return integrate(config, horizon, steps_per_tau)


def _reduce(traj: Trajectory, reducer: str, at, tail_fraction, tol) -> float:
    if reducer == "plateau":
        return detect_plateau(traj, tail_fraction, tol).value
    return population_at(traj, at)


def _run_cell(args) -> SweepCell:
    value, cfg, reducer, at, horizon, steps_per_tau, tail_fraction, tol = args
    if isinstance(cfg, str):
        return SweepCell(value, None, math.nan, cfg)
    try:
        traj = simulate(cfg, horizon, steps_per_tau)
        return SweepCell(value, cfg, _reduce(traj, reducer, at, tail_fraction, tol))
    except (GiantAtomError, ValueError) as exc:
        return SweepCell(value, cfg, math.nan, f"{type(exc).__name__}: {exc}")


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_sweep(
    base: Config,
    axis: str,
    values: Sequence[float],
    reducer: str = "plateau",
    at: float | None = None,
    horizon: float | None = None,
    steps_per_tau: int = 64,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
    tol: float = DEFAULT_TOL,
    workers: int | None = None,
) -> SweepTable:
    """One simulation per axis value, reduced to a scalar.

    Cells come back in the order of ``values``.  A failing cell carries an
    error string and a NaN metric instead of aborting the sweep.  ``workers``
    defaults to the GIANTATOM_WORKERS environment variable (1 if unset).
    """
    if axis not in AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {AXES}")
    if reducer not in REDUCERS:
        raise ValueError(f"unknown reducer {reducer!r}; expected one of {REDUCERS}")
    if reducer == "population_at" and at is None:
        raise ValueError("reducer 'population_at' needs a time 'at'")

    jobs = []
    for v in values:
        try:
            cfg = with_axis(base, axis, v)
        except (GiantAtomError, ValueError) as exc:
            cfg = f"{type(exc).__name__}: {exc}"
        jobs.append((v, cfg, reducer, at, horizon, steps_per_tau, tail_fraction, tol))

    workers = default_workers() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_run_cell, jobs))
    else:
        cells = [_run_cell(job) for job in jobs]
    return SweepTable(axis=axis, values=tuple(values), reducer=reducer, cells=tuple(cells))
