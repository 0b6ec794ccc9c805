"""Retarded-feedback dynamics of a two-point giant atom in a continuum waveguide.

The atomic amplitude obeys the delay differential equation

    dc/dt = -1/2 [G1(t) + G2(t)] c(t) - G12(t) e^{i phi} c(t - tau) Theta(t - tau)

with G_j(t) = G0 u_j(t)^2 and G12(t) = G0/2 [u1(t) u2(t-tau) + u1(t-tau) u2(t)],
where u_j are the dimensionless coupling profiles of the two legs.

The integrator is a fixed-step classical RK4 on a grid that contains tau,
every profile breakpoint and every breakpoint shifted by tau.  Delayed values
at half-step stage times come from cubic Hermite interpolation of the stored
history.  Nodes where the solution has a derivative kink keep both one-sided
derivatives so the interpolant never straddles a kink.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import grid
from .errors import DomainError, RangeError, StabilityError, ValidationError
from .schedules import Constant, ModulationProfile, breakpoints, eval_profile, profile_timescale

STABILITY_LIMIT = 1e-3


@dataclass(frozen=True)
class ContinuumParams:
    gamma0: float
    tau: float
    phi: float
    profile1: ModulationProfile = Constant()
    profile2: ModulationProfile = Constant()

    def __post_init__(self):
        if not self.gamma0 > 0:
            raise ValidationError(f"gamma0 must be > 0, got {self.gamma0}")
        if not self.tau >= 0:
            raise ValidationError(f"tau must be >= 0, got {self.tau}")
        if not math.isfinite(self.phi):
            raise ValidationError(f"phi must be finite, got {self.phi}")

    @property
    def constant_couplings(self) -> bool:
        return isinstance(self.profile1, Constant) and isinstance(self.profile2, Constant)


@dataclass
class Trajectory:
    """Atomic amplitude sampled on the uniform grid ``times[i] = i * step``.

    ``derivs`` holds the right-sided derivative at each node and
    ``derivs_left`` the left-sided one; they differ only at kinks.
    """

    step: float
    times: np.ndarray
    amps: np.ndarray
    derivs: np.ndarray
    derivs_left: np.ndarray = field(default=None)
    populations: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.derivs_left is None:
            self.derivs_left = self.derivs
        self.populations = np.abs(self.amps) ** 2

    def __len__(self):
        return len(self.times)

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    def index_of(self, t: float) -> int:
        """Index of the grid node nearest to ``t``."""
        tol = grid.GRID_RTOL * max(1.0, self.horizon) + self.step / 2
        if t < -tol or t > self.horizon + tol:
            raise RangeError(f"t={t} outside trajectory [0, {self.horizon}]")
        return min(len(self.times) - 1, max(0, int(round(t / self.step))))

    def window(self, start: int, stop: int | None = None) -> "Trajectory":
        """Sub-trajectory of nodes ``start:stop`` (times keep their values)."""
        sl = slice(start, stop)
        return Trajectory(
            step=self.step,
            times=self.times[sl],
            amps=self.amps[sl],
            derivs=self.derivs[sl],
            derivs_left=self.derivs_left[sl],
        )


def _gate(t, tau, side):
    tol = grid.GRID_RTOL * np.maximum(1.0, np.abs(t))
    if side == "right":
        return t >= tau - tol
    return t > tau + tol


def rates(params: ContinuumParams, t, side: str = "right"):
    """Instantaneous rates (G1, G2) and the retarded cross rate G12 at ``t``.

    For ``t < tau`` the delayed profile factors are taken as zero; the
    feedback term is switched off there anyway.
    """
    p = params
    t = np.asarray(t, dtype=float)
    u1 = eval_profile(p.profile1, t, side)
    u2 = eval_profile(p.profile2, t, side)
    on = _gate(t, p.tau, side)
    td = np.where(on, t - p.tau, 0.0)
    u1d = np.where(on, eval_profile(p.profile1, td, side), 0.0)
    u2d = np.where(on, eval_profile(p.profile2, td, side), 0.0)
    g1 = p.gamma0 * u1**2
    g2 = p.gamma0 * u2**2
    g12 = 0.5 * p.gamma0 * (u1 * u2d + u1d * u2)
    if t.ndim == 0:
        return float(g1), float(g2), float(g12)
    return g1, g2, g12


def _coefficients(params: ContinuumParams, t, side: str = "right"):
    """Split the rhs as ``-a(t) c(t) - b(t) c(t - tau)``."""
    g1, g2, g12 = rates(params, t, side)
    gate = _gate(np.asarray(t, dtype=float), params.tau, side)
    a = 0.5 * (np.asarray(g1) + np.asarray(g2))
    b = np.asarray(g12) * np.exp(1j * params.phi) * gate
    return a, b


def rhs(params: ContinuumParams, t: float, c_now: complex, c_delayed: complex) -> complex:
    """Time derivative of the atomic amplitude.

    ``c_delayed`` is ``c(t - tau)``; it is ignored for ``t < tau``.
    """
    a, b = _coefficients(params, t)
    a, b = complex(a), complex(b)
    if b == 0:
        return -a * c_now
    return -a * c_now - b * c_delayed


def choose_step(params: ContinuumParams, horizon: float, steps_per_tau: int = 64) -> float:
    """Step size aligned with tau, the profile breakpoints and breakpoints + tau."""
    if not horizon > 0:
        raise ValueError(f"horizon must be > 0, got {horizon}")
    p = params
    if p.tau > 0 and steps_per_tau < 16:
        raise ValueError(f"steps_per_tau must be >= 16, got {steps_per_tau}")
    scales = [
        1.0 / p.gamma0,
        profile_timescale(p.profile1),
        profile_timescale(p.profile2),
    ]
    if p.tau > 0:
        scales.append(p.tau)
    h_max = min(scales) / steps_per_tau

    anchors = set()
    if p.tau > 0:
        anchors.add(p.tau)
    for prof in (p.profile1, p.profile2):
        for bp in breakpoints(prof, horizon):
            anchors.add(bp)
            if p.tau > 0 and bp + p.tau <= horizon:
                anchors.add(bp + p.tau)
    return grid.common_step(anchors, h_max, horizon)


def integrate(params: ContinuumParams, horizon: float, steps_per_tau: int = 64) -> Trajectory:
    """Integrate the amplitude from c(0) = 1 up to (at least) ``horizon``."""
    p = params
    h = choose_step(p, horizon, steps_per_tau)
    n = grid.n_steps(horizon, h)
    times = h * np.arange(n + 1)

    a_s, b_s = _coefficients(p, times, "right")
    a_m, b_m = _coefficients(p, times[:-1] + 0.5 * h, "right")
    a_e, b_e = _coefficients(p, times[1:], "left")
    if p.tau == 0:
        # no delay: the feedback acts on the current amplitude
        a_s, a_m, a_e = a_s + b_s, a_m + b_m, a_e + b_e
        b_s = np.zeros_like(b_s)
        b_m = np.zeros_like(b_m)
        b_e = np.zeros_like(b_e)
        k = n + 1
    else:
        k = int(round(p.tau / h))

    a_s, a_m, a_e = (np.asarray(x, dtype=complex).tolist() for x in (a_s, a_m, a_e))
    b_s, b_m, b_e = (np.asarray(x, dtype=complex).tolist() for x in (b_s, b_m, b_e))

    c = [0j] * (n + 1)
    d_right = [0j] * (n + 1)
    d_left = [0j] * (n + 1)
    c[0] = 1 + 0j
    half = 0.5 * h
    sixth = h / 6.0
    limit = 1.0 + STABILITY_LIMIT

    for i in range(n):
        ci = c[i]
        j = i - k
        if j >= 0:
            cd0 = c[j]
            cd1 = c[j + 1]
            cdm = 0.5 * (cd0 + cd1) + 0.125 * h * (d_right[j] - d_left[j + 1])
        else:
            cd0 = cdm = cd1 = 0j
        am, bm = a_m[i], b_m[i]
        k1 = -a_s[i] * ci - b_s[i] * cd0
        k2 = -am * (ci + half * k1) - bm * cdm
        k3 = -am * (ci + half * k2) - bm * cdm
        k4 = -a_e[i] * (ci + h * k3) - b_e[i] * cd1
        cn = ci + sixth * (k1 + 2 * k2 + 2 * k3 + k4)
        if abs(cn) > limit:
            raise StabilityError(
                f"|c_e| = {abs(cn):.6f} at t = {(i + 1) * h:.6g}; reduce the step"
            )
        d_right[i] = k1
        d_left[i + 1] = -a_e[i] * cn - b_e[i] * cd1
        c[i + 1] = cn

    cd_last = c[n - k] if n - k >= 0 else 0j
    d_right[n] = -a_s[n] * c[n] - b_s[n] * cd_last
    d_left[0] = d_right[0]

    return Trajectory(
        step=h,
        times=times,
        amps=np.array(c),
        derivs=np.array(d_right),
        derivs_left=np.array(d_left),
    )


def _hermite_integral(traj: Trajectory, i0: int, i1: int) -> complex:
    """Integral of the cubic Hermite interpolant between nodes i0 <= i1."""
    if i1 <= i0:
        return 0j
    h = traj.step
    c = traj.amps[i0 : i1 + 1]
    trap = 0.5 * h * (c[:-1].sum() + c[1:].sum())
    corr = h * h / 12.0 * (traj.derivs[i0:i1].sum() - traj.derivs_left[i0 + 1 : i1 + 1].sum())
    return complex(trap + corr)


def _simpson_integral(traj: Trajectory, i0: int, i1: int) -> complex:
    from scipy.integrate import simpson

    if i1 <= i0:
        return 0j
    return complex(simpson(traj.amps[i0 : i1 + 1], dx=traj.step))


def conserved_charge(
    traj: Trajectory, params: ContinuumParams, t: float, method: str = "hermite"
) -> complex:
    """Q(t) = c(t) - G12 e^{i phi} * integral of c over [t - tau, t].

    For constant couplings dQ/dt = -(1/2 (G1 + G2) + G12 e^{i phi}) c(t), so Q
    is a first integral when that bracket vanishes (equal legs, phi an odd
    multiple of pi).  ``t`` is snapped to the nearest grid node.  ``method``
    is ``"hermite"`` (exact for the integrator's interpolant) or
    ``"simpson"``.
    """
    if not params.constant_couplings:
        raise DomainError("conserved_charge requires constant coupling profiles")
    tol = grid.GRID_RTOL * max(1.0, traj.horizon)
    if t < params.tau - tol:
        raise DomainError(f"conserved_charge needs t >= tau, got t={t}, tau={params.tau}")
    i = traj.index_of(t)
    k = int(round(params.tau / traj.step))
    integral = {"hermite": _hermite_integral, "simpson": _simpson_integral}[method]
    _, _, g12 = rates(params, max(t, params.tau))
    return complex(traj.amps[i]) - g12 * np.exp(1j * params.phi) * integral(traj, i - k, i)


def charge_rate(params: ContinuumParams) -> complex:
    """The constant r with dQ/dt = -r c(t) for constant couplings."""
    if not params.constant_couplings:
        raise DomainError("charge_rate requires constant coupling profiles")
    g1, g2, g12 = rates(params, max(params.tau, 0.0))
    return 0.5 * (g1 + g2) + g12 * np.exp(1j * params.phi)


def plateau_prediction(params: ContinuumParams) -> float:
    """Long-time population for equal constant legs at a decoherence-free phase.

    Q is conserved and c(t) -> c_inf gives c_inf (1 - G12 e^{i phi} tau) = Q(tau).
    """
    if not params.constant_couplings:
        raise DomainError("plateau_prediction requires constant coupling profiles")
    r = charge_rate(params)
    if abs(r) > 1e-12 * params.gamma0:
        raise DomainError("no conserved charge: legs unequal or phi not an odd multiple of pi")
    g1, g2, g12 = rates(params, params.tau)
    a = 0.5 * (g1 + g2)
    # c = exp(-a t) on [0, tau] (feedback off)
    q_tau = math.exp(-a * params.tau) - g12 * np.exp(1j * params.phi) * (
        (1 - math.exp(-a * params.tau)) / a if a > 0 else params.tau
    )
    c_inf = q_tau / (1 - g12 * np.exp(1j * params.phi) * params.tau)
    return float(abs(c_inf) ** 2)
