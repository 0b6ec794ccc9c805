import math

import numpy as np
import pytest

from giantatom.analysis import short_time_quadratic
from giantatom.continuum import ContinuumParams, integrate
from giantatom.errors import BoundaryLeakError, GridError, ValidationError
from giantatom.lattice import (
    LatticeConfig,
    LatticeState,
    effective_phase_and_delay,
    integrate_lattice,
    lattice_rhs,
    light_cone_bound,
)
from giantatom.schedules import Constant, PeriodicQuench


def _vacuum(cfg):
    return LatticeState(1.0 + 0j, np.zeros(cfg.chain_len, dtype=complex))


def test_rhs_vacuum_inside_on_window():
    cfg = LatticeConfig(5.0, 1.0, 4, 1.0, PeriodicQuench(0.1, 0.4))
    d = lattice_rhs(cfg, 0.05, _vacuum(cfg))
    assert d.c_e == 0
    p, q = cfg.left_site, cfg.right_site
    assert d.field[p] == -1j and d.field[q] == -1j
    others = np.delete(d.field, [p, q])
    assert np.all(others == 0)


def test_rhs_off_window_is_free_hopping():
    cfg = LatticeConfig(5.0, 1.0, 4, 1.0, PeriodicQuench(0.1, 0.4))
    rng = np.random.default_rng(3)
    field = rng.normal(size=cfg.chain_len) + 1j * rng.normal(size=cfg.chain_len)
    d = lattice_rhs(cfg, 0.3, LatticeState(0.7 + 0.1j, field))
    assert d.c_e == 0
    want = np.zeros_like(field)
    want[1:] += field[:-1]
    want[:-1] += field[1:]
    np.testing.assert_allclose(d.field, -1j * 5.0 * want, rtol=0, atol=1e-14)


def test_rhs_single_site_hopping():
    cfg = LatticeConfig(5.0, 1.0, 4, 1.0, PeriodicQuench(0.1, 0.4))
    m = 10
    field = np.zeros(cfg.chain_len, dtype=complex)
    field[m] = 1.0
    d = lattice_rhs(cfg, 0.3, LatticeState(0j, field))
    assert d.field[m - 1] == -5j and d.field[m + 1] == -5j
    assert np.count_nonzero(d.field) == 2


@pytest.mark.parametrize(
    "J, N, want",
    [(5.0, 4, (2 * math.pi, 0.4)), (5.0, 2, (math.pi, 0.2)), (40.0, 2, (math.pi, 0.025))],
)
def test_effective_phase_and_delay(J, N, want):
    cfg = LatticeConfig(J, 1.0, N, 1.0)
    assert effective_phase_and_delay(cfg) == pytest.approx(want)


def test_config_validation():
    with pytest.raises(ValidationError):
        LatticeConfig(5.0, 1.0, 4, 1.0, step=0.02)  # step*J = 0.1
    with pytest.raises(ValidationError):
        LatticeConfig(5.0, 1.0, 4, 10.0, chain_len=60)
    with pytest.raises(ValidationError):
        LatticeConfig(5.0, 1.0, 0, 1.0)
    with pytest.raises(ValidationError):
        LatticeConfig(0.0, 1.0, 4, 1.0)
    bound = light_cone_bound(4, 5.0, 1.0)
    with pytest.raises(ValidationError):  # wrong parity for centring
        LatticeConfig(5.0, 1.0, 4, 1.0, chain_len=bound + (bound - 5) % 2 + 1)


def test_default_chain_is_centred_and_bounded():
    cfg = LatticeConfig(5.0, 1.0, 4, 3.0)
    assert cfg.chain_len >= light_cone_bound(4, 5.0, 3.0)
    assert cfg.left_site + cfg.right_site == cfg.chain_len - 1


def _exact(cfg, times):
    """Exact propagation by diagonalising the piecewise-constant Hamiltonian."""
    m = cfg.chain_len
    H0 = np.zeros((m + 1, m + 1))
    for k in range(m - 1):
        H0[1 + k, 2 + k] = H0[2 + k, 1 + k] = cfg.hopping
    H1 = H0.copy()
    for s in (cfg.left_site, cfg.right_site):
        H1[0, 1 + s] = H1[1 + s, 0] = cfg.g0
    w0, v0 = np.linalg.eigh(H0)
    w1, v1 = np.linalg.eigh(H1)
    sched = cfg.schedule
    y = np.zeros(m + 1, dtype=complex)
    y[0] = 1
    t = 0.0
    out = []
    from giantatom.schedules import breakpoints, eval_profile

    edges = breakpoints(sched, max(times))
    for target in times:
        while t < target - 1e-12:
            nxt = min([e for e in edges if e > t + 1e-12] + [target])
            on = eval_profile(sched, 0.5 * (t + nxt)) == 1.0
            w, v = (w1, v1) if on else (w0, v0)
            y = v @ (np.exp(-1j * w * (nxt - t)) * (v.conj().T @ y))
            t = nxt
        out.append(y[0])
    return np.array(out)


@pytest.mark.parametrize("schedule", [Constant(), PeriodicQuench(0.1, 0.4), PeriodicQuench(0.3, 0.15)])
def test_matches_exact_diagonalisation(schedule):
    cfg = LatticeConfig(5.0, 1.0, 4, 3.0, schedule)
    res = integrate_lattice(cfg)
    tr = res.trajectory
    probe = [0.1, 0.5, 1.0, 1.7, 2.4, 3.0]
    want = _exact(cfg, probe)
    got = np.array([tr.amps[tr.index_of(t)] for t in probe])
    assert np.max(np.abs(got - want)) < 1e-9


def test_unitarity_symmetry_and_frozen_off_windows():
    q = PeriodicQuench(0.1, 0.4)
    cfg = LatticeConfig(5.0, 1.0, 4, 4.6, q)
    res = integrate_lattice(cfg, field_stride=25)
    tr = res.trajectory
    assert np.all(np.abs(res.norms - 1) < 1e-8 * (1 + tr.times * cfg.hopping))
    f = res.fields
    p, N = cfg.left_site, cfg.span
    for k in range(p + 1):
        assert np.max(np.abs(f[:, p + N + k] - f[:, p - k])) < 1e-10
    for n in range(9):
        start, stop = n * 0.5 + 0.1, (n + 1) * 0.5
        assert abs(tr.amps[tr.index_of(stop)] - tr.amps[tr.index_of(start)]) < 1e-14


def test_short_time_parabola():
    cfg = LatticeConfig(5.0, 1.0, 4, 0.05)
    a = short_time_quadratic(integrate_lattice(cfg).trajectory, 0.05)
    assert a == pytest.approx(2.0, rel=0.02)


def test_no_parabola_without_coupling():
    cfg = LatticeConfig(5.0, 1.0, 4, 0.05, Constant(0.0))
    a = short_time_quadratic(integrate_lattice(cfg).trajectory, 0.05)
    assert abs(a) < 1e-12


def test_leak_guard_trips_on_minimal_chain():
    cfg = LatticeConfig(5.0, 1.0, 4, 1.9, PeriodicQuench(0.1, 0.1), chain_len=59)
    with pytest.raises(BoundaryLeakError):
        integrate_lattice(cfg)


def test_unalignable_quench_raises_grid_error():
    cfg = LatticeConfig(5.0, 1.0, 4, 2.0, PeriodicQuench(0.1, 0.10000001))
    with pytest.raises(GridError):
        integrate_lattice(cfg)


@pytest.mark.slow
def test_weak_coupling_matches_continuum():
    J = 20.0
    gamma0 = 1.0 / J  # fitted initial slope, see ledger
    horizon = 3.0 / gamma0
    cfg = LatticeConfig(J, 1.0, 4, horizon)
    lat = integrate_lattice(cfg).trajectory
    phi, tau = effective_phase_and_delay(cfg)
    con = integrate(ContinuumParams(gamma0, tau, phi), horizon, 64)
    for t in np.linspace(0, horizon, 31):
        pl = lat.populations[lat.index_of(t)]
        pc = con.populations[con.index_of(t)]
        assert pl == pytest.approx(pc, rel=0.05)


@pytest.mark.slow
def test_long_off_window_quench_crossing_is_pinned():
    # N=2, J=5, g0 t'=0.1, g0 t''=1.9: population sampled at the end of each
    # ON window first drops below 0.05 after 123 windows
    t_on, t_off, windows = 0.1, 1.9, 125
    period = t_on + t_off
    cfg = LatticeConfig(5.0, 1.0, 2, (windows - 1) * period + t_on, PeriodicQuench(t_on, t_off))
    tr = integrate_lattice(cfg).trajectory
    pops = np.array([tr.populations[tr.index_of(n * period + t_on)] for n in range(windows)])
    assert pops[39] == pytest.approx(0.37456, abs=1e-5)
    assert int(np.argmax(pops < 0.05)) + 1 == 123
