"""CSV export of trajectories and sweep tables.

Files are UTF-8, comma separated, LF terminated; numbers use 12 significant
digits so identical runs give identical bytes.
"""

from __future__ import annotations

import math

import numpy as np

from .analysis import SweepTable
from .continuum import ContinuumParams, Trajectory
from .lattice import LatticeResult
from .schedules import eval_profile

CONTINUUM_COLUMNS = ("t", "re_ce", "im_ce", "population", "u1", "u2")
LATTICE_COLUMNS = ("t", "re_ce", "im_ce", "population", "g_over_g0", "norm")
SWEEP_COLUMNS = ("axis_value", "metric")


def fmt(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if x == 0:
        return "0"
    return f"{x:.12g}"


def _table(header, columns) -> str:
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def continuum_csv(traj: Trajectory, params: ContinuumParams) -> str:
    t = traj.times
    return _table(
        CONTINUUM_COLUMNS,
        (
            t,
            traj.amps.real,
            traj.amps.imag,
            traj.populations,
            eval_profile(params.profile1, t),
            eval_profile(params.profile2, t),
        ),
    )


def lattice_csv(result: LatticeResult) -> str:
    traj = result.trajectory
    return _table(
        LATTICE_COLUMNS,
        (traj.times, traj.amps.real, traj.amps.imag, traj.populations, result.coupling, result.norms),
    )


def sweep_csv(table: SweepTable, reducer_label: str | None = None) -> str:
    """Sweep table with a leading ``#`` line naming the axis and the reducer."""
    label = reducer_label or table.reducer
    head = f"# axis={table.axis} reducer={label}\n"
    return head + _table(SWEEP_COLUMNS, (np.array(table.values, dtype=float), table.metrics))


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
