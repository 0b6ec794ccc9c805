"""A sudden change of the coupling strength can bring population back.

At Gamma0 t' = 0.5 both couplings jump from g0 to g0 + dg.  Right after the jump
the population moves by an amount set by F_s = (dg/g0)(1 + dg/g0).  F_s < 0
gives a revival; F_s > 0 gives a further loss.  Once the system has seen the
new coupling for a full delay, the population settles again.
"""

import math

from giantatom import ContinuumParams, Step, fs_metric, integrate, run_sweep
from giantatom.svgplot import LinePlot

from _common import out_path

tau, t_switch = 0.2, 0.5
plot = LinePlot(title="coupling step at Gamma0 t' = 0.5", xlabel="Gamma0 t", ylabel="|c_e|^2")
for d in (-0.5, 0.0, 0.5):
    s = Step(d, t_switch)
    traj = integrate(ContinuumParams(1.0, tau, math.pi, s, s), 5.0)
    plot.add(traj.times, traj.populations, label=f"dg/g0 = {d:+g}")
plot.save(out_path("step_revival.svg"))

base = ContinuumParams(1.0, tau, math.pi, Step(0.0, t_switch), Step(0.0, t_switch))
deltas = [-0.9, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0]
table = run_sweep(base, "delta_rel", deltas, reducer="population_at", at=5.0, horizon=5.0)
print(" dg/g0     F_s    |c_e(5)|^2")
for cell in sorted(table.cells, key=lambda c: fs_metric(c.axis_value)):
    print(f"{cell.axis_value:+6.2f} {fs_metric(cell.axis_value):+7.3f}   {cell.value:.5f}")
