"""A giant atom with two equal legs and propagation phase pi does not decay fully.

Part of the excitation is trapped between the two coupling points, so the
population settles at 1/(1 + Gamma0 tau)^2.  The conserved charge
Q = c - Gamma12 e^{i phi} * integral of c over the last delay stays at 1, and
that alone fixes the plateau.
"""

import math

from giantatom import ContinuumParams, conserved_charge, integrate, plateau_prediction
from giantatom.svgplot import LinePlot

from _common import out_path

plot = LinePlot(title="equal legs, phi = pi", xlabel="Gamma0 t", ylabel="|c_e|^2")
for gt in (0.2, 0.5, 1.0):
    p = ContinuumParams(gamma0=1.0, tau=gt, phi=math.pi)
    traj = integrate(p, 10.0)
    q = conserved_charge(traj, p, 10.0)
    print(
        f"Gamma0 tau = {gt:3.1f}: |c_e(10)|^2 = {traj.populations[-1]:.6f}"
        f"  predicted {plateau_prediction(p):.6f}   |Q - 1| = {abs(q - 1):.1e}"
    )
    plot.add(traj.times, traj.populations, label=f"Gamma0 tau = {gt}")

# with phi = 0 the two paths interfere constructively instead: superradiance
traj = integrate(ContinuumParams(1.0, 0.2, 0.0), 10.0)
print(f"phi = 0:             |c_e(10)|^2 = {traj.populations[-1]:.2e}")
plot.add(traj.times, traj.populations, label="phi = 0", dashed=True)
plot.save(out_path("plateau.svg"))
