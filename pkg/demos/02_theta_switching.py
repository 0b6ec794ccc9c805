"""Switching between trapping and superradiance with a modulation phase.

Both legs are modulated as cos(Omega t) and cos(Omega t + theta), with
Omega tau = 2 pi so that the modulation repeats once per delay.  theta = 0
keeps the trapped state alive; theta = pi flips the sign of the feedback and
the atom decays quickly.
"""

import math

from giantatom import ContinuumParams, Cosine, detect_plateau, integrate, population_at
from giantatom.svgplot import LinePlot

from _common import out_path

tau = 0.2
omega = 2 * math.pi / tau
plot = LinePlot(title="Omega tau = 2 pi, phi = pi", xlabel="Gamma0 t", ylabel="|c_e|^2")
for theta_over_pi in (0.0, 0.25, 0.5, 1.0):
    p = ContinuumParams(1.0, tau, math.pi, Cosine(omega), Cosine(omega, theta_over_pi * math.pi))
    traj = integrate(p, 5.0)
    rep = detect_plateau(traj)
    print(
        f"theta = {theta_over_pi:4.2f} pi: |c_e(5)|^2 = {population_at(traj, 5.0):.3e}"
        f"  plateau converged: {rep.converged}"
    )
    plot.add(traj.times, traj.populations, label=f"theta = {theta_over_pi:g} pi")
plot.save(out_path("theta_switching.svg"))
