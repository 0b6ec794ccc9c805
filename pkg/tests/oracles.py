"""Reference solutions that share no code with the integrators under test."""

import math

import numpy as np
from scipy.integrate import solve_ivp


def series_solution(t, a, b, tau, terms=None):
    """Exact c(t) of dc/dt = -a c(t) - b c(t - tau) Theta(t - tau), c(0) = 1.

    Inverse Laplace transform of 1/(s + a + b e^{-s tau}) expanded in b:
    sum_n (-b)^n (t - n tau)^n / n! e^{-a (t - n tau)} Theta(t - n tau).
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros(t.shape, dtype=complex)
    nmax = terms if terms is not None else int(t.max() / tau) + 1
    for n in range(nmax + 1):
        s = t - n * tau
        mask = s >= 0
        if not mask.any():
            break
        out[mask] += (-b) ** n * s[mask] ** n / math.factorial(n) * np.exp(-a * s[mask])
    return out


def method_of_steps(coef_a, coef_b, tau, horizon, breaks=(), rtol=1e-11, atol=1e-13):
    """Solve dc/dt = -a(t) c(t) - b(t) c(t - tau) by scipy's adaptive RK on
    successive intervals, looking up the delayed value in the dense output of
    earlier intervals.  ``breaks`` are extra times where a or b jump.
    """
    cuts = {0.0, horizon}
    k = 1
    while k * tau < horizon:
        cuts.add(k * tau)
        k += 1
    for b in breaks:
        for shift in (0.0, tau):
            if 0 < b + shift < horizon:
                cuts.add(b + shift)
    cuts = sorted(cuts)
    pieces = []

    def history(s):
        for lo, hi, sol in pieces:
            if lo - 1e-12 <= s <= hi + 1e-12:
                z = sol.sol(min(max(s, lo), hi))
                return z[0] + 1j * z[1]
        raise ValueError(f"no history at {s}")

    y0 = [1.0, 0.0]
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        mid = 0.5 * (lo + hi)

        def f(t, y, mid=mid):
            c = y[0] + 1j * y[1]
            # evaluate jumps from the interior of the interval
            tt = min(max(t, lo + 1e-13), hi - 1e-13)
            d = -coef_a(tt) * c
            if tt >= tau:
                d -= coef_b(tt) * history(tt - tau)
            return [d.real, d.imag]

        sol = solve_ivp(f, (lo, hi), y0, method="DOP853", rtol=rtol, atol=atol, dense_output=True)
        pieces.append((lo, hi, sol))
        y0 = sol.y[:, -1]

    def c(t):
        return np.array([history(min(s, horizon)) for s in np.atleast_1d(t)])

    return c


# reduced right-hand sides for u1 = cos(W t), u2 = cos(W t + theta)
def reduced_cosine_rhs(kind, t, omega, theta, phi, c, cd, g0=1.0):
    inst = math.cos(omega * t) ** 2 + math.cos(omega * t + theta) ** 2
    e = np.exp(1j * phi)
    if kind == "odd":
        fb = -2 * math.cos(omega * t) * math.cos(omega * t + theta) * e * cd
    elif kind == "even":
        fb = 2 * math.cos(omega * t) * math.cos(omega * t + theta) * e * cd
    else:
        fb = e * (
            math.cos(omega * t) * math.sin(omega * t + theta)
            + math.sin(omega * t) * math.cos(omega * t + theta)
        ) * cd
    return -g0 / 2 * (inst * c + fb)
