"""Independent oracle evaluations used to freeze expected test values.

Everything here goes straight through scipy.integrate.quad on the defining
integrals (with damped sweeps extrapolated to 0+ where the raw integral
only exists as a limit), deliberately bypassing the library's closed forms
and engines so the two routes stay independent.
"""

import math
import warnings

import numpy as np
from scipy.integrate import quad


def _neville0(xs, ys):
    tab = [float(y) for y in ys]
    for level in range(1, len(xs)):
        for i in range(len(xs) - level):
            x0, x1 = xs[i], xs[i + level]
            tab[i] = (x1 * tab[i] - x0 * tab[i + 1]) / (x1 - x0)
    return tab[0]


def _quiet_quad(fn, a, b, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val, _ = quad(fn, a, b, **kw)
    return val


def riesz_kernel_sweep(alpha: float, x: float) -> float:
    """(1/pi) lim_{eps->0+} int_0^inf e^{-eps k} k^alpha cos(kx) dk."""
    eps_list = [0.4 * 0.7**j for j in range(8)]
    vals = []
    for e in eps_list:
        p1 = _quiet_quad(lambda k: math.exp(-e * k) * k**alpha * math.cos(k * x),
                         0.0, 1.0, epsabs=1e-13, limit=200)
        p2 = _quiet_quad(lambda k: math.exp(-e * k) * k**alpha, 1.0, np.inf,
                         weight="cos", wvar=x, epsabs=1e-13, limit=300)
        vals.append((p1 + p2) / math.pi)
    return _neville0(eps_list, vals)


def frac_kernel_sweep(alpha: float, x: float) -> float:
    """(1/pi) lim int_0^inf e^{-eps k} k^alpha cos(kx + pi alpha / 2) dk."""
    shift = math.pi * alpha / 2.0
    eps_list = [0.4 * 0.7**j for j in range(8)]
    vals = []
    for e in eps_list:
        p1 = _quiet_quad(lambda k: math.exp(-e * k) * k**alpha * math.cos(k * x + shift),
                         0.0, 1.0, epsabs=1e-13, limit=200)
        pc = _quiet_quad(lambda k: math.exp(-e * k) * k**alpha, 1.0, np.inf,
                         weight="cos", wvar=x, epsabs=1e-13, limit=300)
        ps = _quiet_quad(lambda k: math.exp(-e * k) * k**alpha, 1.0, np.inf,
                         weight="sin", wvar=x, epsabs=1e-13, limit=300)
        vals.append((p1 + math.cos(shift) * pc - math.sin(shift) * ps) / math.pi)
    return _neville0(eps_list, vals)


def greens_fourier(delta: float, x: float, a_delta: float) -> float:
    """(1/(pi a_delta)) int_0^inf k^-delta cos(kx) dk, delta < 1."""
    p1 = _quiet_quad(lambda k: k ** (-delta) * math.cos(k * x), 0.0, 1.0,
                     epsabs=1e-13, limit=300)
    p2 = _quiet_quad(lambda k: k ** (-delta), 1.0, np.inf,
                     weight="cos", wvar=x, epsabs=1e-13, limit=300)
    return (p1 + p2) / (math.pi * a_delta)


def propagator_direct(delta: float, x: float, t: float, a_delta: float) -> float:
    """(1/pi) int_0^inf e^{-a k^delta t} cos(kx) dk by plain adaptive quad."""
    k_hi = (40.0 / (a_delta * t)) ** (1.0 / delta)
    return _quiet_quad(
        lambda k: math.exp(-a_delta * k**delta * t) * math.cos(k * x),
        0.0, k_hi, epsabs=1e-13, limit=int(20 * k_hi * abs(x) / math.pi) + 200,
    ) / math.pi


def lorentzian_cdf(x, scale: float):
    """Exact CDF of the scale-s Lorentzian: 1/2 + arctan(x/s)/pi."""
    return 0.5 + np.arctan(np.asarray(x) / scale) / np.pi
