"""The nonlocal Laplacian of the self-similar medium and its relatives.

The central object is the operator

    (Lap u)(x) = (h^delta / zeta) * int_0^inf [u(x-tau) + u(x+tau) - 2 u(x)]
                                             / tau^(1+delta) dtau,

0 < delta < 2: self-adjoint, negative definite, annihilates constants, and
diagonal in Fourier space with symbol -a_delta |k|^delta.  Both routes are
implemented: pointwise singular quadrature on callables and spectral
multiplication on sampled fields, each serving as the other's cross-check.

Also here: one-sided fractional derivatives of increment type (valid for
0 < delta < 1), the nonlocal flux whose divergence reproduces the
Laplacian, and the one-sided fractional-derivative kernel with symbol
(ik)^alpha.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import gamma as _gamma

from .errors import AlphaOutOfRange, DeltaOutOfRange, OriginSingular
from .grids import RealField, apply_symbol
from .params import DEFAULT_QUADRATURE, MediumParams, QuadratureConfig, dispersion
from .quadrature import oscillatory_tail, panel_integral

__all__ = [
    "laplacian_apply_point",
    "laplacian_apply_spectral",
    "laplacian_symbol",
    "weyl_marchaud",
    "flux_apply",
    "frac_kernel_y",
    "frac_derivative_spectral",
]

# Below tau_taylor the second difference is replaced by its Taylor value
# fpp * tau^2: direct evaluation there loses all digits to cancellation
# (noise ~ eps_mach / tau^2) while the Taylor branch is exact to O(tau^2).
_TAU_TAYLOR_FRACTION = 1e-3


def _fpp_richardson(f, x: float, h0: float = 1e-2) -> float:
    """Second derivative by central differences, two Richardson sweeps."""
    v = [(f(x + h) + f(x - h) - 2.0 * f(x)) / (h * h) for h in (h0, h0 / 2, h0 / 4)]
    r1 = (4.0 * v[1] - v[0]) / 3.0
    r2 = (4.0 * v[2] - v[1]) / 3.0
    return (16.0 * r2 - r1) / 15.0


def laplacian_apply_point(params: MediumParams, f, x: float,
                          qcfg: QuadratureConfig | None = None) -> float:
    """Nonlocal Laplacian of a callable at one point, by singular quadrature.

    f must be twice differentiable near x and bounded; oscillatory
    non-decaying tails (plane waves) are handled by block doubling with
    series acceleration.
    """
    qcfg = qcfg or DEFAULT_QUADRATURE
    delta = params.delta
    c = params.h**delta / params.zeta
    tol = qcfg.abs_tol / max(c, 1.0)

    def d2(tau):
        return f(x + tau) + f(x - tau) - 2.0 * f(x)

    tau_t = _TAU_TAYLOR_FRACTION * qcfg.tau_split
    inner = _fpp_richardson(f, x) * tau_t ** (2.0 - delta) / (2.0 - delta)
    inner += panel_integral(lambda u: d2(u) * u ** (-1.0 - delta),
                            tau_t, qcfg.tau_split, abs_tol=tol * 0.4)
    outer = oscillatory_tail(lambda u: d2(u) * u ** (-1.0 - delta),
                             qcfg.tau_split, abs_tol=tol * 0.4)
    return c * (inner + outer)


def laplacian_symbol(params: MediumParams, k) -> np.ndarray:
    """Fourier multiplier of the Laplacian: -a_delta |k|^delta."""
    return -dispersion(params, k)


def laplacian_apply_spectral(params: MediumParams, f: RealField) -> RealField:
    """Nonlocal Laplacian of a sampled field via its Fourier symbol.

    Periodic surrogate of the infinite-line operator: keep a guard band
    wide enough that wrap-around at the measurement window is below
    tolerance.
    """
    return apply_symbol(f, laplacian_symbol(params, f.grid.k))


def weyl_marchaud(delta: float, f, x: float, side: str,
                  qcfg: QuadratureConfig | None = None) -> float:
    """One-sided fractional derivative of increment type, 0 < delta < 1.

        D u(x) = delta / Gamma(1 - delta)
                 * int_0^inf [u(x) - u(x -/+ tau)] / tau^(1+delta) dtau

    with ``side`` = "left" (x - tau) or "right" (x + tau).  Both sides are
    returned as plain real integrals; the combination
    -(h^delta Gamma(1-delta) / (zeta delta)) * (D_left + D_right) equals
    the nonlocal Laplacian.
    """
    if not 0.0 < delta < 1.0:
        raise DeltaOutOfRange(f"increment derivative needs 0 < delta < 1, got {delta}")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    qcfg = qcfg or DEFAULT_QUADRATURE
    sgn = -1.0 if side == "left" else 1.0
    coef = delta / _gamma(1.0 - delta)
    tol = qcfg.abs_tol / max(coef, 1.0)

    def inc(tau):
        return f(x) - f(x + sgn * tau)

    # Taylor disc to second order: the increment is -sgn f' tau - f'' tau^2/2,
    # and the quadratic term still matters at the tau_t^(2-delta) scale
    tau_t = _TAU_TAYLOR_FRACTION * qcfg.tau_split
    h0 = 1e-3
    fp = (f(x + h0) - f(x - h0)) / (2.0 * h0)
    fpp = _fpp_richardson(f, x)
    inner = -sgn * fp * tau_t ** (1.0 - delta) / (1.0 - delta)
    inner -= 0.5 * fpp * tau_t ** (2.0 - delta) / (2.0 - delta)
    inner += panel_integral(lambda u: inc(u) * u ** (-1.0 - delta),
                            tau_t, qcfg.tau_split, abs_tol=tol * 0.4)
    # outer: split off the exact f(x) * tau^(-1-delta) tail
    outer = f(x) * qcfg.tau_split ** (-delta) / delta
    outer -= oscillatory_tail(lambda u: f(x + sgn * u) * u ** (-1.0 - delta),
                              qcfg.tau_split, abs_tol=tol * 0.4)
    return coef * (inner + outer)


@lru_cache(maxsize=32)
def _flux_weights(delta: float, dx: float, n: int) -> np.ndarray:
    """Exact moments of tau^-delta against piecewise-linear fields.

    w[p] multiplies rho_{i+p} in the discrete correlation; the p = 0
    singular moment cancels identically between the +tau and -tau branches
    and is dropped.
    """
    m = np.arange(1, n, dtype=float)
    a = m * dx
    b = (m + 1.0) * dx
    i0 = np.empty(n)
    i1 = np.empty(n)
    if abs(delta - 1.0) < 1e-12:
        i0[1:] = np.log(b / a)
        i1[1:] = b - a - a * i0[1:]
        i1[0] = dx
    else:
        i0[1:] = (b ** (1.0 - delta) - a ** (1.0 - delta)) / (1.0 - delta)
        i1[1:] = (b ** (2.0 - delta) - a ** (2.0 - delta)) / (2.0 - delta) - a * i0[1:]
        i1[0] = dx ** (2.0 - delta) / (2.0 - delta)
    # i0[0] is the singular moment whose contribution cancels; never used
    i0[0] = 0.0
    w = np.zeros(n + 1)
    w[1:n] = i0[1:n] + (i1[0 : n - 1] - i1[1:n]) / dx
    w[n] = i1[n - 1] / dx
    return w


def flux_apply(params: MediumParams, rho: RealField) -> RealField:
    """Nonlocal flux j(x) = -(h^delta/(zeta delta)) int [rho(x+tau)-rho(x-tau)] / tau^delta dtau.

    The spatial derivative of the output equals the negated Laplacian of
    rho (particle balance).  The field is taken to vanish beyond the grid
    after subtracting the edge baseline, which makes the discrete operator
    annihilate constants exactly; rho should decay toward the edges.
    """
    g = rho.grid
    n = g.n
    c = params.h**params.delta / (params.zeta * params.delta)
    vals = rho.values - 0.5 * (rho.values[0] + rho.values[-1])
    w = _flux_weights(params.delta, g.dx, n)
    kernel = np.zeros(2 * n + 1)
    kernel[n + 1 :] = -w[1:]
    kernel[:n] = w[1:][::-1]
    full = fftconvolve(vals, kernel)
    return RealField(g, -c * full[n : 2 * n])


def frac_kernel_y(alpha: float, x: float, eps: float = 0.0) -> float:
    """Kernel of the one-sided fractional derivative with symbol (ik)^alpha.

    Regularized form (alpha! / pi) * Re[ i^(2 alpha + 1) / (x + i eps)^(alpha+1) ],
    principal branch.  At eps = 0 the kernel is supported on x > 0, where it
    equals -(alpha!/pi) x^(-alpha-1) sin(pi alpha); it vanishes for x < 0 and
    for integer alpha (off the origin), reproducing the localized
    integer-order derivatives.
    """
    if alpha <= -1.0:
        raise AlphaOutOfRange(f"kernel defined for alpha > -1, got {alpha}")
    if eps < 0.0 or not math.isfinite(eps):
        raise AlphaOutOfRange(f"eps must be >= 0, got {eps}")
    if eps > 0.0:
        z = complex(x, eps)
        val = (1j ** (2.0 * alpha + 1.0)) / z ** (alpha + 1.0)
        return float(_gamma(alpha + 1.0) / math.pi * val.real)
    if x == 0.0:
        raise OriginSingular("eps = 0 evaluation requires x != 0")
    if x < 0.0 or float(alpha).is_integer():
        return 0.0
    return float(-_gamma(alpha + 1.0) / math.pi * x ** (-alpha - 1.0) * math.sin(math.pi * alpha))


def frac_derivative_spectral(alpha: float, f: RealField) -> RealField:
    """Fractional derivative of a sampled field: multiplier (ik)^alpha.

    Principal branch: (ik)^alpha = |k|^alpha exp(i sign(k) pi alpha / 2).
    alpha = 0 is the identity; integer alpha reproduces ordinary
    derivatives.
    """
    if alpha < 0.0:
        raise AlphaOutOfRange(f"derivative branch needs alpha >= 0, got {alpha}")
    k = f.grid.k
    mag = np.abs(k) ** alpha if alpha > 0.0 else np.ones_like(k)
    sym = mag * np.exp(1j * np.sign(k) * math.pi * alpha / 2.0)
    return apply_symbol(f, sym)
