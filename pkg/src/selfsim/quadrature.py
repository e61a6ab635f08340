"""Shared quadrature engines.

Three recurring difficulties, one routine each:

* power-law singularity at 0           -> geometric panels + Taylor disc,
* bounded oscillatory tails            -> doubling blocks + Wynn epsilon,
* regularized (eps -> 0+) transforms   -> geometric ladder + Neville.

Everything is plain scipy.integrate.quad underneath; warnings are turned
into QuadratureNoConvergence when the reported error exceeds the budget.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureNoConvergence

__all__ = [
    "quad_checked",
    "geometric_ladder",
    "neville_at_zero",
    "wynn_epsilon",
    "panel_integral",
    "oscillatory_tail",
]


def quad_checked(fn, a, b, abs_tol, rel_tol=1e-11, limit=400, **kwargs):
    """scipy quad that raises instead of warning when accuracy is not met."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val, err = quad(fn, a, b, epsabs=abs_tol, epsrel=rel_tol, limit=limit, **kwargs)
    if not math.isfinite(val) or err > max(abs_tol, rel_tol * abs(val)) * 50.0:
        raise QuadratureNoConvergence(
            f"quadrature on [{a:g}, {b:g}] reported error {err:g} (budget {abs_tol:g})"
        )
    return val


def geometric_ladder(base: float, ratio: float, count: int) -> list[float]:
    """[base, base*ratio, ...], largest first; used for eps -> 0+ sweeps."""
    return [base * ratio**j for j in range(count)]


def neville_at_zero(xs, ys):
    """Polynomial extrapolation of ys(xs) to 0; ys entries may be arrays."""
    tab = [np.asarray(y, dtype=float) for y in ys]
    n = len(tab)
    for level in range(1, n):
        for i in range(n - level):
            x0, x1 = xs[i], xs[i + level]
            tab[i] = (x1 * tab[i] - x0 * tab[i + 1]) / (x1 - x0)
    out = tab[0]
    return float(out) if out.ndim == 0 else out


def wynn_epsilon(partial_sums) -> float:
    """Wynn's epsilon acceleration of a sequence of partial sums."""
    e_prev = [0.0] * (len(partial_sums) + 1)
    e_curr = list(partial_sums)
    best = partial_sums[-1]
    for k in range(1, len(partial_sums)):
        e_next = []
        for i in range(len(e_curr) - 1):
            diff = e_curr[i + 1] - e_curr[i]
            if diff == 0.0:
                e_next.append(e_prev[i + 1])
            else:
                e_next.append(e_prev[i + 1] + 1.0 / diff)
        e_prev, e_curr = e_curr, e_next
        if k % 2 == 0 and e_curr:
            best = e_curr[-1]
    return best


def panel_integral(fn, a: float, b: float, abs_tol: float, growth: float = 2.0) -> float:
    """Integral over [a, b] by adaptive quad on geometric panels from a.

    Panels [a, a*growth], [a*growth, a*growth^2], ... cluster resolution
    toward the lower end, where the integrands handled here concentrate
    their difficulty.
    """
    total = 0.0
    lo = a
    share = abs_tol / max(4.0, math.log(b / a) / math.log(growth) + 1.0)
    while lo < b * (1.0 - 1e-12):
        hi = min(growth * lo, b)
        total += quad_checked(fn, lo, hi, abs_tol=share, limit=200)
        lo = hi
    return total


def oscillatory_tail(fn, start: float, abs_tol: float, max_blocks: int = 36,
                     rel_floor: float = 1e-5) -> float:
    """int_start^inf fn, fn bounded-oscillatory or decaying, by doubling blocks.

    Decaying integrands terminate the plain sum once two consecutive
    blocks fall under abs_tol (tight certification).  Bounded oscillatory
    integrands leave a slowly decaying mean part; there the block partial
    sums are accelerated by Wynn's epsilon algorithm and accepted once the
    recent extrapolants agree to max(abs_tol, rel_floor * |value|).  The
    relative floor is the honest certification level of this branch: past
    a dozen doublings a block holds more oscillations than quad can
    subdivide, so the block values themselves carry ~1e-5 relative noise.
    """
    sums: list[float] = []
    blocks: list[float] = []
    recent: list[float] = []
    partial = 0.0
    a = start
    for _ in range(max_blocks):
        b = 2.0 * a
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            val, _err = quad(fn, a, b, epsabs=abs_tol * 0.1, epsrel=1e-11, limit=800)
        if not math.isfinite(val):
            raise QuadratureNoConvergence(f"tail block [{a:g}, {b:g}] evaluated non-finite")
        partial += val
        blocks.append(val)
        sums.append(partial)
        if len(blocks) >= 2 and abs(blocks[-1]) < abs_tol * 0.25 and abs(blocks[-2]) < abs_tol * 0.25:
            return partial
        if len(sums) >= 6:
            est = wynn_epsilon(sums)
            recent.append(est)
            if len(recent) >= 4:
                spread = max(recent[-4:]) - min(recent[-4:])
                if spread < max(abs_tol, rel_floor * abs(est)):
                    return est
        a = b
    raise QuadratureNoConvergence(
        f"tail integral from {start:g} did not settle within {max_blocks} doubling blocks"
    )


def complex_quad(fn, a, b, abs_tol, limit=400):
    """quad for complex-valued integrands (real and imaginary parts separately)."""
    re = quad_checked(lambda u: fn(u).real, a, b, abs_tol=abs_tol, limit=limit)
    im = quad_checked(lambda u: fn(u).imag, a, b, abs_tol=abs_tol, limit=limit)
    return re + 1j * im
