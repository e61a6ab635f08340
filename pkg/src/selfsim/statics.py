"""Static response: Green's function, Poisson solver, and the kernel family
b_alpha obtained as regularized Fourier transforms of |k|^alpha.

The point-force displacement is the power law

    g(x) = g0 |x|^(delta-1),   g0 = (zeta delta / (2 pi h^delta)) tan(pi delta / 2),

whose transform is 1 / omega^2(k).  g0 diverges at delta = 1 (the static
problem has no finite power-law solution there); a guard raises DeltaPole
instead of returning huge numbers.

The Riesz-type kernels

    b_alpha(x) = (1/pi) lim_{eps->0+} int_0^inf e^{-eps k} k^alpha cos(kx) dk
               = -(alpha!/pi) |x|^(-alpha-1) sin(pi alpha / 2)   (x != 0)

generalize the delta function (alpha = 0) and its even derivatives
(alpha = 2, 4, ...: zero off the origin) to a nonlocal family; iterated
Laplacians of a point source and the static Green's function are both
members.  For alpha < -1 the divergent transform is replaced by the
regularized definition, which lands on the same closed form with the
extended factorial; negative odd integers stay excluded.  Although each
b_alpha with alpha > 0 keeps one sign for all x != 0, its integral
vanishes: the head integral over (0, a) exactly compensates the tail over
(a, inf), the origin carrying compensating oscillatory mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as _gamma

from .errors import (
    AlphaOutOfRange,
    DeltaPole,
    ExcludedAlpha,
    NonPositiveA,
    NonZeroMeanForce,
    OriginSingular,
)
from .grids import RealField
from .params import MediumParams, dispersion, factorial_ext

__all__ = [
    "POLE_GUARD",
    "PotentialExponent",
    "greens_static",
    "greens_prefactor",
    "poisson_solve",
    "riesz_kernel",
    "laplacian_power_kernel",
    "delta_weight_at_origin",
    "riesz_tail_integral",
    "riesz_origin_integral",
    "constant_annihilation_check",
    "AnnihilationReport",
]

POLE_GUARD = 1e-6


@dataclass(frozen=True)
class PotentialExponent:
    """Exponent of the b_alpha family with its derived exclusion flags."""

    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise AlphaOutOfRange(f"alpha must be finite, got {self.alpha!r}")

    @property
    def localized(self) -> bool:
        """Even integer alpha >= 0: the kernel vanishes for every x != 0."""
        a = self.alpha
        return a >= 0.0 and float(a).is_integer() and int(a) % 2 == 0

    @property
    def excluded(self) -> bool:
        """Negative odd integers, poles of the regularized continuation."""
        a = self.alpha
        return a <= -1.0 and float(a).is_integer() and int(-a) % 2 == 1


def greens_prefactor(params: MediumParams) -> float:
    """g0 = (zeta delta / (2 pi h^delta)) tan(pi delta / 2); DeltaPole near delta = 1."""
    d = params.delta
    if abs(d - 1.0) <= POLE_GUARD:
        raise DeltaPole(
            f"static prefactor diverges at delta = 1 (got delta = {d}); no finite power-law response"
        )
    return (params.zeta * d / (2.0 * math.pi * params.h**d)) * math.tan(math.pi * d / 2.0)


def greens_static(params: MediumParams, x):
    """Static displacement response to a unit point force: g0 |x|^(delta-1).

    Scalar or array x.  For delta < 1 the origin is singular and raises;
    for delta > 1 the response vanishes continuously at x = 0.
    """
    g0 = greens_prefactor(params)
    xa = np.abs(np.asarray(x, dtype=float))
    if np.any(xa == 0.0) and params.delta < 1.0:
        raise OriginSingular("g(x) ~ |x|^(delta-1) is singular at x = 0 for delta < 1")
    out = g0 * xa ** (params.delta - 1.0)
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def poisson_solve(params: MediumParams, force: RealField, project: bool = False,
                  mean_tol: float = 1e-9) -> RealField:
    """Solve Lap u + f = 0 spectrally; the k = 0 mode of u is gauged to zero.

    The symbol 1/(a_delta |k|^delta) is singular at k = 0, so the force must
    have (numerically) zero mean; pass project=True to subtract the mean
    instead of raising.  The solution is defined up to a rigid displacement,
    fixed here by the zero-mean gauge.
    """
    g = force.grid
    fh = np.fft.fft(force.values)
    scale = float(np.max(np.abs(force.values))) or 1.0
    mean = abs(fh[0]) / g.n
    if mean > mean_tol * scale and not project:
        raise NonZeroMeanForce(
            f"force has mean amplitude {mean:g} (tolerance {mean_tol * scale:g}); "
            "enable project=True to gauge it away"
        )
    w2 = dispersion(params, g.k)
    uh = np.zeros_like(fh)
    uh[1:] = fh[1:] / w2[1:]
    return RealField(g, np.fft.ifft(uh).real)


def riesz_kernel(alpha: float, x, eps: float = 0.0):
    """b_alpha(x): regularized Fourier transform of |k|^alpha, scalar or array x.

    eps > 0 evaluates the damped transform (alpha!/pi) Re[i^(alpha+1) /
    (|x| + i eps)^(alpha+1)]; eps = 0 gives its limit, the closed form
    -(alpha!/pi) |x|^(-alpha-1) sin(pi alpha / 2).  Even integers
    alpha >= 0 are localized (zero for x != 0); negative odd integers are
    excluded.
    """
    spec = PotentialExponent(alpha)
    if spec.excluded:
        raise ExcludedAlpha(f"alpha = {alpha:g} lies in the excluded negative-odd set")
    xa = np.abs(np.asarray(x, dtype=float))
    scalar = np.isscalar(x) or np.ndim(x) == 0
    if eps < 0.0:
        raise AlphaOutOfRange(f"eps must be >= 0, got {eps}")
    if eps > 0.0:
        fe = factorial_ext(alpha)
        z = xa + 1j * eps
        vals = (fe / math.pi) * (1j ** (alpha + 1.0) / z ** (alpha + 1.0)).real
        return float(vals) if scalar else vals
    if np.any(xa == 0.0):
        if alpha >= 0.0:
            raise OriginSingular(
                f"b_alpha carries a distributional part at x = 0 for alpha = {alpha:g}"
            )
        # alpha < -1: continuous zero; -1 < alpha < 0: integrable divergence
    if spec.localized:
        vals = np.zeros_like(xa)
        return 0.0 if scalar else vals
    fe = factorial_ext(alpha)
    with np.errstate(divide="ignore"):
        vals = -(fe / math.pi) * xa ** (-alpha - 1.0) * math.sin(math.pi * alpha / 2.0)
    return float(vals) if scalar else vals


def laplacian_power_kernel(params: MediumParams, n: int, x):
    """Smooth part of the n-th Laplacian power applied to a point source.

    Equals a_delta^n * b_{n delta}(x); n = -1 recovers the static Green's
    function, n = 0 is the point source itself (zero smooth part plus the
    unit mass at the origin reported by :func:`delta_weight_at_origin`),
    and n >= 1 gives -(a_delta^n/pi) sin(pi n delta/2) (n delta)! |x|^(-n delta - 1).
    """
    if not isinstance(n, (int, np.integer)):
        raise AlphaOutOfRange(f"n must be an integer, got {n!r}")
    if n < -1:
        raise AlphaOutOfRange(f"powers below -1 are not defined, got n = {n}")
    xa = np.asarray(x, dtype=float)
    scalar = np.isscalar(x) or np.ndim(x) == 0
    if n == -1:
        return greens_static(params, x)
    if np.any(np.abs(xa) == 0.0):
        raise OriginSingular("the point-source powers are singular at x = 0")
    if n == 0:
        return 0.0 if scalar else np.zeros_like(xa)
    vals = params.a_delta**n * riesz_kernel(n * params.delta, x)
    return vals


def delta_weight_at_origin(n: int) -> float:
    """Weight of the point mass at x = 0 omitted by laplacian_power_kernel.

    Only the n = 0 member carries unit mass there; higher powers carry
    origin-concentrated oscillatory structure that is never sampled on a
    grid (convolutions against it are done spectrally).
    """
    return 1.0 if n == 0 else 0.0


def riesz_tail_integral(alpha: float, a: float) -> float:
    """int_a^inf b_alpha(x) dx = -(Gamma(alpha)/pi) a^(-alpha) sin(pi alpha / 2), alpha > 0."""
    if alpha <= 0.0:
        raise AlphaOutOfRange(f"tail integral requires alpha > 0, got {alpha}")
    if a <= 0.0:
        raise NonPositiveA(f"cut point must be > 0, got {a}")
    return -(_gamma(alpha) / math.pi) * a ** (-alpha) * math.sin(math.pi * alpha / 2.0)


def riesz_origin_integral(alpha: float, a: float) -> float:
    """int_0^a b_alpha(x) dx; exactly compensates the tail: head + tail = 0.

    Diverges like a^(-alpha) as a -> 0+: the origin stores infinitely more
    compensating mass than a point mass would.
    """
    return -riesz_tail_integral(alpha, a)


@dataclass(frozen=True)
class AnnihilationReport:
    """Result of the constant-annihilation sweep for one exponent."""

    alpha: float
    eps_values: tuple
    values: tuple
    max_abs: float


def constant_annihilation_check(alpha: float, eps_ladder=None, tol_inf: float = 1e-14) -> AnnihilationReport:
    """Verify Re int_0^inf dx / (eps - i x)^(alpha+1) = 0 across an eps sweep.

    Evaluates the closed antiderivative -(i/alpha)(eps - i x)^(-alpha) at
    both endpoints, the upper one at X large enough that |X^-alpha / alpha|
    is below tol_inf.  The vanishing of this integral is what lets the
    kernel family act as a fractional derivative that kills constants.
    The default ladder descends three decades from the configured
    regularization base.
    """
    if alpha <= 0.0:
        raise AlphaOutOfRange(f"check requires alpha > 0, got {alpha}")
    if eps_ladder is None:
        from .params import DEFAULT_QUADRATURE

        base = DEFAULT_QUADRATURE.epsilon
        eps_ladder = tuple(base * 10.0**-j for j in range(4))
    x_hi = (tol_inf * alpha) ** (-1.0 / alpha)
    vals = []
    for eps in eps_ladder:
        upper = (-1j / alpha) * (eps - 1j * x_hi) ** (-alpha)
        lower = (-1j / alpha) * complex(eps) ** (-alpha)
        vals.append(float((upper - lower).real))
    vals = tuple(vals)
    return AnnihilationReport(
        alpha=alpha,
        eps_values=tuple(eps_ladder),
        values=vals,
        max_abs=max(abs(v) for v in vals),
    )
