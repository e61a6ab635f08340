"""Uniform grids, sampled fields, and FFT plumbing.

Periodic spectral approximation of operators defined on the infinite line:
the caller is responsible for choosing a grid wide enough that wrap-around
contamination in the region of interest is below tolerance (a "guard band").
Wavenumbers follow the usual FFT layout, k_j = 2*pi*j/(n*dx) with j in
[-n/2, n/2).

Two transform normalizations are used:

* fields:   u_hat(k) = dx * sum_j u_j exp(-i k x_j)  (continuum convention,
  so the k = 0 amplitude equals the discrete integral of the field);
* kernels:  sample_kernel() synthesizes (1/2pi) int S(k) exp(i k x) dk on
  the grid from symbol samples S(k_j).

Centered grids (x_min = -(n//2) dx) make the kernel phase factor (-1)^j,
so even real symbols can use the half-spectrum irfft fast path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridTooSmall, NonPositiveScale, ValidationError

__all__ = [
    "Grid1D",
    "RealField",
    "ComplexField",
    "SpectralField",
    "field_to_spectral",
    "spectral_to_field",
    "apply_symbol",
    "sample_kernel",
]

MIN_POINTS = 8


@dataclass(frozen=True)
class Grid1D:
    """Uniform sampling grid: x_j = x_min + j*dx for j = 0..n-1."""

    x_min: float
    dx: float
    n: int

    def __post_init__(self):
        if self.dx <= 0.0 or not np.isfinite(self.dx):
            raise NonPositiveScale(f"dx must be > 0, got {self.dx}")
        if self.n < MIN_POINTS:
            raise GridTooSmall(f"need at least {MIN_POINTS} points, got {self.n}")

    @classmethod
    def centered(cls, n: int, dx: float) -> "Grid1D":
        """Grid symmetric about the origin; x = 0 sits at index n//2."""
        return cls(x_min=-(n // 2) * dx, dx=dx, n=n)

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n)

    @property
    def k(self) -> np.ndarray:
        """Angular wavenumbers in FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)

    @property
    def k_half(self) -> np.ndarray:
        """Nonnegative wavenumbers (rfft layout)."""
        return 2.0 * np.pi * np.fft.rfftfreq(self.n, d=self.dx)

    @property
    def length(self) -> float:
        return self.n * self.dx

    @property
    def is_centered(self) -> bool:
        return self.x_min == -(self.n // 2) * self.dx

    def index_near(self, x: float) -> int:
        """Index of the grid point closest to x."""
        j = int(round((x - self.x_min) / self.dx))
        if not 0 <= j < self.n:
            raise ValidationError(f"x = {x} falls outside the grid")
        return j

    def sample(self, fn) -> "RealField":
        return RealField(self, np.asarray(fn(self.x), dtype=float))


def _check_values(grid: Grid1D, values: np.ndarray, name: str) -> np.ndarray:
    values = np.asarray(values)
    if values.shape != (grid.n,):
        raise ValidationError(f"{name} must have shape ({grid.n},), got {values.shape}")
    if not np.all(np.isfinite(values)):
        raise ValidationError(f"{name} contains non-finite samples")
    return values


@dataclass(frozen=True)
class RealField:
    """Real samples over a Grid1D."""

    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.grid, self.values, "values").astype(float))

    def mass(self) -> float:
        """Discrete integral sum(values) * dx."""
        return float(np.sum(self.values) * self.grid.dx)

    def value_near(self, x: float) -> float:
        return float(self.values[self.grid.index_near(x)])


@dataclass(frozen=True)
class ComplexField:
    """Complex samples over a Grid1D (e.g. frequency-domain Green's function)."""

    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.grid, self.values, "values").astype(complex))

    def value_near(self, x: float) -> complex:
        return complex(self.values[self.grid.index_near(x)])


@dataclass(frozen=True)
class SpectralField:
    """Amplitudes on the wavenumber grid, continuum normalization."""

    grid: Grid1D
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "amplitudes", _check_values(self.grid, self.amplitudes, "amplitudes").astype(complex)
        )


def field_to_spectral(f: RealField) -> SpectralField:
    """u_hat(k_j) = dx * sum u exp(-i k_j x); k = 0 amplitude is the mass."""
    g = f.grid
    phase = np.exp(-1j * g.k * g.x_min)
    return SpectralField(g, g.dx * np.fft.fft(f.values) * phase)


def spectral_to_field(s: SpectralField) -> RealField:
    g = s.grid
    phase = np.exp(1j * g.k * g.x_min)
    vals = np.fft.ifft(s.amplitudes * phase) / g.dx
    return RealField(g, vals.real)


def apply_symbol(f: RealField, symbol: np.ndarray) -> RealField:
    """Inverse transform of symbol(k) * transform(f); symbol in fft order.

    The x_min phases cancel for diagonal multipliers, so plain fft/ifft
    suffices.  Real output is returned (conjugate-symmetric symbols only).
    """
    g = f.grid
    if g.n < MIN_POINTS:
        raise GridTooSmall(f"need at least {MIN_POINTS} points")
    out = np.fft.ifft(np.fft.fft(f.values) * symbol)
    return RealField(g, out.real)


def sample_kernel(grid: Grid1D, symbol_half: np.ndarray):
    """Sample (1/2pi) int S(k) e^{ikx} dk on the grid from S(k_j), j >= 0.

    ``symbol_half`` holds the rfft-layout samples of an even symbol
    (S(-k) = S(k)); real symbols give real kernels, complex ones give
    complex kernels (real and imaginary parts transformed separately).
    Requires a centered grid so the shift phase is the real sequence
    (-1)^j.
    """
    if not grid.is_centered:
        raise ValidationError("kernel synthesis requires a centered grid")
    if grid.n % 2:
        # the (-1)^j shift phase below is exact only for even point counts
        raise ValidationError("kernel synthesis requires an even point count")
    symbol_half = np.asarray(symbol_half)
    if symbol_half.shape != (grid.n // 2 + 1,):
        raise ValidationError(
            f"symbol_half must have shape ({grid.n // 2 + 1},), got {symbol_half.shape}"
        )
    signs = np.where(np.arange(symbol_half.size) % 2 == 0, 1.0, -1.0)
    if np.iscomplexobj(symbol_half):
        re = np.fft.irfft(symbol_half.real * signs, n=grid.n) / grid.dx
        im = np.fft.irfft(symbol_half.imag * signs, n=grid.n) / grid.dx
        return re + 1j * im
    return np.fft.irfft(symbol_half * signs, n=grid.n) / grid.dx
