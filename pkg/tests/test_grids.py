import math

import numpy as np
import pytest

from selfsim import Grid1D, GridTooSmall, NonPositiveScale, RealField
from selfsim.errors import ValidationError
from selfsim.grids import field_to_spectral, sample_kernel, spectral_to_field


class TestGrid1D:
    def test_too_few_points(self):
        with pytest.raises(GridTooSmall):
            Grid1D(0.0, 0.1, 4)

    def test_nonpositive_spacing(self):
        with pytest.raises(NonPositiveScale):
            Grid1D(0.0, 0.0, 64)

    def test_centered_has_origin_sample(self):
        g = Grid1D.centered(64, 0.25)
        assert g.x[g.n // 2] == 0.0
        assert g.is_centered
        assert g.index_near(0.26) == g.n // 2 + 1

    def test_index_near_outside(self):
        g = Grid1D.centered(16, 0.5)
        with pytest.raises(ValidationError):
            g.index_near(100.0)

    def test_wavenumber_layout(self):
        g = Grid1D.centered(32, 0.5)
        assert g.k[0] == 0.0
        assert g.k[1] == pytest.approx(2.0 * math.pi / g.length)


class TestFields:
    def test_shape_mismatch(self):
        g = Grid1D.centered(16, 0.5)
        with pytest.raises(ValidationError):
            RealField(g, np.zeros(15))

    def test_nonfinite_rejected(self):
        g = Grid1D.centered(16, 0.5)
        vals = np.zeros(16)
        vals[3] = np.inf
        with pytest.raises(ValidationError):
            RealField(g, vals)

    def test_mass_is_discrete_integral(self):
        g = Grid1D.centered(512, 0.05)
        f = g.sample(lambda x: np.exp(-x * x))
        assert f.mass() == pytest.approx(math.sqrt(math.pi), rel=1e-10)


class TestTransforms:
    def test_round_trip(self):
        g = Grid1D.centered(256, 0.1)
        f = g.sample(lambda x: np.exp(-x * x) * np.cos(3 * x))
        back = spectral_to_field(field_to_spectral(f))
        assert np.max(np.abs(back.values - f.values)) < 1e-12

    def test_zero_mode_is_mass(self):
        g = Grid1D.centered(256, 0.1)
        f = g.sample(lambda x: np.exp(-x * x))
        s = field_to_spectral(f)
        assert s.amplitudes[0].real == pytest.approx(f.mass(), rel=1e-12)
        assert abs(s.amplitudes[0].imag) < 1e-14

    def test_gaussian_transform_pair(self):
        # u_hat of exp(-x^2) is sqrt(pi) exp(-k^2/4)
        g = Grid1D.centered(1024, 0.05)
        s = field_to_spectral(g.sample(lambda x: np.exp(-x * x)))
        want = math.sqrt(math.pi) * np.exp(-g.k**2 / 4.0)
        assert np.max(np.abs(s.amplitudes - want)) < 1e-10

    def test_off_center_grid_round_trip(self):
        # the x_min phase factors must cancel for any grid placement
        g = Grid1D(-3.7, 0.05, 1024)
        f = g.sample(lambda x: np.exp(-((x - 20.0) ** 2)))
        back = spectral_to_field(field_to_spectral(f))
        assert np.max(np.abs(back.values - f.values)) < 1e-12
        s = field_to_spectral(f)
        assert s.amplitudes[0].real == pytest.approx(f.mass(), rel=1e-12)


class TestSampleKernel:
    def test_gaussian_symbol_pair(self):
        # (1/2pi) int exp(-k^2) e^{ikx} dk = exp(-x^2/4) / (2 sqrt(pi))
        g = Grid1D.centered(1024, 0.1)
        vals = sample_kernel(g, np.exp(-g.k_half**2))
        want = np.exp(-g.x**2 / 4.0) / (2.0 * math.sqrt(math.pi))
        assert np.max(np.abs(vals - want)) < 1e-12

    def test_requires_centered_grid(self):
        g = Grid1D(0.0, 0.1, 64)
        with pytest.raises(ValidationError):
            sample_kernel(g, np.ones(33))

    def test_complex_symbol(self):
        g = Grid1D.centered(512, 0.1)
        sym = np.exp(-g.k_half**2) * (1.0 + 0.5j)
        vals = sample_kernel(g, sym)
        want = (1.0 + 0.5j) * np.exp(-g.x**2 / 4.0) / (2.0 * math.sqrt(math.pi))
        assert np.max(np.abs(vals - want)) < 1e-12
