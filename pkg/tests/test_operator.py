import math

import numpy as np
import pytest

from selfsim import (
    AlphaOutOfRange,
    DeltaOutOfRange,
    Grid1D,
    OriginSingular,
    QuadratureConfig,
    dispersion,
    flux_apply,
    frac_derivative_spectral,
    frac_kernel_y,
    laplacian_apply_point,
    laplacian_apply_spectral,
    make_params,
)
from selfsim.operator import weyl_marchaud

from oracles import frac_kernel_sweep

TIGHT = QuadratureConfig(abs_tol=1e-11)


class TestLaplacianPoint:
    def test_annihilates_constants(self, params_half):
        val = laplacian_apply_point(params_half, lambda u: 3.7, 0.4)
        assert abs(val) < 1e-10

    @pytest.mark.parametrize("delta", [0.5, 1.0, 1.5])
    @pytest.mark.parametrize("x", [0.0, 0.3])
    def test_plane_wave_eigenvalue(self, delta, x):
        p = make_params(delta, 1.0, 1.0)
        got = laplacian_apply_point(p, lambda u: math.cos(2.0 * u), x)
        want = -dispersion(p, 2.0) * math.cos(2.0 * x)
        assert got == pytest.approx(want, rel=1e-4)

    @pytest.mark.parametrize("delta", [0.25, 0.5, 1.0, 1.5, 1.9])
    def test_gaussian_matches_spectral(self, delta):
        # wide grid so the spectral route's finite-window mean offset is
        # below the comparison tolerance; residual normalized by the peak
        p = make_params(delta, 1.0, 1.0)
        grid = Grid1D.centered(1 << 21, 0.01)
        lap = laplacian_apply_spectral(p, grid.sample(lambda x: np.exp(-x * x)))
        scale = float(np.max(np.abs(lap.values)))
        worst = 0.0
        for x in (0.0, 0.5, 1.0):
            q = laplacian_apply_point(p, lambda u: np.exp(-u * u), x, TIGHT)
            worst = max(worst, abs(q - lap.value_near(x)) / scale)
        assert worst < 1e-5

    def test_narrow_bump_far_field_is_power_kernel(self, params_half):
        # width -> 0 extrapolation of the Laplacian of a unit-mass bump at
        # distance 1 recovers (h^delta/zeta) |x|^(-1-delta) = 1
        widths = [0.2, 0.1, 0.05]
        vals = []
        for w in widths:
            fn = lambda u, w=w: np.exp(-u * u / (2 * w * w)) / (math.sqrt(2 * math.pi) * w)
            vals.append(laplacian_apply_point(params_half, fn, 1.0, TIGHT))
        tab = list(vals)
        xs = [w * w for w in widths]
        for level in range(1, 3):
            for i in range(3 - level):
                x0, x1 = xs[i], xs[i + level]
                tab[i] = (x1 * tab[i] - x0 * tab[i + 1]) / (x1 - x0)
        assert tab[0] == pytest.approx(1.0, abs=5e-4)


class TestLaplacianSpectral:
    def test_annihilates_constants(self, params_half, small_grid):
        f = small_grid.sample(lambda x: np.full_like(x, 2.5))
        out = laplacian_apply_spectral(params_half, f)
        assert np.max(np.abs(out.values)) < 1e-12

    def test_on_grid_mode_is_exact_eigenfunction(self, params_three_halves, small_grid):
        k0 = 24 * 2.0 * math.pi / small_grid.length
        f = small_grid.sample(lambda x: np.cos(k0 * x))
        out = laplacian_apply_spectral(params_three_halves, f)
        want = -dispersion(params_three_halves, k0) * np.cos(k0 * small_grid.x)
        assert np.max(np.abs(out.values - want)) / dispersion(params_three_halves, k0) < 1e-10

    def test_self_adjoint_and_negative(self, params_half, small_grid):
        rng = np.random.default_rng(7)
        x = small_grid.x
        f = small_grid.sample(lambda x: np.exp(-x * x) * np.cos(2 * x))
        g = small_grid.sample(lambda x: np.exp(-((x - 1) ** 2) / 2))
        lf = laplacian_apply_spectral(params_half, f)
        lg = laplacian_apply_spectral(params_half, g)
        a = np.dot(f.values, lg.values)
        b = np.dot(lf.values, g.values)
        assert a == pytest.approx(b, rel=1e-12)
        for _ in range(5):
            h = small_grid.sample(
                lambda x, c=rng.uniform(1, 3), s=rng.uniform(0.5, 2): np.exp(-x * x / s) * np.cos(c * x)
            )
            lh = laplacian_apply_spectral(params_half, h)
            assert np.dot(h.values, lh.values) <= 1e-12

    def test_quadratic_form_vanishes_only_for_constants(self, params_half, small_grid):
        const = small_grid.sample(lambda x: np.full_like(x, 1.3))
        lc = laplacian_apply_spectral(params_half, const)
        assert abs(np.dot(const.values, lc.values)) < 1e-10
        bump = small_grid.sample(lambda x: np.exp(-x * x))
        lb = laplacian_apply_spectral(params_half, bump)
        assert np.dot(bump.values, lb.values) < -1e-3


class TestWeylMarchaud:
    def test_range_restriction(self):
        with pytest.raises(DeltaOutOfRange):
            weyl_marchaud(1.2, lambda u: u, 0.0, "left")

    def test_constant_annihilated(self):
        for side in ("left", "right"):
            assert abs(weyl_marchaud(0.5, lambda u: 4.0, 0.3, side)) < 1e-10

    def test_even_function_sides_agree_at_origin(self):
        left = weyl_marchaud(0.5, lambda u: math.cos(u), 0.0, "left")
        right = weyl_marchaud(0.5, lambda u: math.cos(u), 0.0, "right")
        assert left == pytest.approx(right, rel=1e-9)

    def test_recombination_reproduces_laplacian(self, params_half):
        # the right-sided derivative carries a principal-branch phase
        # (-1)^delta that cancels against (-1)^-delta in the recombination,
        # leaving the real sum of the two one-sided integrals
        delta = params_half.delta
        coef = params_half.h**delta * math.gamma(1.0 - delta) / (params_half.zeta * delta)
        f = lambda u: np.exp(-u * u)  # noqa: E731
        for x in (0.0, 0.4, 1.0):
            dl = weyl_marchaud(delta, f, x, "left")
            dr = weyl_marchaud(delta, f, x, "right")
            lap = laplacian_apply_point(params_half, f, x)
            assert -coef * (dl + dr) == pytest.approx(lap, rel=1e-5)


class TestFlux:
    def test_symmetric_density_gives_antisymmetric_flux(self, params_half, gaussian_field):
        j = flux_apply(params_half, gaussian_field)
        n = gaussian_field.grid.n
        assert abs(j.values[n // 2]) < 1e-12
        assert np.max(np.abs(j.values[1:] + j.values[1:][::-1])) < 1e-10

    def test_constant_gives_zero_flux(self, params_half, small_grid):
        f = small_grid.sample(lambda x: np.full_like(x, 0.8))
        assert np.max(np.abs(flux_apply(params_half, f).values)) == 0.0

    @pytest.mark.parametrize("delta", [0.5, 1.0, 1.5])
    def test_divergence_matches_laplacian(self, delta):
        p = make_params(delta, 1.0, 1.0)
        grid = Grid1D.centered(16384, 0.02)
        rho = grid.sample(lambda x: np.exp(-x * x))
        j = flux_apply(p, rho).values
        div = np.gradient(j, grid.dx, edge_order=2)
        lap = laplacian_apply_spectral(p, rho).values
        scale = np.max(np.abs(lap))
        # second-order differences of the flux leave an O(dx^2) defect
        assert np.max(np.abs(div + lap)) / scale < 1e-3

    def test_cauchy_density_flux_balances_time_derivative(self, params_one):
        # closed-form time derivative of the Lorentzian vs flux divergence
        grid = Grid1D.centered(65536, 0.01)
        s = params_one.a_delta
        rho = grid.sample(lambda x: (1.0 / math.pi) * s / (x * x + s * s))
        drho_dt = (1.0 / math.pi) * params_one.a_delta * (grid.x**2 - s * s) / (grid.x**2 + s * s) ** 2
        j = flux_apply(params_one, rho).values
        div = np.gradient(j, grid.dx, edge_order=2)
        resid = drho_dt + div
        assert np.max(np.abs(resid)) / np.max(np.abs(drho_dt)) < 1e-4


class TestFracKernel:
    def test_integer_orders_localized(self):
        assert frac_kernel_y(1.0, 0.7) == 0.0
        assert frac_kernel_y(2.0, -1.3) == 0.0

    def test_half_order_value(self):
        # frozen: -Gamma(1.5) sin(pi/2) / pi, confirmed by the damped sweep
        assert frac_kernel_y(0.5, 1.0) == pytest.approx(-0.28209479177387814, rel=1e-12)
        assert frac_kernel_y(0.5, 1.0) == pytest.approx(frac_kernel_sweep(0.5, 1.0), abs=1e-7)

    def test_kernel_is_one_sided(self):
        # the defining transform of (ik)^alpha vanishes for x < 0; the
        # damped-sweep oracle confirms the cancellation
        assert frac_kernel_y(0.5, -1.0) == 0.0
        assert abs(frac_kernel_sweep(0.5, -1.0)) < 1e-7

    def test_regularized_form_converges_to_limit(self):
        vals = [frac_kernel_y(0.5, 1.0, eps) for eps in (0.1, 0.01, 0.001)]
        errs = [abs(v - frac_kernel_y(0.5, 1.0)) for v in vals]
        assert errs[0] > errs[1] > errs[2]

    def test_origin_needs_regularization(self):
        with pytest.raises(OriginSingular):
            frac_kernel_y(0.5, 0.0, 0.0)
        assert math.isfinite(frac_kernel_y(0.5, 0.0, 0.5))

    def test_alpha_band(self):
        with pytest.raises(AlphaOutOfRange):
            frac_kernel_y(-1.5, 1.0)


class TestFracDerivativeSpectral:
    def test_first_derivative_of_sine(self, small_grid):
        k0 = 16 * 2.0 * math.pi / small_grid.length
        f = small_grid.sample(lambda x: np.sin(k0 * x))
        out = frac_derivative_spectral(1.0, f)
        assert np.max(np.abs(out.values - k0 * np.cos(k0 * small_grid.x))) < 1e-10

    def test_second_derivative_of_gaussian(self, small_grid, gaussian_field):
        out = frac_derivative_spectral(2.0, gaussian_field)
        x = small_grid.x
        want = (4 * x * x - 2) * np.exp(-x * x)
        assert np.max(np.abs(out.values - want)) < 1e-8

    def test_identity_at_zero(self, gaussian_field):
        out = frac_derivative_spectral(0.0, gaussian_field)
        assert np.max(np.abs(out.values - gaussian_field.values)) < 1e-14

    def test_half_derivative_squares_to_first(self, small_grid, gaussian_field):
        once = frac_derivative_spectral(0.5, gaussian_field)
        twice = frac_derivative_spectral(0.5, once)
        want = frac_derivative_spectral(1.0, gaussian_field)
        assert np.max(np.abs(twice.values - want.values)) < 1e-10

    def test_negative_order_rejected(self, gaussian_field):
        with pytest.raises(AlphaOutOfRange):
            frac_derivative_spectral(-0.5, gaussian_field)
