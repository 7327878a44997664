"""Tests for the spectral core: transforms, multipliers, norms."""

import math

import numpy as np
import pytest

from sqglab import (
    AsymmetryError,
    Grid,
    InvalidFieldError,
    ParameterError,
    RealField,
    SpectralField,
    dealias,
    forward_transform,
    fractional_laplacian,
    gradient_sup,
    hermitian_asymmetry,
    inverse_transform,
    l2_norm,
    linf_norm,
    riesz_velocity,
    sobolev_norm,
)

TWO_PI = 2.0 * math.pi


def grid(n=64, length=TWO_PI):
    return Grid(n, length)


def random_field(g, seed=0):
    rng = np.random.default_rng(seed)
    return RealField(g, rng.standard_normal((g.n, g.n)))


def direct_dft(values, n):
    """O(n^4) reference transform under the package convention."""
    j = np.arange(n)
    w = np.exp(-2j * np.pi * np.outer(j, j) / n)
    return w @ values @ w.T / n ** 2


class TestGrid:
    def test_rejects_odd_or_small_n(self):
        with pytest.raises(ParameterError):
            Grid(7, 1.0)
        with pytest.raises(ParameterError):
            Grid(4, 1.0)
        with pytest.raises(ParameterError):
            Grid(8, -1.0)

    def test_wavenumber_lattice(self):
        g = grid(8, 4.0)
        m = np.fft.fftfreq(8, d=1 / 8)
        assert np.allclose(g.k1[:, 0], 2 * np.pi / 4.0 * m)
        # symmetric under negation except Nyquist
        for i in range(1, 4):
            assert g.k1[i, 0] == -g.k1[-i, 0]
        assert np.allclose(g.kmag, np.hypot(g.k1, g.k2))


class TestTransforms:
    def test_zero_field(self):
        g = grid()
        F = forward_transform(RealField(g, np.zeros((g.n, g.n))))
        assert np.all(F.coeffs == 0)
        assert np.all(inverse_transform(F).values == 0)

    def test_single_cosine_mode(self):
        g = grid()
        x1, _ = g.points()
        F = forward_transform(RealField(g, np.cos(x1)))
        expected = np.zeros((g.n, g.n), dtype=complex)
        expected[1, 0] = 0.5
        expected[-1, 0] = 0.5
        assert np.max(np.abs(F.coeffs - expected)) < 1e-15

    def test_single_mode_inverse(self):
        g = grid()
        coeffs = np.zeros((g.n, g.n), dtype=complex)
        coeffs[1, 0] = 0.5
        coeffs[-1, 0] = 0.5
        f = inverse_transform(SpectralField(g, coeffs))
        x1, _ = g.points()
        assert np.max(np.abs(f.values - np.cos(x1))) < 1e-14

    @pytest.mark.parametrize("seed", range(3))
    def test_forward_matches_direct_dft_n8(self, seed):
        g = grid(8)
        f = random_field(g, seed)
        F = forward_transform(f)
        ref = direct_dft(f.values, 8)
        assert np.max(np.abs(F.coeffs - ref)) < 1e-12

    @pytest.mark.parametrize("seed", range(3))
    def test_inverse_recovers_direct_dft_data(self, seed):
        g = grid(8)
        f = random_field(g, seed)
        F = SpectralField(g, direct_dft(f.values, 8))
        back = inverse_transform(F)
        assert np.max(np.abs(back.values - f.values)) < 1e-12

    @pytest.mark.parametrize("n", [8, 16, 32])
    def test_round_trip(self, n):
        g = grid(n)
        f = random_field(g, n)
        back = inverse_transform(forward_transform(f))
        scale = np.max(np.abs(f.values))
        assert np.max(np.abs(back.values - f.values)) < 1e-12 * scale

    def test_rejects_non_finite(self):
        g = grid(8)
        values = np.zeros((8, 8))
        values[3, 4] = np.inf
        with pytest.raises(InvalidFieldError):
            forward_transform(RealField(g, values))

    def test_asymmetry_error_reports_mode(self):
        g = grid(8)
        coeffs = np.zeros((8, 8), dtype=complex)
        coeffs[2, 1] = 1.0  # no conjugate partner
        with pytest.raises(AsymmetryError) as err:
            inverse_transform(SpectralField(g, coeffs))
        assert set(np.abs(err.value.mode)) == {2, 1}

    def test_parseval(self):
        for n in (8, 16, 32):
            g = grid(n)
            f = random_field(g, n + 1)
            F = forward_transform(f)
            quad = l2_norm(f) ** 2
            spectral = g.length ** 2 * np.sum(np.abs(F.coeffs) ** 2)
            assert abs(quad - spectral) <= 1e-10 * quad


class TestFractionalLaplacian:
    def test_unit_mode_is_eigenfunction(self):
        g = grid()
        x1, _ = g.points()
        F = forward_transform(RealField(g, np.sin(x1)))
        for gamma in (0.3, 1.0, 2.0):
            out = inverse_transform(fractional_laplacian(F, gamma))
            assert np.max(np.abs(out.values - np.sin(x1))) < 1e-12

    def test_mode_two(self):
        g = grid()
        x1, _ = g.points()
        F = forward_transform(RealField(g, np.sin(2 * x1)))
        out = inverse_transform(fractional_laplacian(F, 1.0))
        assert np.max(np.abs(out.values - 2 * np.sin(2 * x1))) < 1e-13

    def test_gamma_two_matches_minus_laplacian(self):
        g = grid(16)
        F = forward_transform(random_field(g, 5))
        out = fractional_laplacian(F, 2.0)
        expected = (g.k1 ** 2 + g.k2 ** 2) * F.coeffs
        assert np.max(np.abs(out.coeffs - expected)) < 1e-12

    def test_gamma_range(self):
        g = grid(8)
        F = forward_transform(random_field(g))
        for gamma in (0.0, -1.0, 2.5):
            with pytest.raises(ParameterError):
                fractional_laplacian(F, gamma)

    def test_positive_semidefinite(self):
        g = grid(16)
        F = forward_transform(random_field(g, 9))
        for gamma in (0.5, 1.0, 2.0):
            out = fractional_laplacian(F, gamma)
            quad = g.length ** 2 * np.sum(np.conj(F.coeffs) * out.coeffs).real
            assert quad >= 0.0


class TestRieszVelocity:
    def test_sin_x1(self):
        g = grid()
        x1, _ = g.points()
        vel = riesz_velocity(forward_transform(RealField(g, np.sin(x1))))
        u1 = inverse_transform(vel.u1).values
        u2 = inverse_transform(vel.u2).values
        assert np.max(np.abs(u1)) < 1e-14
        assert np.max(np.abs(u2 - np.cos(x1))) < 1e-14

    def test_cos_x2(self):
        g = grid()
        _, x2 = g.points()
        vel = riesz_velocity(forward_transform(RealField(g, np.cos(x2))))
        u1 = inverse_transform(vel.u1).values
        u2 = inverse_transform(vel.u2).values
        assert np.max(np.abs(u1 - np.sin(x2))) < 1e-14
        assert np.max(np.abs(u2)) < 1e-14

    def test_constant_field(self):
        g = grid(8)
        vel = riesz_velocity(forward_transform(RealField(g, np.full((8, 8), 3.7))))
        assert np.all(vel.u1.coeffs == 0)
        assert np.all(vel.u2.coeffs == 0)

    @pytest.mark.parametrize("seed", range(3))
    def test_divergence_free(self, seed):
        g = grid(32)
        vel = riesz_velocity(forward_transform(random_field(g, seed)))
        div = g.k1 * vel.u1.coeffs + g.k2 * vel.u2.coeffs
        assert np.max(np.abs(div)) < 1e-13

    def test_output_is_real(self):
        g = grid(16)
        vel = riesz_velocity(forward_transform(random_field(g, 11)))
        inverse_transform(vel.u1)
        inverse_transform(vel.u2)


class TestNorms:
    def test_zero(self):
        g = grid(8)
        F = SpectralField(g, np.zeros((8, 8), dtype=complex))
        assert sobolev_norm(F, 1.0) == 0.0

    def test_sin_all_orders(self):
        g = grid()
        x1, _ = g.points()
        F = forward_transform(RealField(g, np.sin(x1)))
        expected = math.sqrt(2.0 * math.pi ** 2)
        for s in (0.0, 0.5, 1.0, 1.5, 2.0):
            assert abs(sobolev_norm(F, s) - expected) < 1e-12
        # s = 0 agrees with grid quadrature
        assert abs(sobolev_norm(F, 0.0) - l2_norm(RealField(g, np.sin(x1)))) < 1e-12

    def test_multiplier_homogeneity(self):
        g = grid()
        x1, _ = g.points()
        F = forward_transform(RealField(g, np.sin(2 * x1)))
        assert abs(sobolev_norm(F, 1.0) - 2.0 * sobolev_norm(F, 0.0)) < 1e-12

    def test_single_mode_ratio_exact(self):
        g = grid()
        x1, x2 = g.points()
        F = forward_transform(RealField(g, np.sin(3 * x1 + 0.0 * x2)))
        a, b = 1.7, 0.4
        ratio = sobolev_norm(F, a) / sobolev_norm(F, b)
        assert abs(ratio - 3.0 ** (a - b)) < 1e-12

    def test_zero_mode_conventions(self):
        g = grid(8)
        F = forward_transform(RealField(g, np.full((8, 8), 2.0)))
        # s = 0 includes the mean, s > 0 does not
        assert abs(sobolev_norm(F, 0.0) - 2.0 * g.length) < 1e-12
        assert sobolev_norm(F, 1.0) == 0.0

    def test_negative_order_rejected(self):
        g = grid(8)
        F = forward_transform(random_field(g))
        with pytest.raises(ParameterError):
            sobolev_norm(F, -0.5)

    def test_linf_and_gradient_sup(self):
        g = grid()
        x1, x2 = g.points()
        f = RealField(g, np.sin(x1))
        assert abs(linf_norm(f) - 1.0) < 1e-14
        assert abs(gradient_sup(f) - 1.0) < 1e-13
        f2 = RealField(g, np.sin(x1) + np.sin(x2))
        assert abs(gradient_sup(f2) - math.sqrt(2.0)) < 1e-13

    def test_gradient_sup_fourier_bound(self):
        g = grid(32)
        f = random_field(g, 13)
        F = forward_transform(f)
        bound = float(np.sum(g.kmag * np.abs(F.coeffs)))
        assert gradient_sup(f) <= bound * (1.0 + 1e-12)


class TestDealias:
    def test_low_modes_unchanged(self):
        g = grid(24)
        coeffs = np.zeros((24, 24), dtype=complex)
        coeffs[3, 2] = 1.0
        coeffs[-3, -2] = 1.0
        F = SpectralField(g, coeffs)
        assert np.array_equal(dealias(F).coeffs, coeffs)

    def test_high_modes_zeroed(self):
        g = grid(24)
        coeffs = np.zeros((24, 24), dtype=complex)
        coeffs[11, 0] = 1.0
        coeffs[-11, 0] = 1.0
        assert np.all(dealias(SpectralField(g, coeffs)).coeffs == 0)

    def test_idempotent(self):
        g = grid(16)
        F = forward_transform(random_field(g, 2))
        once = dealias(F)
        twice = dealias(once)
        assert np.array_equal(once.coeffs, twice.coeffs)


def test_hermitian_asymmetry_of_real_fft_is_tiny():
    g = grid(32)
    F = forward_transform(random_field(g, 17))
    asym, _ = hermitian_asymmetry(F)
    assert asym < 1e-14
