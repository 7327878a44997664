"""Discrete Fourier representation of real scalar fields on a periodic box.

Conventions
-----------
Grid points are x_j = (L/n) * j, j = 0..n-1 per axis, values stored row-major
with the second axis fastest.  Coefficients follow the normalization

    F(m) = (1/n^2) * sum_j f(x_j) exp(-i k(m) . x_j),   k(m) = (2 pi / L) m,

in FFT ordering (m = 0, 1, .., n/2-1, -n/2, .., -1 per axis).  Under this
convention Parseval reads ||f||_{L^2}^2 = L^2 * sum_m |F(m)|^2 and the
homogeneous Sobolev norms are plain weighted coefficient sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AsymmetryError, InvalidFieldError, ParameterError

HERMITIAN_TOL = 1e-10


class Grid:
    """Uniform n x n periodic grid on [0, L)^2 and its wavenumber lattice.

    Precomputes the spectral multiplier geometry: physical wavenumbers
    ``k1``/``k2``, the modulus ``kmag``, odd-derivative multipliers
    ``k1_diff``/``k2_diff`` with the Nyquist line zeroed (so derivatives of
    real fields stay real), and the 2/3-rule dealias mask.
    """

    def __init__(self, n: int, length: float):
        n = int(n)
        if n % 2 != 0 or n < 8:
            raise ParameterError(f"grid size must be even and >= 8, got {n}")
        if not np.isfinite(length) or length <= 0:
            raise ParameterError(f"box length must be positive, got {length}")
        self.n = n
        self.length = float(length)
        self.dx = self.length / n

        m = np.fft.fftfreq(n, d=1.0 / n)  # integer frequencies, Nyquist at -n/2
        self.m1 = m[:, None]
        self.m2 = m[None, :]
        scale = 2.0 * np.pi / self.length
        self.k1 = scale * self.m1
        self.k2 = scale * self.m2
        self.kmag = np.hypot(np.broadcast_to(self.k1, (n, n)),
                             np.broadcast_to(self.k2, (n, n)))

        m_diff = m.copy()
        m_diff[n // 2] = 0.0  # Nyquist mode carries no well-defined sign
        self.k1_diff = scale * m_diff[:, None]
        self.k2_diff = scale * m_diff[None, :]
        self.nyquist_free = (np.abs(self.m1) < n // 2) & (np.abs(self.m2) < n // 2)

        cutoff = n / 3.0
        self.dealias_mask = (np.abs(self.m1) <= cutoff) & (np.abs(self.m2) <= cutoff)

        self._pow_cache: dict[float, np.ndarray] = {}

    def points(self):
        """Coordinate arrays (x1, x2), each of shape (n, n)."""
        x = self.dx * np.arange(self.n)
        return np.meshgrid(x, x, indexing="ij")

    def kmag_pow(self, s: float) -> np.ndarray:
        """|k|^s with 0^s = 0 for s > 0 and 0^0 = 1, cached per exponent."""
        s = float(s)
        out = self._pow_cache.get(s)
        if out is None:
            with np.errstate(divide="ignore"):
                out = self.kmag ** s
            self._pow_cache[s] = out
        return out

    def __eq__(self, other):
        return (isinstance(other, Grid) and other.n == self.n
                and other.length == self.length)

    def __hash__(self):
        return hash((self.n, self.length))

    def __repr__(self):
        return f"Grid(n={self.n}, length={self.length})"


@dataclass(frozen=True)
class RealField:
    """Real grid samples of a scalar field."""

    grid: Grid
    values: np.ndarray


@dataclass(frozen=True)
class SpectralField:
    """Fourier coefficients of a real scalar field (full complex array)."""

    grid: Grid
    coeffs: np.ndarray

    def copy(self) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs.copy())


@dataclass(frozen=True)
class VelocityField:
    """Two spectral velocity components on a common grid."""

    u1: SpectralField
    u2: SpectralField

    @property
    def grid(self) -> Grid:
        return self.u1.grid


def forward_transform(f: RealField) -> SpectralField:
    """Transform grid values to Fourier coefficients."""
    values = np.asarray(f.values, dtype=np.float64)
    if values.shape != (f.grid.n, f.grid.n):
        raise InvalidFieldError(
            f"expected shape {(f.grid.n, f.grid.n)}, got {values.shape}")
    if not np.all(np.isfinite(values)):
        raise InvalidFieldError("field values contain non-finite entries")
    coeffs = np.fft.fft2(values) / (f.grid.n ** 2)
    return SpectralField(f.grid, coeffs)


def hermitian_asymmetry(F: SpectralField):
    """Max |F(-m) - conj(F(m))| and the mode index achieving it."""
    c = F.coeffs
    n = F.grid.n
    idx = (-np.arange(n)) % n
    mirrored = np.conj(c[np.ix_(idx, idx)])
    diff = np.abs(c - mirrored)
    flat = int(np.argmax(diff))
    mode = np.unravel_index(flat, diff.shape)
    m = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    return float(diff[mode]), (m[mode[0]], m[mode[1]])


def inverse_transform(F: SpectralField) -> RealField:
    """Transform coefficients back to real grid values.

    Requires Hermitian symmetry to ``HERMITIAN_TOL`` (scaled by the
    coefficient magnitude); the residual imaginary part is checked against
    the same tolerance and discarded.
    """
    scale = max(1.0, float(np.max(np.abs(F.coeffs))) if F.coeffs.size else 1.0)
    tol = HERMITIAN_TOL * scale
    asym, mode = hermitian_asymmetry(F)
    if asym > tol:
        raise AsymmetryError(mode, asym, tol)
    values = np.fft.ifft2(F.coeffs) * (F.grid.n ** 2)
    resid = float(np.max(np.abs(values.imag)))
    if resid > tol:
        raise AsymmetryError((0, 0), resid, tol)
    return RealField(F.grid, np.ascontiguousarray(values.real))


def _ifft_real(F: SpectralField) -> np.ndarray:
    """Unchecked real-part inverse transform for solver hot paths."""
    return np.fft.ifft2(F.coeffs).real * (F.grid.n ** 2)


def fractional_laplacian(F: SpectralField, gamma: float) -> SpectralField:
    """Apply (-Laplace)^{gamma/2}, i.e. multiply by |k|^gamma (zero mode -> 0)."""
    if not 0.0 < gamma <= 2.0:
        raise ParameterError(f"gamma must lie in (0, 2], got {gamma}")
    return SpectralField(F.grid, F.grid.kmag_pow(gamma) * F.coeffs)


def riesz_velocity(theta: SpectralField) -> VelocityField:
    """Velocity (-R2 theta, R1 theta) from the scalar via Riesz multipliers.

    u1 = -i k2/|k| theta, u2 = +i k1/|k| theta; the zero mode and the Nyquist
    lines are set to zero (the symbol is undefined at k = 0, and Nyquist
    content would break Hermitian symmetry).  The result is divergence free
    mode by mode.
    """
    grid = theta.grid
    inv_k = np.zeros_like(grid.kmag)
    np.divide(1.0, grid.kmag, out=inv_k, where=grid.kmag > 0.0)
    mask = grid.nyquist_free
    u1 = np.where(mask, -1j * grid.k2 * inv_k * theta.coeffs, 0.0)
    u2 = np.where(mask, 1j * grid.k1 * inv_k * theta.coeffs, 0.0)
    return VelocityField(SpectralField(grid, u1), SpectralField(grid, u2))


def gradient(F: SpectralField) -> tuple[SpectralField, SpectralField]:
    """Spectral gradient components (i k1 F, i k2 F), Nyquist zeroed per axis."""
    g1 = 1j * F.grid.k1_diff * F.coeffs
    g2 = 1j * F.grid.k2_diff * F.coeffs
    return SpectralField(F.grid, g1), SpectralField(F.grid, g2)


def dealias(F: SpectralField) -> SpectralField:
    """2/3-rule truncation: zero coefficients with max(|m1|, |m2|) > n/3."""
    return SpectralField(F.grid, np.where(F.grid.dealias_mask, F.coeffs, 0.0))


def sobolev_norm(F: SpectralField, s: float) -> float:
    """Homogeneous Sobolev norm (L^2 sum_m |k|^{2s} |F(m)|^2)^{1/2}.

    For s = 0 the zero mode is included (|k|^0 = 1 there), so the value is
    the full L^2 norm; for s > 0 the zero mode contributes nothing.
    """
    if s < 0:
        raise ParameterError(f"Sobolev order must be >= 0, got {s}")
    w = F.grid.kmag_pow(2.0 * s)
    total = float(np.sum(w * (F.coeffs.real ** 2 + F.coeffs.imag ** 2)))
    return F.grid.length * np.sqrt(total)


def linf_norm(f: RealField) -> float:
    """Grid maximum of |f|."""
    return float(np.max(np.abs(f.values)))


def l2_norm(f: RealField) -> float:
    """L^2 norm by direct grid quadrature."""
    return float(np.sqrt(np.sum(f.values ** 2))) * f.grid.dx


def gradient_sup(f: RealField) -> float:
    """Grid maximum of |grad f| with the gradient computed spectrally."""
    F = forward_transform(f)
    g1, g2 = gradient(F)
    d1 = inverse_transform(g1).values
    d2 = inverse_transform(g2).values
    return float(np.max(np.hypot(d1, d2)))
