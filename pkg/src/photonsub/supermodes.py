"""Hermite-Gauss supermodes, squeezing spectra and the double-Gaussian JSA.

The supermodes of a Gaussian-pumped SPDC source are Hermite functions of
``tau_s * (omega - omega_p / 2)``. The squeezing parameters follow the
geometric Schmidt spectrum of a double-Gaussian joint spectral amplitude,
``zeta_k = zeta_0 * q**k`` with ``q**2 = (K - 1) / (K + 1)``.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import integrate

from .errors import DomainError, PrecisionError
from .units import SpectralGrid

__all__ = [
    "DoubleGaussianJsa",
    "SqueezingSpectrum",
    "SupermodeBasis",
    "build_basis",
    "geometric_ratio",
    "hermite_functions",
    "hermite_gauss",
    "jsa_schmidt_oracle",
    "schmidt_number",
    "squeezing_from_schmidt",
    "truncation_order",
    "zeta_from_db",
]

MAX_MODES = 200
TRUNCATED_MASS_TOL = 1e-10
SAMPLING_TOL = 1e-8


def hermite_functions(n, x):
    """Orthonormal Hermite functions ``h_0 .. h_{n-1}`` evaluated at ``x``.

    Returns an array of shape ``(n,) + x.shape``. The normalisation lives
    inside the three-term recurrence so no factorial is ever formed.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((n,) + x.shape)
    if n == 0:
        return out
    out[0] = np.pi**-0.25 * np.exp(-0.5 * x * x)
    if n > 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for k in range(1, n - 1):
        out[k + 1] = np.sqrt(2.0 / (k + 1)) * x * out[k] - np.sqrt(k / (k + 1)) * out[k - 1]
    return out


def hermite_gauss(k, tau_s, omega, center):
    """L2-normalised supermode envelope psi_k(omega) with time scale ``tau_s``."""
    if k < 0:
        raise DomainError(f"mode order must be >= 0, got {k}")
    x = tau_s * (np.asarray(omega, dtype=float) - center)
    return np.sqrt(tau_s) * hermite_functions(k + 1, x)[k]


def _tail_mass(order, x0):
    """Mass of h_order**2 outside [-x0, x0]."""
    def density(x):
        return hermite_functions(order + 1, x)[order] ** 2

    # the integrand decays like exp(-x**2); 40 units past x0 is far beyond double precision
    value, _ = integrate.quad(density, x0, x0 + 40.0, limit=400, epsabs=1e-16, epsrel=1e-10)
    return 2.0 * value


@dataclass(frozen=True, eq=False)
class SupermodeBasis:
    """Real Hermite-Gauss supermodes sampled on a spectral grid.

    ``samples[k, i]`` holds psi_k at ``grid.samples[i]``.
    """

    tau_s: float
    center: float
    n_modes: int
    grid: SpectralGrid
    samples: np.ndarray

    def gram(self):
        return self.samples @ self.samples.T * self.grid.step


def build_basis(tau_s, center, n_modes, grid):
    """Sample ``n_modes`` supermodes on ``grid``.

    Raises :class:`PrecisionError` when the highest mode leaks more than
    ``TRUNCATED_MASS_TOL`` of its norm outside the grid, or when the grid is
    too coarse to keep the top modes orthonormal.
    """
    if n_modes < 1:
        raise DomainError(f"n_modes must be >= 1, got {n_modes}")
    if tau_s <= 0:
        raise DomainError(f"tau_s must be positive, got {tau_s}")
    lo = tau_s * (grid.samples[0] - center)
    hi = tau_s * (grid.samples[-1] - center)
    x_edge = min(-lo, hi)
    if x_edge <= 0:
        raise PrecisionError("grid does not contain the supermode center")
    mass = _tail_mass(n_modes - 1, x_edge)
    if mass > TRUNCATED_MASS_TOL:
        raise PrecisionError(
            f"grid too narrow for mode {n_modes - 1}: truncated mass {mass:.3e}"
        )
    x = tau_s * (grid.offsets + (grid.center - center))
    samples = np.sqrt(tau_s) * hermite_functions(n_modes, x)
    # undersampling shows first in the most oscillatory modes
    top = samples[max(0, n_modes - 3):]
    gram_err = np.abs(top @ top.T * grid.step - np.eye(len(top))).max()
    if gram_err > SAMPLING_TOL:
        raise PrecisionError(
            f"grid too coarse for mode {n_modes - 1}: Gram error {gram_err:.3e}"
        )
    samples.setflags(write=False)
    return SupermodeBasis(float(tau_s), float(center), int(n_modes), grid, samples)


def zeta_from_db(noise_reduction_db):
    """Squeezing parameter giving ``noise_reduction_db`` dB below shot noise.

    Solves ``exp(-2 zeta) = 10**(-dB / 10)``.
    """
    return noise_reduction_db * np.log(10.0) / 20.0


def schmidt_number(zeta):
    """K = (sum zeta**2)**2 / sum zeta**4."""
    z2 = np.asarray(zeta, dtype=float) ** 2
    s4 = np.sum(z2 * z2)
    if s4 == 0.0:
        raise DomainError("Schmidt number undefined for an all-zero squeezing vector")
    return float(np.sum(z2) ** 2 / s4)


def geometric_ratio(k_schmidt):
    """|q| of the geometric spectrum with Schmidt number ``k_schmidt``."""
    if k_schmidt < 1:
        raise DomainError(f"Schmidt number must be >= 1, got {k_schmidt}")
    return float(np.sqrt((k_schmidt - 1.0) / (k_schmidt + 1.0)))


def truncation_order(k_schmidt, zeta0, tol=1e-6, cap=MAX_MODES):
    """Smallest N capturing a ``1 - tol`` fraction of the mean photon number."""
    q = geometric_ratio(k_schmidt)
    if q == 0.0:
        return 1
    idx = np.arange(4 * cap)
    n = np.sinh(zeta0 * q**idx) ** 2
    frac = np.cumsum(n) / n.sum()
    hits = np.nonzero(frac >= 1.0 - tol)[0]
    return int(min(hits[0] + 1, cap))


@dataclass(frozen=True, eq=False)
class SqueezingSpectrum:
    """Per-supermode squeezing parameters and the stored Schmidt number."""

    zeta: np.ndarray
    schmidt_k: float

    def __post_init__(self):
        z = np.asarray(self.zeta, dtype=float)
        if np.any(z < 0):
            raise DomainError("squeezing parameters must be non-negative")
        if np.any(np.diff(z) > 0):
            raise DomainError("squeezing parameters must be non-increasing in k")
        z.setflags(write=False)
        object.__setattr__(self, "zeta", z)

    @property
    def n_modes(self):
        return self.zeta.size

    @cached_property
    def mu(self):
        return np.tanh(self.zeta)

    @cached_property
    def n_mean(self):
        return np.sinh(self.zeta) ** 2

    def padded(self, n_modes):
        """Same spectrum extended with unsqueezed (vacuum) modes up to ``n_modes``."""
        if n_modes <= self.n_modes:
            return self
        z = np.concatenate([self.zeta, np.zeros(n_modes - self.n_modes)])
        return SqueezingSpectrum(z, self.schmidt_k)


def squeezing_from_schmidt(k_schmidt, zeta0, n_modes):
    """Geometric squeezing spectrum ``zeta_k = zeta0 * q**k``.

    ``q**2 = (K - 1)/(K + 1)`` reproduces K exactly in the infinite-mode limit.
    """
    if zeta0 <= 0:
        raise DomainError(f"zeta0 must be positive, got {zeta0}")
    q = geometric_ratio(k_schmidt)
    zeta = zeta0 * q ** np.arange(n_modes, dtype=float)
    return SqueezingSpectrum(zeta, float(k_schmidt))


@dataclass(frozen=True)
class DoubleGaussianJsa:
    """f(w, w') = exp(-(w + w' - wp)**2 / (4 s+**2)) * exp(-(w - w')**2 / (4 s-**2)).

    ``sigma_plus`` and ``sigma_minus`` are the standard deviations of |f| along
    the rotated sum/difference axes (w +/- w')/sqrt(2). Its Schmidt modes are
    Hermite functions with ``tau_s = 1/sqrt(s+ s-)`` and coefficients
    proportional to ``q**k``, ``q = (s+ - s-)/(s+ + s-)``.
    """

    sigma_plus: float
    sigma_minus: float
    center: float

    def __post_init__(self):
        if not (self.sigma_plus > 0 and self.sigma_minus > 0):
            raise DomainError("JSA widths must be positive")

    @classmethod
    def for_schmidt_number(cls, sigma_plus, k_schmidt, center):
        """JSA with the pump-set ``sigma_plus`` and ``sigma_minus >= sigma_plus`` giving K."""
        q = geometric_ratio(k_schmidt)
        return cls(sigma_plus, sigma_plus * (1.0 + q) / (1.0 - q), center)

    @property
    def tau_s(self):
        return 1.0 / np.sqrt(self.sigma_plus * self.sigma_minus)

    @property
    def q(self):
        return (self.sigma_plus - self.sigma_minus) / (self.sigma_plus + self.sigma_minus)

    @property
    def schmidt_number(self):
        q2 = self.q**2
        return (1.0 + q2) / (1.0 - q2)

    def amplitude(self, omega, omega_prime):
        s = np.asarray(omega) + np.asarray(omega_prime) - self.center
        d = np.asarray(omega) - np.asarray(omega_prime)
        return np.exp(-(s**2) / (4 * self.sigma_plus**2) - d**2 / (4 * self.sigma_minus**2))


def jsa_schmidt_oracle(jsa, grid):
    """Schmidt decomposition of ``jsa`` discretised on ``grid`` x ``grid``.

    Returns ``(singular_values, modes)``: singular values normalised to unit
    sum of squares, and left singular vectors as rows, L2-normalised on the
    grid and sign-fixed so each mode is positive at (or just right of) the
    center.
    """
    half_center = jsa.center / 2.0
    off = grid.offsets + (grid.center - half_center)
    s = off[:, None] + off[None, :]
    d = off[:, None] - off[None, :]
    f = np.exp(-(s**2) / (4 * jsa.sigma_plus**2) - d**2 / (4 * jsa.sigma_minus**2))
    u, sv, _ = np.linalg.svd(f, hermitian=False)
    sv = sv / np.sqrt(np.sum(sv**2))
    modes = u.T / np.sqrt(grid.step)
    # fix the sign convention: even modes positive at center, odd modes positive slope
    mid = np.argmin(np.abs(off))
    for row in modes:
        ref = row[mid] if abs(row[mid]) > 1e-3 * np.max(np.abs(row)) else row[mid + 1] - row[mid - 1]
        if ref < 0:
            row *= -1.0
    return sv, modes
