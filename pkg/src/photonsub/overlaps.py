"""Filter overlap matrices gamma_{k,n} and local-oscillator mode coefficients.

gamma_{k,n} = int |t(w)|**2 psi_k(w) psi_n(w) dw governs the heralded mixture.
Closed forms exist for Gaussian and rectangular filters centred on the
supermodes; the grid quadrature path is kept as an independent check.
"""

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .errors import DomainError, UnsupportedFilterError
from .filters import FOUR_LN2, FilterKind, transmission_at_offset
from .supermodes import hermite_functions

__all__ = [
    "GammaMatrix",
    "LoProjection",
    "LoLeakageWarning",
    "gamma_for_filter",
    "gamma_gaussian_analytic",
    "gamma_identity",
    "gamma_quadrature",
    "gamma_rectangular_analytic",
    "lo_amplitude",
    "lo_coefficients",
]

LO_RESIDUAL_WARN = 0.01


class LoLeakageWarning(UserWarning):
    """The local oscillator has significant weight outside the modelled modes."""


@dataclass(frozen=True, eq=False)
class GammaMatrix:
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("gamma must be a square matrix")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n_modes(self):
        return self.values.shape[0]

    @property
    def diagonal(self):
        return np.diagonal(self.values)


def _symmetrize(g):
    return 0.5 * (g + g.T)


def gamma_identity(n_modes):
    """gamma for t = 1: the identity, since the supermodes are orthonormal."""
    return GammaMatrix(np.eye(n_modes))


def _simpson_weights(x):
    """Composite Simpson weights on an odd-length uniform grid."""
    h = x[1] - x[0]
    w = np.full(x.size, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * h / 3.0


def gamma_quadrature(basis, flt, grid=None):
    """gamma by numerical quadrature.

    Smooth filters use the grid sum on the basis samples. For a rectangular
    filter the integrand is discontinuous at the band edges, so the band is
    re-sampled on its own odd-length grid and integrated with Simpson's rule.
    """
    grid = basis.grid if grid is None else grid
    if grid is not basis.grid and grid != basis.grid:
        raise ValueError("quadrature grid must be the grid the basis was sampled on")
    if flt.kind is FilterKind.DELTA:
        raise UnsupportedFilterError("delta filter has no sampled gamma")
    if flt.kind is FilterKind.RECTANGULAR:
        half = 0.5 * flt.fwhm
        lo = max(flt.center - half, grid.samples[0])
        hi = min(flt.center + half, grid.samples[-1])
        n_band = max(4097, 32 * basis.n_modes + 1)
        w = np.linspace(lo - basis.center, hi - basis.center, n_band)
        psi = np.sqrt(basis.tau_s) * hermite_functions(basis.n_modes, basis.tau_s * w)
        g = (psi * _simpson_weights(w)) @ psi.T
        return GammaMatrix(_symmetrize(g))
    t = transmission_at_offset(flt, grid.offsets + (grid.center - flt.center))
    s = basis.samples
    g = (s * (t * t)) @ s.T * grid.step
    return GammaMatrix(_symmetrize(g))


@lru_cache(maxsize=64)
def _gamma_gaussian_cached(tau_s, n_modes, fwhm):
    nu = FOUR_LN2 * 2.0 / fwhm**2 + tau_s**2  # |t|**2 doubles the exponent of t
    dps = 30 + n_modes // 2
    g = np.zeros((n_modes, n_modes))
    with mpmath.workdps(dps):
        ratio = mpmath.mpf(tau_s) ** 2 / mpmath.mpf(nu)
        base = ratio - 1
        pref = mpmath.sqrt(ratio)
        powers = [base**p for p in range(n_modes)]
        fact = [math.factorial(i) for i in range(2 * n_modes)]
        for k in range(n_modes):
            for n in range(k, n_modes, 2):
                j = (k + n) // 2
                total = 0
                for m in range(min(k, n) + 1):
                    coeff = (
                        2**m * fact[m] * math.comb(k, m) * math.comb(n, m)
                        * fact[k + n - 2 * m] // fact[j - m]
                    )
                    total += coeff * powers[j - m]
                norm = mpmath.sqrt(mpmath.mpf(2 ** (k + n) * fact[k] * fact[n]))
                g[k, n] = g[n, k] = float(pref * total / norm)
    g.setflags(write=False)
    return g


def gamma_gaussian_analytic(tau_s, n_modes, fwhm):
    """Closed-form gamma for a Gaussian filter centred on the supermodes.

    Evaluates the finite Hermite sum in extended precision: its alternating
    terms cancel catastrophically in double precision beyond ~20 modes.
    Entries with k + n odd are exactly zero.
    """
    if not fwhm > 0:
        raise DomainError(f"filter fwhm must be positive, got {fwhm}")
    return GammaMatrix(_gamma_gaussian_cached(float(tau_s), int(n_modes), float(fwhm)))


@lru_cache(maxsize=64)
def _gamma_rect_cached(tau_s, n_modes, fwhm):
    x_half = 0.5 * tau_s * fwhm
    # beyond this radius every h_k (k < n_modes) is below 1e-60
    x_max = math.sqrt(2 * n_modes + 1) + 12.0
    x_half = min(x_half, x_max)
    n_panels = max(2, int(math.ceil(2 * x_half / 0.5)))
    nodes, weights = np.polynomial.legendre.leggauss(32)
    edges = np.linspace(-x_half, x_half, n_panels + 1)
    a, b = edges[:-1, None], edges[1:, None]
    x = (0.5 * (b - a) * nodes + 0.5 * (a + b)).ravel()
    wx = (0.5 * (b - a) * weights).ravel()
    h = hermite_functions(n_modes, x)
    g = (h * wx) @ h.T
    parity = (np.add.outer(np.arange(n_modes), np.arange(n_modes)) % 2).astype(bool)
    g[parity] = 0.0
    g = _symmetrize(g)
    g.setflags(write=False)
    return g


def gamma_rectangular_analytic(tau_s, n_modes, fwhm):
    """gamma for a unit-transmission rectangular band of width ``fwhm``.

    gamma_{k,n} = int_{-X}^{X} h_k(x) h_n(x) dx with X = tau_s * fwhm / 2,
    integrated by composite Gauss-Legendre on panels narrower than the
    shortest Hermite oscillation. Entries with k + n odd are exactly zero.
    """
    if not fwhm > 0:
        raise DomainError(f"filter fwhm must be positive, got {fwhm}")
    return GammaMatrix(_gamma_rect_cached(float(tau_s), int(n_modes), float(fwhm)))


def gamma_for_filter(tau_s, n_modes, flt, basis_center=None):
    """Production gamma: the closed form matching the filter kind."""
    if basis_center is not None and flt.kind not in (FilterKind.IDENTITY,) and flt.center != basis_center:
        raise DomainError("closed-form gamma requires the filter centred on the supermodes")
    if flt.kind is FilterKind.IDENTITY:
        return gamma_identity(n_modes)
    if flt.kind is FilterKind.GAUSSIAN:
        return gamma_gaussian_analytic(tau_s, n_modes, flt.fwhm)
    if flt.kind is FilterKind.RECTANGULAR:
        return gamma_rectangular_analytic(tau_s, n_modes, flt.fwhm)
    raise UnsupportedFilterError("delta filter has no gamma matrix; see heralded_photon_purity")


@dataclass(frozen=True, eq=False)
class LoProjection:
    """Supermode coefficients c_k of a Gaussian local oscillator.

    ``c`` is renormalised to unit norm; ``residual`` is the weight that fell
    outside the modelled modes before renormalisation.
    """

    fwhm_lo: float
    c: np.ndarray
    residual: float

    @property
    def leaks(self):
        return self.residual > LO_RESIDUAL_WARN


def lo_amplitude(offset, fwhm):
    """Normalised Gaussian LO amplitude alpha(w) whose power spectrum |alpha|**2 has FWHM ``fwhm``."""
    b = 0.5 * FOUR_LN2 / fwhm**2
    return (2.0 * b / np.pi) ** 0.25 * np.exp(-b * np.asarray(offset) ** 2)


def lo_coefficients(basis, lo_fwhm, grid=None):
    """Project a centred Gaussian LO (power-spectrum FWHM ``lo_fwhm``) on the basis.

    The LO matching psi_0 has ``lo_fwhm = 2 sqrt(ln 2) / tau_s``.
    """
    grid = basis.grid if grid is None else grid
    if not lo_fwhm > 0:
        raise DomainError(f"LO fwhm must be positive, got {lo_fwhm}")
    alpha = lo_amplitude(grid.offsets + (grid.center - basis.center), lo_fwhm)
    c = basis.samples @ alpha * grid.step
    c[1::2] = 0.0  # centred Gaussian LO: odd modes vanish by parity
    norm2 = float(np.dot(c, c))
    residual = 1.0 - norm2
    if residual > LO_RESIDUAL_WARN:
        warnings.warn(
            f"LO weight outside the {basis.n_modes} modelled modes is {residual:.3g}",
            LoLeakageWarning,
            stacklevel=2,
        )
    c = c / np.sqrt(norm2)
    c.setflags(write=False)
    return LoProjection(float(lo_fwhm), c, residual)
