"""Spectral grids and wavelength/angular-frequency conversions.

All mode functions live in angular frequency (rad/s). Wavelengths only appear
at the I/O boundary, as a carrier wavelength plus a FWHM in metres.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .errors import DomainError

__all__ = [
    "SPEED_OF_LIGHT",
    "BandwidthSpec",
    "SpectralGrid",
    "angular_to_wavelength_fwhm",
    "angular_frequency",
    "make_grid",
    "wavelength_fwhm_to_angular",
]


def angular_frequency(wavelength):
    """Carrier angular frequency 2*pi*c/lambda (rad/s) of a vacuum wavelength (m)."""
    if wavelength <= 0:
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")
    return 2.0 * np.pi * SPEED_OF_LIGHT / wavelength


def wavelength_fwhm_to_angular(carrier, fwhm):
    """Convert a wavelength FWHM at ``carrier`` into an angular-frequency FWHM.

    Uses the narrowband relation ``dw = 2*pi*c*dlambda/lambda**2``.

    >>> round(wavelength_fwhm_to_angular(1560e-9, 5e-9) / (2 * np.pi) / 1e9)
    616
    """
    if carrier <= 0:
        raise DomainError(f"carrier wavelength must be positive, got {carrier!r}")
    if fwhm < 0:
        raise DomainError(f"fwhm must be non-negative, got {fwhm!r}")
    return 2.0 * np.pi * SPEED_OF_LIGHT * fwhm / carrier**2


def angular_to_wavelength_fwhm(carrier, fwhm_omega):
    """Inverse of :func:`wavelength_fwhm_to_angular`."""
    if carrier <= 0:
        raise DomainError(f"carrier wavelength must be positive, got {carrier!r}")
    if fwhm_omega < 0:
        raise DomainError(f"fwhm must be non-negative, got {fwhm_omega!r}")
    return fwhm_omega * carrier**2 / (2.0 * np.pi * SPEED_OF_LIGHT)


@dataclass(frozen=True)
class BandwidthSpec:
    """A bandwidth given in wavelength units at a carrier wavelength."""

    carrier_wavelength: float
    fwhm_wavelength: float

    def __post_init__(self):
        if self.carrier_wavelength <= 0 or self.fwhm_wavelength <= 0:
            raise DomainError("carrier and fwhm must both be strictly positive")

    @property
    def fwhm_angular_frequency(self):
        return wavelength_fwhm_to_angular(self.carrier_wavelength, self.fwhm_wavelength)


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform, odd-length sampling of angular frequency around ``center``.

    Offsets from the center are kept separately from the absolute samples:
    mode functions are evaluated on ``offsets`` so that parity is exact and
    no precision is lost subtracting a ~1e15 rad/s carrier.
    """

    center: float
    half_span: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 3 or self.n_points % 2 == 0:
            raise ValueError(f"n_points must be odd and >= 3, got {self.n_points}")
        if not self.half_span > 0:
            raise ValueError(f"half_span must be positive, got {self.half_span}")

    @property
    def step(self):
        return 2.0 * self.half_span / (self.n_points - 1)

    @cached_property
    def offsets(self):
        m = (self.n_points - 1) // 2
        return np.arange(-m, m + 1) * self.step

    @cached_property
    def samples(self):
        return self.center + self.offsets

    def __len__(self):
        return self.n_points


def make_grid(center, half_span, n_points):
    """Build a :class:`SpectralGrid`; ``n_points`` must be odd."""
    return SpectralGrid(float(center), float(half_span), int(n_points))
