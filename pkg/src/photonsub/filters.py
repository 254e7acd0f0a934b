"""Heralding-path filter transmission profiles."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedFilterError

__all__ = ["FilterKind", "FilterProfile", "reflection", "transmission"]

FOUR_LN2 = 4.0 * np.log(2.0)


class FilterKind(enum.Enum):
    IDENTITY = "none"
    RECTANGULAR = "rect"
    GAUSSIAN = "gauss"
    DELTA = "delta"


@dataclass(frozen=True)
class FilterProfile:
    """Real amplitude transmission t(omega) of the heralding filter.

    Rectangular filters have unit peak transmission. ``fwhm`` is ignored for
    the identity and delta kinds.
    """

    kind: FilterKind
    center: float = 0.0
    fwhm: float = 0.0

    def __post_init__(self):
        if self.kind in (FilterKind.RECTANGULAR, FilterKind.GAUSSIAN) and not self.fwhm > 0:
            raise DomainError(f"{self.kind.value} filter needs a positive fwhm, got {self.fwhm}")

    @classmethod
    def identity(cls):
        return cls(FilterKind.IDENTITY)

    @classmethod
    def rectangular(cls, center, fwhm):
        return cls(FilterKind.RECTANGULAR, float(center), float(fwhm))

    @classmethod
    def gaussian(cls, center, fwhm):
        return cls(FilterKind.GAUSSIAN, float(center), float(fwhm))

    @classmethod
    def delta(cls, center):
        return cls(FilterKind.DELTA, float(center))

    @property
    def has_stopband(self):
        """True when t vanishes exactly on part of the spectrum."""
        return self.kind is FilterKind.RECTANGULAR


def transmission_at_offset(flt, offset):
    """t evaluated at ``offset = omega - flt.center``."""
    offset = np.asarray(offset, dtype=float)
    if flt.kind is FilterKind.IDENTITY:
        return np.ones_like(offset)
    if flt.kind is FilterKind.RECTANGULAR:
        return (np.abs(offset) <= 0.5 * flt.fwhm).astype(float)
    if flt.kind is FilterKind.GAUSSIAN:
        return np.exp(-FOUR_LN2 * offset**2 / flt.fwhm**2)
    raise UnsupportedFilterError(
        "the delta-limit filter cannot be sampled; use the analytic purity path"
    )


def transmission(flt, omega):
    """Amplitude transmission t(omega), in [0, 1]."""
    return transmission_at_offset(flt, np.asarray(omega, dtype=float) - flt.center)


def reflection(flt, omega):
    """Amplitude reflection r(omega) = sqrt(1 - t**2)."""
    t = transmission(flt, omega)
    return np.sqrt(np.clip(1.0 - t * t, 0.0, 1.0))
