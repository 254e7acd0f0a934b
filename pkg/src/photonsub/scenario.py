"""Physical scenario: pump, Schmidt number and squeezing mapped onto the numerical model.

Wavelength-denominated inputs (nm) are converted here; everything below works
in angular frequency. The pump sets the sum-frequency width of a
double-Gaussian JSA and the Schmidt number K sets the difference-frequency
width, which together fix the supermode time scale tau_s.
"""

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .filters import FilterProfile
from .overlaps import gamma_for_filter, lo_coefficients
from .supermodes import (
    MAX_MODES,
    DoubleGaussianJsa,
    build_basis,
    squeezing_from_schmidt,
    truncation_order,
    zeta_from_db,
)
from .units import angular_frequency, angular_to_wavelength_fwhm, make_grid, wavelength_fwhm_to_angular
from .wigner import HeraldedStateParams, TargetState

__all__ = ["FilterSpec", "Scenario", "default_grid"]

NM = 1e-9
SQRT_8LN2 = np.sqrt(8.0 * np.log(2.0))
# floor on the mode count so that narrow or wide LOs are still captured
MIN_MODES = 100
GRID_MARGIN = 8.0


@dataclass(frozen=True)
class FilterSpec:
    """Filter described at the I/O boundary: shape name and FWHM in nm."""

    shape: str = "none"
    fwhm_nm: float = 0.0

    def __post_init__(self):
        if self.shape not in ("none", "rect", "gauss", "delta"):
            raise DomainError(f"unknown filter shape {self.shape!r}")
        if self.shape in ("rect", "gauss") and not self.fwhm_nm > 0:
            raise DomainError(f"{self.shape} filter needs a positive fwhm")

    def label(self):
        return "none" if self.shape in ("none", "delta") else f"{self.shape} {self.fwhm_nm:g} nm"


def default_grid(center, tau_s, n_modes, filter_fwhm=0.0, n_points=4097):
    """Grid reaching 8 widths past the turning point of the highest mode and past the filter."""
    half = (np.sqrt(2 * n_modes + 1) + GRID_MARGIN) / tau_s
    half = max(half, GRID_MARGIN * filter_fwhm / SQRT_8LN2)
    return make_grid(center, half, n_points)


@dataclass(frozen=True)
class Scenario:
    """Degenerate SPDC source plus detection settings; lengths in metres."""

    signal_wavelength: float = 1560 * NM
    pump_wavelength: float = 780 * NM
    pump_fwhm: float = 0.5 * NM
    zeta0: float = float(zeta_from_db(3.0))
    rs2: float = 0.05
    grid_points: int = 4097
    n_modes: int | None = None

    def __post_init__(self):
        if not self.pump_fwhm > 0:
            raise DomainError("pump fwhm must be positive")
        if not self.zeta0 > 0:
            raise DomainError("zeta0 must be positive")
        if not 0 < self.rs2 <= 0.25:
            raise DomainError("rs2 must lie in (0, 0.25]")

    def with_(self, **changes):
        return replace(self, **changes)

    @property
    def center(self):
        """Supermode center omega_p / 2."""
        return 0.5 * angular_frequency(self.pump_wavelength)

    @property
    def sigma_plus(self):
        """Sum-frequency width: rms width of the pump power spectrum."""
        return wavelength_fwhm_to_angular(self.pump_wavelength, self.pump_fwhm) / SQRT_8LN2

    @property
    def r_s(self):
        return float(np.sqrt(self.rs2))

    def to_omega(self, fwhm_nm):
        return wavelength_fwhm_to_angular(self.signal_wavelength, fwhm_nm * NM)

    def to_nm(self, fwhm_omega):
        return angular_to_wavelength_fwhm(self.signal_wavelength, fwhm_omega) / NM

    def jsa(self, k_schmidt):
        return DoubleGaussianJsa.for_schmidt_number(self.sigma_plus, k_schmidt, 2 * self.center)

    def tau_s(self, k_schmidt):
        return self.jsa(k_schmidt).tau_s

    def mode_count(self, k_schmidt):
        if self.n_modes is not None:
            return int(self.n_modes)
        return min(MAX_MODES, max(MIN_MODES, truncation_order(k_schmidt, self.zeta0)))

    def matched_lo_nm(self, k_schmidt):
        """LO FWHM (power spectrum) matching psi_0."""
        return self.to_nm(2 * np.sqrt(np.log(2)) / self.tau_s(k_schmidt))

    def basis(self, k_schmidt):
        return _basis(self, float(k_schmidt))

    def squeezing(self, k_schmidt):
        return squeezing_from_schmidt(k_schmidt, self.zeta0, self.mode_count(k_schmidt))

    def filter_profile(self, spec):
        if spec.shape == "none":
            return FilterProfile.identity()
        if spec.shape == "delta":
            return FilterProfile.delta(self.center)
        w = self.to_omega(spec.fwhm_nm)
        if spec.shape == "rect":
            return FilterProfile.rectangular(self.center, w)
        return FilterProfile.gaussian(self.center, w)

    def gamma(self, k_schmidt, spec):
        flt = self.filter_profile(spec)
        return gamma_for_filter(self.tau_s(k_schmidt), self.mode_count(k_schmidt), flt)

    def lo(self, k_schmidt, lo_fwhm_nm):
        return _lo(self, float(k_schmidt), float(lo_fwhm_nm))

    def params(self, k_schmidt, spec, lo_fwhm_nm):
        return HeraldedStateParams.from_parts(
            self.gamma(k_schmidt, spec), self.lo(k_schmidt, lo_fwhm_nm), self.squeezing(k_schmidt)
        )

    def target(self):
        """Kitten target squeezed like the first supermode."""
        return TargetState.from_zeta(self.zeta0)

    def success_probability(self, k_schmidt, spec):
        from .experiments import success_probability

        return success_probability(self.gamma(k_schmidt, spec), self.squeezing(k_schmidt), self.r_s)


@lru_cache(maxsize=32)
def _basis(scenario, k_schmidt):
    tau = scenario.tau_s(k_schmidt)
    n = scenario.mode_count(k_schmidt)
    grid = default_grid(scenario.center, tau, n, n_points=scenario.grid_points)
    return build_basis(tau, scenario.center, n, grid)


@lru_cache(maxsize=4096)
def _lo(scenario, k_schmidt, lo_fwhm_nm):
    return lo_coefficients(scenario.basis(k_schmidt), scenario.to_omega(lo_fwhm_nm))
