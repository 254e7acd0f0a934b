"""Heralded photon subtraction from frequency-multimode squeezed light.

Computes the homodyne-measured Wigner function, negativity and kitten
fidelity of states heralded through a spectral filter, and searches filter
and local-oscillator widths for the best state quality.
"""

from .errors import DomainError, PrecisionError, UnreachableTargetError, UnsupportedFilterError
from .experiments import DesignResult, SweepSpec, design_for_fidelity, optimal_lo, success_probability, sweep_negativity
from .filters import FilterKind, FilterProfile, reflection, transmission
from .overlaps import (
    GammaMatrix,
    LoProjection,
    gamma_gaussian_analytic,
    gamma_quadrature,
    gamma_rectangular_analytic,
    lo_coefficients,
)
from .scenario import FilterSpec, Scenario
from .supermodes import (
    DoubleGaussianJsa,
    SqueezingSpectrum,
    SupermodeBasis,
    build_basis,
    hermite_gauss,
    jsa_schmidt_oracle,
    schmidt_number,
    squeezing_from_schmidt,
)
from .units import SpectralGrid, make_grid, wavelength_fwhm_to_angular
from .wigner import (
    HeraldedStateParams,
    TargetState,
    WignerGrid,
    fidelity_closed_form,
    fidelity_numeric,
    heralded_photon_purity,
    negativity,
    wigner_heralded,
    wigner_no_filter,
    wigner_target,
)


__all__ = [
    "DesignResult",
    "DomainError",
    "DoubleGaussianJsa",
    "FilterKind",
    "FilterProfile",
    "FilterSpec",
    "GammaMatrix",
    "HeraldedStateParams",
    "LoProjection",
    "PrecisionError",
    "Scenario",
    "SpectralGrid",
    "SqueezingSpectrum",
    "SupermodeBasis",
    "SweepSpec",
    "TargetState",
    "UnreachableTargetError",
    "UnsupportedFilterError",
    "WignerGrid",
    "build_basis",
    "design_for_fidelity",
    "fidelity_closed_form",
    "fidelity_numeric",
    "gamma_gaussian_analytic",
    "gamma_quadrature",
    "gamma_rectangular_analytic",
    "heralded_photon_purity",
    "hermite_gauss",
    "jsa_schmidt_oracle",
    "lo_coefficients",
    "make_grid",
    "negativity",
    "optimal_lo",
    "reflection",
    "schmidt_number",
    "squeezing_from_schmidt",
    "success_probability",
    "sweep_negativity",
    "transmission",
    "wavelength_fwhm_to_angular",
    "wigner_heralded",
    "wigner_no_filter",
    "wigner_target",
]

__version__ = "0.1.0"
