"""Sweeps, LO optimisation and the fidelity-driven filter design search."""

import csv
import logging
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DomainError, PrecisionError, UnreachableTargetError
from .overlaps import LoLeakageWarning
from .scenario import FilterSpec, Scenario
from .wigner import fidelity_closed_form, heralded_negativity

__all__ = [
    "DesignResult",
    "SweepSpec",
    "design_for_fidelity",
    "golden_section_max",
    "optimal_lo",
    "success_probability",
    "sweep_negativity",
    "write_csv",
]

log = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
LO_BOUNDS_NM = (0.2, 20.0)
FILTER_BOUNDS_NM = (0.05, 20.0)
PRESCAN_POINTS = 32
FLAT_TOL = 1e-5


def success_probability(gamma, squeezing, r_s):
    """Heralding probability P * theta**2 with sin(theta / 2) = r_s."""
    if not 0 <= r_s <= 0.5:
        raise DomainError(f"r_s must lie in [0, 0.5], got {r_s}")
    g = np.asarray(getattr(gamma, "values", gamma))
    n = squeezing.padded(g.shape[0]).n_mean[: g.shape[0]]
    theta = 2.0 * np.arcsin(r_s)
    return float(np.dot(np.diagonal(g), n) * theta**2)


def golden_section_max(f, a, b, tol):
    """Maximise a unimodal ``f`` on [a, b] to an interval of width ``tol``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _maximise(f, lo, hi, tol):
    """Geometric pre-scan, then golden section inside the best bracket.

    Returns ``(x_best, f_best, degenerate)``.
    """
    xs = np.geomspace(lo, hi, PRESCAN_POINTS)
    vals = np.array([f(x) for x in xs])
    if vals.max() - vals.min() < FLAT_TOL:
        mid = float(np.sqrt(lo * hi))
        return mid, float(f(mid)), True
    i = int(np.argmax(vals))
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, PRESCAN_POINTS - 1)]
    x, fx = golden_section_max(f, a, b, tol)
    if vals[i] > fx:
        x, fx = xs[i], vals[i]
    return float(x), float(fx), False


@dataclass(frozen=True)
class DesignResult:
    k: float
    optimal_lo_fwhm: float
    achieved_negativity: float
    achieved_fidelity: float
    success_probability: float
    optimal_filter_fwhm: float = float("nan")
    filter_shape: str = "none"
    degenerate: bool = False

    def as_row(self):
        return asdict(self)


def _evaluate(scenario, k, spec, lo_nm, check):
    params = scenario.params(k, spec, lo_nm)
    ng = heralded_negativity(params, check=check)
    fid = fidelity_closed_form(params, scenario.target())
    return ng, fid


def optimal_lo(k, filter_spec, scenario=None, bounds=LO_BOUNDS_NM, metric="negativity", tol=0.01):
    """LO FWHM (nm) maximising negativity (or fidelity) for a given K and filter.

    The objective is sampled on a 32-point geometric pre-scan, refined by
    golden-section search to ``tol`` nm, and the winner is re-evaluated with
    the negativity refinement check.
    """
    scenario = scenario or Scenario()
    target = scenario.target()

    def objective(lo_nm):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LoLeakageWarning)
            params = scenario.params(k, filter_spec, lo_nm)
        if metric == "negativity":
            return heralded_negativity(params, check=False)
        return fidelity_closed_form(params, target)

    if metric not in ("negativity", "fidelity"):
        raise ValueError(f"unknown metric {metric!r}")
    lo_nm, _, degenerate = _maximise(objective, bounds[0], bounds[1], tol)
    ng, fid = _evaluate(scenario, k, filter_spec, lo_nm, check=True)
    return DesignResult(
        k=float(k),
        optimal_lo_fwhm=lo_nm,
        achieved_negativity=ng,
        achieved_fidelity=fid,
        success_probability=scenario.success_probability(k, filter_spec),
        optimal_filter_fwhm=filter_spec.fwhm_nm if filter_spec.shape != "none" else float("nan"),
        filter_shape=filter_spec.shape,
        degenerate=degenerate,
    )


def design_for_fidelity(k, target_f=0.95, scenario=None, shape="rect",
                        bounds=FILTER_BOUNDS_NM, tol=0.005):
    """Widest filter whose fidelity-optimal LO still reaches ``target_f``.

    Bisects on the filter FWHM (in log scale) with a nested LO optimisation
    at each trial width. Fidelity falls as the filter widens for K > 1, so
    the widest passing filter is the one with the highest heralding rate.
    """
    if not 0 < target_f < 1:
        raise DomainError(f"target fidelity must lie in (0, 1), got {target_f}")
    scenario = scenario or Scenario()

    def best(width_nm):
        r = optimal_lo(k, FilterSpec(shape, width_nm), scenario, metric="fidelity")
        log.debug("filter %.4f nm -> F %.5f at LO %.4f nm", width_nm, r.achieved_fidelity, r.optimal_lo_fwhm)
        return r

    lo_w, hi_w = bounds
    r_hi = best(hi_w)
    if r_hi.achieved_fidelity >= target_f:
        return r_hi
    r_lo = best(lo_w)
    if r_lo.achieved_fidelity < target_f:
        raise UnreachableTargetError(
            f"fidelity {r_lo.achieved_fidelity:.4f} < {target_f} even with a {lo_w} nm filter",
            best=r_lo,
        )
    while hi_w - lo_w > tol:
        mid = math.sqrt(lo_w * hi_w)
        r_mid = best(mid)
        if r_mid.achieved_fidelity >= target_f:
            lo_w, r_lo = mid, r_mid
        else:
            hi_w = mid
    return r_lo


@dataclass(frozen=True)
class SweepSpec:
    """A negativity map over (K, LO FWHM) for one filter."""

    k_values: tuple
    lo_fwhm_values: tuple
    filter: FilterSpec = field(default_factory=FilterSpec)
    scenario: Scenario = field(default_factory=Scenario)

    def __post_init__(self):
        if not self.k_values or not self.lo_fwhm_values:
            raise DomainError("sweep needs at least one K and one LO width")
        if min(self.k_values) < 1:
            raise DomainError("Schmidt numbers must be >= 1")
        object.__setattr__(self, "k_values", tuple(float(v) for v in self.k_values))
        object.__setattr__(self, "lo_fwhm_values", tuple(float(v) for v in self.lo_fwhm_values))

    def points(self):
        return [(k, lo) for k in self.k_values for lo in self.lo_fwhm_values]


SWEEP_HEADER = ("K", "lo_fwhm_nm", "negativity", "success_probability", "error")


def _sweep_row(args):
    spec, k, lo_nm = args
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LoLeakageWarning)
            params = spec.scenario.params(k, spec.filter, lo_nm)
        ng = heralded_negativity(params, check=True)
        prob = spec.scenario.success_probability(k, spec.filter)
        return (k, lo_nm, ng, prob, "")
    except (PrecisionError, DomainError) as exc:
        return (k, lo_nm, float("nan"), float("nan"), f"{type(exc).__name__}: {exc}")


def sweep_negativity(spec, workers=1):
    """One row (K, LO nm, N_g, P theta**2, error) per grid point, in SweepSpec.points() order."""
    jobs = [(spec, k, lo) for k, lo in spec.points()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_sweep_row(j) for j in jobs]


def _fmt(value):
    if isinstance(value, (float, np.floating)):
        return f"{value:.12g}"
    return str(value)


def write_csv(path_or_file, header, rows):
    """CSV with a header row and 12 significant digits for floats."""
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    finally:
        if own:
            fh.close()
