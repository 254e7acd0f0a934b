"""Phase-space quantities of the heralded state as seen by the homodyne detector.

Quadratures are dimensionless with vacuum variance 1/2. The heralded Wigner
function is a Gaussian envelope times a quadratic polynomial,

    W_H = env(x, y) / (2 pi sx sy P) * (a + b x**2 + c y**2),

so normalisation and the overlap with the target kitten have closed forms.
Grid integrals (negativity, numeric fidelity) are plain Riemann sums, which
are spectrally accurate for these integrands once the grid reaches the
Gaussian tails.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PrecisionError

__all__ = [
    "HeraldedStateParams",
    "TargetState",
    "WignerGrid",
    "fidelity_closed_form",
    "fidelity_numeric",
    "heralded_negativity",
    "heralded_photon_purity",
    "negativity",
    "phase_space_axes",
    "wigner_heralded",
    "wigner_no_filter",
    "wigner_subtracted_component",
    "wigner_svs",
    "wigner_target",
]

DEFAULT_POINTS = 801
EXTENT_SIGMAS = 6.0
REFINE_TOL = 1e-4


def _quadrature_variances(c, mu):
    c2 = np.asarray(c) ** 2
    sx2 = 0.5 * np.sum(c2 * (1 + mu) / (1 - mu))
    sy2 = 0.5 * np.sum(c2 * (1 - mu) / (1 + mu))
    return float(sx2), float(sy2)


@dataclass(frozen=True, eq=False)
class HeraldedStateParams:
    """Everything W_H depends on: gamma, LO coefficients and squeezing."""

    gamma: np.ndarray
    c: np.ndarray
    mu: np.ndarray
    n_mean: np.ndarray
    sigma_x2: float
    sigma_y2: float
    p_norm: float

    @classmethod
    def from_parts(cls, gamma, c, squeezing):
        """Assemble from a GammaMatrix (or array), LoProjection (or array) and SqueezingSpectrum."""
        g = np.asarray(getattr(gamma, "values", gamma), dtype=float)
        cvec = np.asarray(getattr(c, "c", c), dtype=float)
        n = g.shape[0]
        sq = squeezing.padded(n)
        if sq.n_modes != n or cvec.size != n:
            raise ValueError(
                f"mode count mismatch: gamma {n}, c {cvec.size}, squeezing {sq.n_modes}"
            )
        mu, n_mean = sq.mu, sq.n_mean
        sx2, sy2 = _quadrature_variances(cvec, mu)
        p = float(np.dot(np.diagonal(g), n_mean))
        return cls(g, cvec, mu, n_mean, sx2, sy2, p)

    @property
    def sigma_x(self):
        return np.sqrt(self.sigma_x2)

    @property
    def sigma_y(self):
        return np.sqrt(self.sigma_y2)

    def weighted_sums(self):
        """(S_x, S_y) = sum gamma_kn mu_k mu_n c_k c_n / ((1 -/+ mu_k)(1 -/+ mu_n))."""
        wx = self.mu * self.c / (1 - self.mu)
        wy = self.mu * self.c / (1 + self.mu)
        return float(wx @ self.gamma @ wx), float(wy @ self.gamma @ wy)

    def polynomial(self):
        """Coefficients (a, b, c) of the bracket a + b x**2 + c y**2."""
        sx, sy = self.weighted_sums()
        a = self.p_norm - sx / (2 * self.sigma_x2) - sy / (2 * self.sigma_y2)
        b = sx / (2 * self.sigma_x2**2)
        c = sy / (2 * self.sigma_y2**2)
        return a, b, c


@dataclass(frozen=True)
class TargetState:
    """Single-mode photon-subtracted squeezed vacuum with squeezing ``mu``."""

    mu: float

    def __post_init__(self):
        if not 0 <= self.mu < 1:
            raise DomainError(f"mu must lie in [0, 1), got {self.mu}")

    @classmethod
    def from_zeta(cls, zeta):
        return cls(float(np.tanh(zeta)))

    @classmethod
    def from_s(cls, s):
        if s < 1:
            raise DomainError(f"s must be >= 1, got {s}")
        return cls((s - 1.0) / (s + 1.0))

    @property
    def s(self):
        return (1 + self.mu) / (1 - self.mu)


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Wigner function sampled on a rectangular phase-space grid.

    ``values[i, j]`` is W(x_axis[i], y_axis[j]). ``sigma_x``/``sigma_y`` record
    the widths of the Gaussian envelope the grid was sized for.
    """

    x_axis: np.ndarray
    y_axis: np.ndarray
    values: np.ndarray
    sigma_x: float = np.sqrt(0.5)
    sigma_y: float = np.sqrt(0.5)

    @property
    def cell_area(self):
        return float((self.x_axis[1] - self.x_axis[0]) * (self.y_axis[1] - self.y_axis[0]))

    def integral(self):
        return float(self.values.sum() * self.cell_area)

    def same_grid(self, other):
        return (
            self.values.shape == other.values.shape
            and np.array_equal(self.x_axis, other.x_axis)
            and np.array_equal(self.y_axis, other.y_axis)
        )


def phase_space_axes(sigma_x, sigma_y, n_points=DEFAULT_POINTS, n_sigma=EXTENT_SIGMAS):
    """Symmetric axes over +/- n_sigma * max(sigma_x, sigma_y, 1)."""
    half = n_sigma * max(sigma_x, sigma_y, 1.0)
    axis = np.linspace(-half, half, n_points)
    return axis, axis


def _axes(axes, sigma_x, sigma_y):
    return phase_space_axes(sigma_x, sigma_y) if axes is None else axes


def _envelope(x, y, sx2, sy2):
    return np.exp(-(x[:, None] ** 2) / (2 * sx2) - y[None, :] ** 2 / (2 * sy2)) / (
        2 * np.pi * np.sqrt(sx2 * sy2)
    )


def wigner_heralded(params, axes=None):
    """Measured Wigner function of the filtered, heralded multimode state."""
    if not params.p_norm > 0:
        raise DomainError("nothing to herald: P = sum gamma_nn n_n is zero")
    x, y = _axes(axes, params.sigma_x, params.sigma_y)
    a, b, c = params.polynomial()
    poly = a + b * x[:, None] ** 2 + c * y[None, :] ** 2
    w = _envelope(x, y, params.sigma_x2, params.sigma_y2) * poly / params.p_norm
    return WignerGrid(x, y, w, params.sigma_x, params.sigma_y)


def wigner_subtracted_component(k, squeezing_mu, sigma_x2, sigma_y2, axes=None):
    """Photon subtracted from supermode k, seen through an LO with variances sigma_x2, sigma_y2."""
    mu = float(np.asarray(squeezing_mu)[k])
    x, y = _axes(axes, np.sqrt(sigma_x2), np.sqrt(sigma_y2))
    s = (1 + mu) / (1 - mu)
    poly = (
        1.0
        + s / (2 * sigma_x2) * (x[:, None] ** 2 / sigma_x2 - 1)
        + 1 / (s * 2 * sigma_y2) * (y[None, :] ** 2 / sigma_y2 - 1)
    )
    w = _envelope(x, y, sigma_x2, sigma_y2) * poly
    return WignerGrid(x, y, w, np.sqrt(sigma_x2), np.sqrt(sigma_y2))


def wigner_svs(sigma_x2, sigma_y2, axes=None):
    """Gaussian (squeezed-vacuum) contribution with the given quadrature variances."""
    x, y = _axes(axes, np.sqrt(sigma_x2), np.sqrt(sigma_y2))
    return WignerGrid(x, y, _envelope(x, y, sigma_x2, sigma_y2), np.sqrt(sigma_x2), np.sqrt(sigma_y2))


def wigner_no_filter(squeezing, c, axes=None):
    """No heralding filter: mixture over the supermode a photon was taken from.

    sum_k p_k [c_k**2 W_k + (1 - c_k**2) W_SVS], p_k = n_k / sum_l n_l.
    """
    cvec = np.asarray(getattr(c, "c", c), dtype=float)
    sq = squeezing.padded(cvec.size)
    total = float(np.sum(sq.n_mean))
    if total <= 0:
        raise DomainError("no squeezing: nothing to subtract")
    p = sq.n_mean / total
    sx2, sy2 = _quadrature_variances(cvec, sq.mu)
    x, y = _axes(axes, np.sqrt(sx2), np.sqrt(sy2))
    svs = wigner_svs(sx2, sy2, (x, y)).values
    w = np.zeros_like(svs)
    for k in np.nonzero(p > 0)[0]:
        wk = wigner_subtracted_component(k, sq.mu, sx2, sy2, (x, y)).values
        w += p[k] * (cvec[k] ** 2 * wk + (1 - cvec[k] ** 2) * svs)
    return WignerGrid(x, y, w, np.sqrt(sx2), np.sqrt(sy2))


def wigner_target(target, axes=None):
    """Ideal kitten: exp(-(x**2/s + s y**2)) / pi * (2 x**2 / s + 2 s y**2 - 1)."""
    s = target.s
    sx, sy = np.sqrt(s / 2), np.sqrt(1 / (2 * s))
    x, y = _axes(axes, sx, sy)
    xx, yy = x[:, None] ** 2, y[None, :] ** 2
    w = np.exp(-(xx / s + s * yy)) / np.pi * (2 * xx / s + 2 * s * yy - 1)
    return WignerGrid(x, y, w, sx, sy)


def negativity(w, tol=1e-6):
    """Volume of the negative part, (integral |W| - 1) / 2.

    Raises :class:`PrecisionError` when the grid does not reach six
    envelope widths (or six vacuum units) in every direction.
    """
    need = EXTENT_SIGMAS * max(w.sigma_x, w.sigma_y, 1.0) * (1 - 1e-12)
    for axis in (w.x_axis, w.y_axis):
        if -axis[0] < need or axis[-1] < need:
            raise PrecisionError(
                f"phase-space grid reaches {min(-axis[0], axis[-1]):.3g}, needs {need:.3g}"
            )
    ng = 0.5 * (np.abs(w.values).sum() * w.cell_area - 1.0)
    if ng < 0:
        if ng < -tol:
            raise PrecisionError(f"integral of |W| below 1 by {-2 * ng:.3g}")
        ng = 0.0
    return float(ng)


def heralded_negativity(params, n_points=DEFAULT_POINTS, check=True):
    """N_g of W_H, optionally verified against a grid with twice the resolution."""
    ng = negativity(wigner_heralded(params, phase_space_axes(params.sigma_x, params.sigma_y, n_points)))
    if check:
        fine = phase_space_axes(params.sigma_x, params.sigma_y, 2 * n_points - 1)
        ng_fine = negativity(wigner_heralded(params, fine))
        if abs(ng_fine - ng) > REFINE_TOL:
            raise PrecisionError(f"negativity not converged: {ng:.6g} vs {ng_fine:.6g}")
        ng = ng_fine
    return ng


def fidelity_closed_form(params, target):
    """2 pi int W_H W_T in closed form (Gaussian moments of the product polynomial)."""
    s = target.s
    a, b, c = params.polynomial()
    u = 1 / params.sigma_x2 + 2 / s
    v = 1 / params.sigma_y2 + 2 * s
    bracket = (
        -a
        + (2 * a / s - b) / u
        + (2 * a * s - c) / v
        + (2 * b / s) * 3 / u**2
        + 2 * c * s * 3 / v**2
        + (2 * c / s + 2 * b * s) / (u * v)
    )
    return float(2 * bracket / (params.p_norm * params.sigma_x * params.sigma_y * np.sqrt(u * v)))


def fidelity_numeric(w1, w2):
    """2 pi sum W1 W2 dA on a shared grid."""
    if not w1.same_grid(w2):
        raise ValueError("Wigner grids differ")
    return float(2 * np.pi * np.sum(w1.values * w2.values) * w1.cell_area)


def heralded_photon_purity(gamma, zeta):
    """Purity of the weak-squeezing heralded single photon.

    In the single-photon regime the heralded state is proportional to
    M_kn = gamma_kn zeta_k zeta_n in the one-photon supermode basis.
    """
    g = np.asarray(getattr(gamma, "values", gamma), dtype=float)
    z = np.asarray(zeta, dtype=float)
    if z.size < g.shape[0]:
        z = np.concatenate([z, np.zeros(g.shape[0] - z.size)])
    z = z[: g.shape[0]]
    m = g * np.outer(z, z)
    tr = np.trace(m)
    if not tr > 0:
        raise DomainError("heralding probability is zero (trace of M vanishes)")
    rho = m / tr
    return float(np.sum(rho * rho.T))
