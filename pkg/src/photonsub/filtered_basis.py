"""Filter-adapted orthonormal modes: parallel (in-band) and perpendicular (stop-band).

These objects are diagnostics of the mode picture behind gamma; the heralded
state itself is computed from gamma alone. All inner products use the
discrete measure of the basis grid, so orthonormality is exact on the grid.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .filters import FilterKind, transmission_at_offset

__all__ = [
    "FilteredBasis",
    "build_filtered_basis",
    "build_parallel",
    "build_perp",
    "change_of_basis",
    "modified_gram_schmidt",
    "t_r_matrices",
]

DROP_TOL = 1e-10


def modified_gram_schmidt(vectors, step, against=None, drop_tol=DROP_TOL):
    """Orthonormalise the rows of ``vectors`` under <u, v> = sum(u * v) * step.

    Each candidate is projected out of ``against`` and of the accepted set
    twice (one re-orthogonalisation pass). Candidates whose residual norm,
    relative to their original norm, falls below ``drop_tol`` are dropped.
    """
    basis = [] if against is None else list(against)
    n_fixed = len(basis)
    for v in np.asarray(vectors, dtype=float):
        norm0 = np.sqrt(np.dot(v, v) * step)
        if norm0 == 0.0:
            continue
        w = v.copy()
        for _ in range(2):
            for e in basis:
                w -= np.dot(e, w) * step * e
        norm = np.sqrt(np.dot(w, w) * step)
        if norm / norm0 < drop_tol:
            continue
        basis.append(w / norm)
    out = np.array(basis[n_fixed:])
    return out.reshape(len(basis) - n_fixed, np.asarray(vectors).shape[-1])


def _transmission_on(basis, flt):
    grid = basis.grid
    return transmission_at_offset(flt, grid.offsets + (grid.center - flt.center))


def build_parallel(basis, flt, m):
    """Orthonormal modes spanning {t * psi_k : k < m}.

    The first mode is t * psi_0 normalised; the rest follow by modified
    Gram-Schmidt. For the identity filter the supermodes are returned as-is.
    """
    if m > basis.n_modes:
        raise ValueError(f"m={m} exceeds the {basis.n_modes} available supermodes")
    if flt.kind is FilterKind.IDENTITY:
        return basis.samples[:m].copy()
    t = _transmission_on(basis, flt)
    if not np.any(t > 0):
        raise DomainError("filter transmission vanishes on the whole grid")
    return modified_gram_schmidt(basis.samples[:m] * t, basis.grid.step)


def build_perp(basis, flt, parallel, m_perp):
    """Orthonormal modes supported where t == 0, completing ``parallel``.

    Only filters with an exact stop-band produce any; for smooth filters the
    parallel modes are already complete and an empty set is returned.
    """
    n_grid = basis.grid.n_points
    if not flt.has_stopband or m_perp == 0:
        return np.empty((0, n_grid))
    stop = (_transmission_on(basis, flt) == 0.0).astype(float)
    return modified_gram_schmidt(basis.samples[:m_perp] * stop, basis.grid.step, against=parallel)


def change_of_basis(basis, parallel, perp, grid=None):
    """p_kn = <psi_k, par_n>, q_kn = <psi_k, perp_n> on the grid."""
    step = basis.grid.step if grid is None else grid.step
    p = basis.samples @ parallel.T * step
    q = basis.samples @ perp.T * step
    return p, q


def t_r_matrices(parallel, flt, grid):
    """T_lk = <par_k, t par_l> and R_lk = <par_k, r par_l>."""
    t = transmission_at_offset(flt, grid.offsets + (grid.center - flt.center))
    r = np.sqrt(np.clip(1.0 - t * t, 0.0, 1.0))
    tm = (parallel * t) @ parallel.T * grid.step
    rm = (parallel * r) @ parallel.T * grid.step
    return 0.5 * (tm + tm.T), 0.5 * (rm + rm.T)


@dataclass(frozen=True, eq=False)
class FilteredBasis:
    parallel: np.ndarray
    perp: np.ndarray
    p: np.ndarray
    q: np.ndarray
    t_matrix: np.ndarray
    r_matrix: np.ndarray

    def reconstruct(self, k):
        """sum_n p_kn par_n + q_kn perp_n."""
        return self.p[k] @ self.parallel + self.q[k] @ self.perp


def build_filtered_basis(basis, flt, m=None, m_perp=None):
    m = basis.n_modes if m is None else m
    m_perp = m if m_perp is None else m_perp
    par = build_parallel(basis, flt, m)
    perp = build_perp(basis, flt, par, m_perp)
    p, q = change_of_basis(basis, par, perp)
    tm, rm = t_r_matrices(par, flt, basis.grid)
    return FilteredBasis(par, perp, p, q, tm, rm)
