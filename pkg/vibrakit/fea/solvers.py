# vibrakit/fea/solvers.py
"""Linear static and generalized symmetric eigen solves on an AssembledSystem."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as la

from ..core.model.types import DOF_NAMES, LoadCase, Model
from ..errors import ModalSolverError, SingularStiffnessError
from ..utils.logging import get_logger
from .assembly import AssembledSystem

logger = get_logger('fea.solvers')

# Pivot ratio below which a Cholesky factor is treated as singular
SINGULAR_PIVOT = 1e-13


@dataclass
class DisplacementField:
    """Static solution on all DOFs plus what recovery needs to subtract body loads"""

    model: Model
    case: LoadCase
    u: np.ndarray  # full-length, 6 per node in ascending node id order
    u_free: np.ndarray
    reactions: np.ndarray  # one entry per fixed independent DOF
    applied: np.ndarray  # full-length applied load
    residual: float

    @property
    def acceleration(self) -> np.ndarray:
        return self.case.acceleration

    def node_displacement(self, node_id: int) -> np.ndarray:
        base = 6 * self.model.node_index[node_id]
        return self.u[base : base + 6]

    def reaction_sum(self, system: AssembledSystem) -> np.ndarray:
        """Sum of reaction forces per translational axis"""
        totals = np.zeros(3)
        for value, (_, dof) in zip(self.reactions, system.dof_map.fixed_columns):
            if dof < 3:
                totals[dof] += value
        return totals

    def applied_sum(self) -> np.ndarray:
        return np.array([self.applied[axis::6].sum() for axis in range(3)])


@dataclass
class ModalSolution:
    frequencies: np.ndarray  # Hz, ascending
    eigenvalues: np.ndarray  # ω², rad²/s²
    shapes: np.ndarray  # (n_free, n_modes), mass-normalized
    path: str


def _zero_energy_count(k: np.ndarray) -> int:
    # numerical rank at n·eps·max|λ|
    return int(k.shape[0] - np.linalg.matrix_rank(k, hermitian=True))


def _factor(k: np.ndarray):
    try:
        factor = la.cho_factor(k, lower=False, check_finite=True)
    except la.LinAlgError:
        raise SingularStiffnessError(_zero_energy_count(k)) from None
    pivots = np.diag(factor[0]) ** 2
    if pivots.min() <= SINGULAR_PIVOT * pivots.max():
        raise SingularStiffnessError(_zero_energy_count(k))
    return factor


def solve_static(system: AssembledSystem, case: LoadCase) -> DisplacementField:
    """Solve K u = f for one load case; f = M·a + preloads"""
    f_full = system.full_load(case)
    f = system.T_free.T @ f_full
    factor = _factor(system.K)
    u_free = la.cho_solve(factor, f)

    norm_f = float(np.linalg.norm(f))
    residual = float(np.linalg.norm(system.K @ u_free - f)) / norm_f if norm_f > 0 else 0.0
    if residual > 1e-10:
        logger.warning(f"Static residual {residual:.3e} for case '{case.name}' exceeds 1e-10")

    u = system.expand(u_free)
    reactions = system.T_fixed.T @ (system.K_full @ u - f_full)
    logger.debug(f"Static solve '{case.name}': {system.n_free} DOFs, residual {residual:.2e}")
    return DisplacementField(
        model=system.model,
        case=case,
        u=np.asarray(u).ravel(),
        u_free=u_free,
        reactions=np.asarray(reactions).ravel(),
        applied=f_full,
        residual=residual,
    )


def _is_positive_definite(a: np.ndarray) -> bool:
    try:
        factor = la.cholesky(a, lower=False)
    except la.LinAlgError:
        return False
    pivots = np.diag(factor) ** 2
    return bool(pivots.min() > SINGULAR_PIVOT * pivots.max())


def _describe_massless(system: AssembledSystem) -> str:
    """Free DOFs with neither mass nor stiffness on their diagonal"""
    k_diag = np.abs(np.diag(system.K))
    m_diag = np.abs(np.diag(system.M))
    k_tol = 1e-12 * max(k_diag.max(), 1e-300)
    m_tol = 1e-12 * max(m_diag.max(), 1e-300)
    bad = [
        f"node {nid} {DOF_NAMES[dof]}"
        for eq, (nid, dof) in enumerate(system.dof_map.free_dofs())
        if k_diag[eq] <= k_tol and m_diag[eq] <= m_tol
    ]
    if bad:
        shown = ", ".join(bad[:10]) + (" ..." if len(bad) > 10 else "")
        return f"isolated massless DOF(s) without stiffness: {shown}"
    return "mass and stiffness matrices share a null space (massless mechanism)"


def solve_modes(system: AssembledSystem, n_modes: Optional[int] = None) -> ModalSolution:
    """Lowest n_modes of K φ = ω² M φ, mass-normalized; all modes when n_modes is None"""
    k, m = system.K, system.M
    n = system.n_free
    count = n if n_modes is None else int(n_modes)
    if count < 1 or count > n:
        raise ModalSolverError(f"requested {count} modes but the system has {n} free DOFs")

    if _is_positive_definite(m):
        path = "direct"
        _, vectors = la.eigh(k, m, subset_by_index=[0, count - 1])
    else:
        # Massless DOFs: invert the problem on a stiffness that is made positive
        shift = 0.0
        k_shifted = k
        if not _is_positive_definite(k):
            scale = float(np.abs(np.diag(k)).max()) / max(float(np.abs(np.diag(m)).max()), 1e-300)
            shift = 1e-6 * scale
            k_shifted = k + shift * m
            if not _is_positive_definite(k_shifted):
                raise ModalSolverError(_describe_massless(system))
        path = "inverted" if shift == 0.0 else "inverted-shifted"
        mu, vectors_all = la.eigh(m, k_shifted)
        order = np.argsort(-mu, kind="stable")
        mu = mu[order]
        usable = int((mu > 1e-14 * max(mu[0], 1e-300)).sum())
        if count > usable:
            raise ModalSolverError(
                f"requested {count} modes but only {usable} DOFs carry mass; "
                + _describe_massless(system)
            )
        vectors = vectors_all[:, order[:count]]
        logger.debug(f"Inverted eigen path, shift {shift:.3e}")

    shapes = np.array(vectors, dtype=float)
    modal_mass = np.einsum("ij,ik,kj->j", shapes, m, shapes)
    if np.any(modal_mass <= 0):
        raise ModalSolverError("mode with non-positive modal mass")
    shapes /= np.sqrt(modal_mass)

    # Deterministic sign: largest-magnitude component positive
    for j in range(shapes.shape[1]):
        i = int(np.argmax(np.abs(shapes[:, j])))
        if shapes[i, j] < 0:
            shapes[:, j] *= -1.0

    rayleigh = np.einsum("ij,ik,kj->j", shapes, k, shapes)
    order = np.argsort(rayleigh, kind="stable")
    rayleigh = rayleigh[order]
    shapes = shapes[:, order]
    eigenvalues = rayleigh
    frequencies = np.sqrt(np.where(rayleigh > 0, rayleigh, 0.0)) / (2.0 * np.pi)
    logger.debug(
        f"Eigen solve ({path}): {n} DOFs, {count} modes, f1 = {frequencies[0]:.6g} Hz"
    )
    return ModalSolution(frequencies=frequencies, eigenvalues=eigenvalues, shapes=shapes, path=path)
