# vibrakit/fea/beam.py
"""
3-D Euler-Bernoulli beam: 12x12 stiffness and consistent mass.

Local DOF order per node: u, v, w, θx, θy, θz. Local x runs n1 -> n2; the
orientation vector fixes local y (z = x × v, y = z × x).
"""

from typing import Tuple

import numpy as np

from ..core.model.types import BeamElement, Material, Node
from ..errors import GeometryError


def beam_frame(p1: np.ndarray, p2: np.ndarray, orientation) -> Tuple[np.ndarray, float]:
    """Rows of the returned 3x3 matrix are the local x, y, z axes in global coordinates"""
    axis = p2 - p1
    length = float(np.linalg.norm(axis))
    if length <= 0:
        raise GeometryError("zero-length beam element")
    ex = axis / length
    v = np.asarray(orientation, dtype=float)
    ez = np.cross(ex, v)
    nz = np.linalg.norm(ez)
    if nz < 1e-8 * max(np.linalg.norm(v), 1e-300):
        raise GeometryError("beam orientation vector is parallel to the element axis")
    ez /= nz
    ey = np.cross(ez, ex)
    return np.vstack([ex, ey, ez]), length


def transformation(frame: np.ndarray, blocks: int) -> np.ndarray:
    """Block-diagonal rotation taking global DOFs to local DOFs"""
    return np.kron(np.eye(blocks), frame)


def local_stiffness(
    E: float, G: float, A: float, Iy: float, Iz: float, J: float, L: float
) -> np.ndarray:
    k = np.zeros((12, 12))

    ea = E * A / L
    k[0, 0] = k[6, 6] = ea
    k[0, 6] = k[6, 0] = -ea

    gj = G * J / L
    k[3, 3] = k[9, 9] = gj
    k[3, 9] = k[9, 3] = -gj

    # Bending in the local xy plane: v, θz
    a = E * Iz / L**3
    idx = (1, 5, 7, 11)
    kb = a * np.array(
        [
            [12.0, 6 * L, -12.0, 6 * L],
            [6 * L, 4 * L**2, -6 * L, 2 * L**2],
            [-12.0, -6 * L, 12.0, -6 * L],
            [6 * L, 2 * L**2, -6 * L, 4 * L**2],
        ]
    )
    k[np.ix_(idx, idx)] = kb

    # Bending in the local xz plane: w, θy (w = -θy·x, hence the flipped couplings)
    a = E * Iy / L**3
    idx = (2, 4, 8, 10)
    kb = a * np.array(
        [
            [12.0, -6 * L, -12.0, -6 * L],
            [-6 * L, 4 * L**2, 6 * L, 2 * L**2],
            [-12.0, 6 * L, 12.0, 6 * L],
            [-6 * L, 2 * L**2, 6 * L, 4 * L**2],
        ]
    )
    k[np.ix_(idx, idx)] = kb
    return k


def local_mass(rho: float, A: float, Iy: float, Iz: float, L: float) -> np.ndarray:
    m = np.zeros((12, 12))
    mass = rho * A * L

    axial = mass / 6.0 * np.array([[2.0, 1.0], [1.0, 2.0]])
    m[np.ix_((0, 6), (0, 6))] = axial

    torsion = rho * (Iy + Iz) * L / 6.0 * np.array([[2.0, 1.0], [1.0, 2.0]])
    m[np.ix_((3, 9), (3, 9))] = torsion

    c = mass / 420.0
    m[np.ix_((1, 5, 7, 11), (1, 5, 7, 11))] = c * np.array(
        [
            [156.0, 22 * L, 54.0, -13 * L],
            [22 * L, 4 * L**2, 13 * L, -3 * L**2],
            [54.0, 13 * L, 156.0, -22 * L],
            [-13 * L, -3 * L**2, -22 * L, 4 * L**2],
        ]
    )
    m[np.ix_((2, 4, 8, 10), (2, 4, 8, 10))] = c * np.array(
        [
            [156.0, -22 * L, 54.0, 13 * L],
            [-22 * L, 4 * L**2, -13 * L, -3 * L**2],
            [54.0, -13 * L, 156.0, 22 * L],
            [13 * L, -3 * L**2, 22 * L, 4 * L**2],
        ]
    )
    return m


def beam_local(element: BeamElement, material: Material, n1: Node, n2: Node):
    """(K_local, M_local, T) with T mapping global element DOFs to local ones"""
    frame, length = beam_frame(n1.xyz, n2.xyz, element.orientation)
    s = element.section
    k = local_stiffness(material.E, material.G, s.A, s.Iy, s.Iz, s.J, length)
    m = local_mass(material.rho, s.A, s.Iy, s.Iz, length)
    return k, m, transformation(frame, 4)


def beam_matrices(
    element: BeamElement, material: Material, n1: Node, n2: Node
) -> Tuple[np.ndarray, np.ndarray]:
    """Global-coordinate (K_e, M_e), both 12x12 and exactly symmetric"""
    k, m, t = beam_local(element, material, n1, n2)
    k_e = t.T @ k @ t
    m_e = t.T @ m @ t
    return _symmetric(k_e), _symmetric(m_e)


def _symmetric(a: np.ndarray) -> np.ndarray:
    upper = np.triu(a)
    return upper + np.triu(a, 1).T
