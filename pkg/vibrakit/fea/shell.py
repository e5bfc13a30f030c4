# vibrakit/fea/shell.py
"""
Flat four-node shell: bilinear membrane + discrete-Kirchhoff (DKQ) bending.

The drilling rotation θz has no physical stiffness in a flat shell; it is tied
to the membrane in-plane rotation and to its neighbours by a small penalty
proportional to the element bending stiffness.

Local DOF order per node: u, v, w, θx, θy, θz.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.model.types import Material, ShellElement
from ..errors import GeometryError

DEFAULT_DRILLING_FACTOR = 1e-6

# Warp beyond this fraction of sqrt(area) is rejected
WARP_TOLERANCE = 1e-3

_G = 1.0 / np.sqrt(3.0)
GAUSS_2X2 = ((-_G, -_G), (_G, -_G), (_G, _G), (-_G, _G))

XI = np.array([-1.0, 1.0, 1.0, -1.0])
ETA = np.array([-1.0, -1.0, 1.0, 1.0])

MEMBRANE = np.array([[6 * i + d for d in (0, 1)] for i in range(4)]).ravel()
BENDING = np.array([[6 * i + d for d in (2, 3, 4)] for i in range(4)]).ravel()
DRILLING = np.array([6 * i + 5 for i in range(4)])


@dataclass(frozen=True)
class ShellGeometry:
    frame: np.ndarray  # rows: local x, y, normal
    xy: np.ndarray  # (4, 2) local corner coordinates
    area: float


def plane_stress(E: float, nu: float) -> np.ndarray:
    return E / (1.0 - nu**2) * np.array(
        [[1.0, nu, 0.0], [nu, 1.0, 0.0], [0.0, 0.0, (1.0 - nu) / 2.0]]
    )


def shell_geometry(points: np.ndarray) -> ShellGeometry:
    """Local frame and 2-D corner coordinates; rejects degenerate or warped quads"""
    normal = np.cross(points[2] - points[0], points[3] - points[1])
    twice_area = np.linalg.norm(normal)
    if twice_area <= 0 or not np.isfinite(twice_area):
        raise GeometryError("degenerate shell: zero area")
    normal /= twice_area
    area = 0.5 * float(twice_area)

    center = points.mean(axis=0)
    warp = float(np.abs((points - center) @ normal).max())
    if warp > WARP_TOLERANCE * np.sqrt(area):
        raise GeometryError(f"non-planar shell: warp {warp:.3g} m")

    e1 = points[1] - points[0]
    e1 = e1 - (e1 @ normal) * normal
    norm = np.linalg.norm(e1)
    if norm <= 0:
        raise GeometryError("degenerate shell: coincident corners")
    e1 /= norm
    e2 = np.cross(normal, e1)
    frame = np.vstack([e1, e2, normal])
    xy = (points - center) @ frame[:2].T

    for i in range(4):
        a = xy[(i + 1) % 4] - xy[i]
        b = xy[(i + 2) % 4] - xy[(i + 1) % 4]
        if a[0] * b[1] - a[1] * b[0] <= 0:
            raise GeometryError("degenerate shell: quad is not convex")
    return ShellGeometry(frame=frame, xy=xy, area=area)


def _bilinear(xi: float, eta: float):
    n = 0.25 * (1 + xi * XI) * (1 + eta * ETA)
    dxi = 0.25 * XI * (1 + eta * ETA)
    deta = 0.25 * ETA * (1 + xi * XI)
    return n, dxi, deta


def _jacobian(xy: np.ndarray, xi: float, eta: float):
    _, dxi, deta = _bilinear(xi, eta)
    jac = np.array([[dxi @ xy[:, 0], dxi @ xy[:, 1]], [deta @ xy[:, 0], deta @ xy[:, 1]]])
    det = float(np.linalg.det(jac))
    if det <= 0:
        raise GeometryError("degenerate shell: non-positive Jacobian")
    return np.linalg.inv(jac), det


def membrane_b(xy: np.ndarray, xi: float, eta: float) -> Tuple[np.ndarray, float]:
    """Strain-displacement matrix (3x8) over (u_i, v_i)"""
    inv, det = _jacobian(xy, xi, eta)
    _, dxi, deta = _bilinear(xi, eta)
    dx = inv[0, 0] * dxi + inv[0, 1] * deta
    dy = inv[1, 0] * dxi + inv[1, 1] * deta
    b = np.zeros((3, 8))
    b[0, 0::2] = dx
    b[1, 1::2] = dy
    b[2, 0::2] = dy
    b[2, 1::2] = dx
    return b, det


def _serendipity_derivs(xi: float, eta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Derivatives of the 8-node serendipity functions; mid-sides 5..8 follow corners 1..4"""
    dxi = np.zeros(8)
    deta = np.zeros(8)
    for i in range(4):
        xi_i, eta_i = XI[i], ETA[i]
        dxi[i] = 0.25 * xi_i * (1 + eta * eta_i) * (2 * xi * xi_i + eta * eta_i)
        deta[i] = 0.25 * eta_i * (1 + xi * xi_i) * (xi * xi_i + 2 * eta * eta_i)
    dxi[4], deta[4] = -xi * (1 - eta), -0.5 * (1 - xi**2)
    dxi[5], deta[5] = 0.5 * (1 - eta**2), -eta * (1 + xi)
    dxi[6], deta[6] = -xi * (1 + eta), 0.5 * (1 - xi**2)
    dxi[7], deta[7] = -0.5 * (1 - eta**2), -eta * (1 - xi)
    return dxi, deta


def rotation_interpolation(xy: np.ndarray) -> np.ndarray:
    """Map (w_i, θx_i, θy_i) of the corners to the 16 nodal rotations (βx, βy) of 8 nodes

    Corners: βx = θy, βy = -θx. Mid-sides: tangential rotation from a cubic w
    along the side, normal rotation linear between the corners.
    """
    t = np.zeros((16, 12))
    for i in range(4):
        t[2 * i, 3 * i + 2] = 1.0
        t[2 * i + 1, 3 * i + 1] = -1.0
    for k in range(4):
        i, j = k, (k + 1) % 4
        d = xy[j] - xy[i]
        length = float(np.linalg.norm(d))
        c, s = d / length
        tangent = np.array([c, s])
        normal = np.array([-s, c])
        beta_i = t[2 * i : 2 * i + 2]
        beta_j = t[2 * j : 2 * j + 2]
        w_diff = np.zeros(12)
        w_diff[3 * j] = 1.0
        w_diff[3 * i] = -1.0
        beta_s = -1.5 / length * w_diff - 0.25 * (tangent @ beta_i + tangent @ beta_j)
        beta_n = 0.5 * (normal @ beta_i + normal @ beta_j)
        m = 4 + k
        t[2 * m] = beta_s * c - beta_n * s
        t[2 * m + 1] = beta_s * s + beta_n * c
    return t


def bending_b(xy: np.ndarray, xi: float, eta: float, rot: np.ndarray) -> Tuple[np.ndarray, float]:
    """Curvature-displacement matrix (3x12) over (w_i, θx_i, θy_i)"""
    inv, det = _jacobian(xy, xi, eta)
    dxi, deta = _serendipity_derivs(xi, eta)
    dx = inv[0, 0] * dxi + inv[0, 1] * deta
    dy = inv[1, 0] * dxi + inv[1, 1] * deta
    b_beta = np.zeros((3, 16))
    b_beta[0, 0::2] = dx
    b_beta[1, 1::2] = dy
    b_beta[2, 0::2] = dy
    b_beta[2, 1::2] = dx
    return b_beta @ rot, det


def _drilling(xy: np.ndarray, k_bend: np.ndarray, factor: float) -> np.ndarray:
    diag = np.diag(k_bend)
    rot_diag = np.concatenate([diag[1::3], diag[2::3]])
    kd = factor * float(rot_diag.max())

    k = np.zeros((24, 24))
    k[np.ix_(DRILLING, DRILLING)] = kd * (np.eye(4) - 0.25)

    # Mean θz against the membrane rotation ½(v,x - u,y) at the centroid
    b_m, _ = membrane_b(xy, 0.0, 0.0)
    dx = b_m[0, 0::2]
    dy = b_m[1, 1::2]
    b = np.zeros(24)
    b[DRILLING] = 0.25
    b[MEMBRANE[0::2]] = 0.5 * dy
    b[MEMBRANE[1::2]] = -0.5 * dx
    k += 4.0 * kd * np.outer(b, b)
    return k


def shell_local(
    points: np.ndarray,
    thickness: float,
    material: Material,
    drilling_factor: float = DEFAULT_DRILLING_FACTOR,
):
    """(K_local, M_local, geometry) in the element frame"""
    if thickness <= 0:
        raise GeometryError("shell thickness must be positive")
    geo = shell_geometry(points)
    xy = geo.xy
    c = plane_stress(material.E, material.nu)
    rot = rotation_interpolation(xy)

    k_mem = np.zeros((8, 8))
    k_bend = np.zeros((12, 12))
    m_trans = np.zeros((4, 4))
    d_mem = c * thickness
    d_bend = c * thickness**3 / 12.0
    for xi, eta in GAUSS_2X2:
        b_m, det = membrane_b(xy, xi, eta)
        k_mem += b_m.T @ d_mem @ b_m * det
        b_b, _ = bending_b(xy, xi, eta, rot)
        k_bend += b_b.T @ d_bend @ b_b * det
        n, _, _ = _bilinear(xi, eta)
        m_trans += np.outer(n, n) * det

    k = np.zeros((24, 24))
    k[np.ix_(MEMBRANE, MEMBRANE)] = k_mem
    k[np.ix_(BENDING, BENDING)] = k_bend
    k += _drilling(xy, k_bend, drilling_factor)

    m = np.zeros((24, 24))
    areal = material.rho * thickness
    for d in (0, 1, 2):
        idx = [6 * i + d for i in range(4)]
        m[np.ix_(idx, idx)] = areal * m_trans
    rotary = material.rho * thickness**3 / 12.0 * geo.area / 4.0
    for i in range(4):
        for d in (3, 4, 5):
            m[6 * i + d, 6 * i + d] = rotary
    return k, m, geo


def shell_matrices(
    element: ShellElement,
    material: Material,
    points: np.ndarray,
    drilling_factor: float = DEFAULT_DRILLING_FACTOR,
) -> Tuple[np.ndarray, np.ndarray]:
    """Global-coordinate (K_e, M_e), both 24x24 and exactly symmetric"""
    k, m, geo = shell_local(points, element.thickness, material, drilling_factor)
    t = np.kron(np.eye(8), geo.frame)
    k_e = t.T @ k @ t
    m_e = t.T @ m @ t
    return _symmetric(k_e), _symmetric(m_e)


def _symmetric(a: np.ndarray) -> np.ndarray:
    return np.triu(a) + np.triu(a, 1).T
