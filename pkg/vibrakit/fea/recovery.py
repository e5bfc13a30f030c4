# vibrakit/fea/recovery.py
"""Element force and stress recovery from a static displacement field."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.model.types import BeamElement, ShellElement
from ..errors import InputError
from .beam import beam_local
from .shell import (
    BENDING,
    MEMBRANE,
    bending_b,
    membrane_b,
    plane_stress,
    rotation_interpolation,
    shell_geometry,
)
from .solvers import DisplacementField


@dataclass(frozen=True)
class EndForces:
    """Internal section forces at one beam end, element local frame"""

    axial: float
    torque: float
    shear1: float  # local y
    shear2: float  # local z
    moment1: float  # about local z (bending in the xy plane)
    moment2: float  # about local y (bending in the xz plane)

    @property
    def shear_srss(self) -> float:
        return math.hypot(self.shear1, self.shear2)


@dataclass(frozen=True)
class BeamEndForces:
    element_id: int
    end_a: EndForces
    end_b: EndForces
    nodal: Tuple[float, ...]  # 12 local nodal forces acting on the element, body load removed

    @property
    def governing_end(self) -> EndForces:
        """End with the larger shear SRSS; end A on ties"""
        return self.end_b if self.end_b.shear_srss > self.end_a.shear_srss else self.end_a


@dataclass(frozen=True)
class SurfaceStress:
    sx: float
    sy: float
    txy: float

    @property
    def von_mises(self) -> float:
        value = self.sx**2 + self.sy**2 - self.sx * self.sy + 3.0 * self.txy**2
        return math.sqrt(max(value, 0.0))


@dataclass(frozen=True)
class ShellStress:
    element_id: int
    top: SurfaceStress
    bottom: SurfaceStress

    @property
    def von_mises(self) -> float:
        return max(self.top.von_mises, self.bottom.von_mises)


def _element_dofs(field: DisplacementField, node_ids) -> np.ndarray:
    index = field.model.node_index
    return np.array([6 * index[n] + d for n in node_ids for d in range(6)])


def _body_acceleration(field: DisplacementField, count: int) -> np.ndarray:
    a = np.zeros(6 * count)
    for i in range(count):
        a[6 * i : 6 * i + 3] = field.acceleration
    return a


def recover_beam_end_forces(field: DisplacementField, element: BeamElement) -> BeamEndForces:
    """Local end forces K_local·u_local minus the element's own consistent body load"""
    if field.model.beam_map.get(element.id) != element:
        raise InputError(f"beam element {element.id} is not part of the solved model")
    model = field.model
    material = model.material(element.material)
    k, m, t = beam_local(element, material, model.node(element.n1), model.node(element.n2))
    dofs = _element_dofs(field, element.nodes)
    u_local = t @ field.u[dofs]
    a_local = t @ _body_acceleration(field, 2)
    f = k @ u_local - m @ a_local

    # Internal force at end A opposes the nodal force there; end B carries it directly
    a_end = -f[0:6]
    b_end = f[6:12]

    def section(v: np.ndarray) -> EndForces:
        return EndForces(
            axial=float(v[0]),
            torque=float(v[3]),
            shear1=float(v[1]),
            shear2=float(v[2]),
            moment1=float(v[5]),
            moment2=float(v[4]),
        )

    return BeamEndForces(
        element_id=element.id,
        end_a=section(a_end),
        end_b=section(b_end),
        nodal=tuple(float(x) for x in f),
    )


def beam_fiber_stress(forces: BeamEndForces, element: BeamElement) -> Tuple[float, str]:
    """Extreme-fiber |N/A| + |M|·c/I per end, c from the equivalent round section"""
    s = element.section
    c_y = 2.0 * math.sqrt(s.Iy / s.A)
    c_z = 2.0 * math.sqrt(s.Iz / s.A)
    best = (-1.0, "end-A")
    for label, end in (("end-A", forces.end_a), ("end-B", forces.end_b)):
        sigma = abs(end.axial) / s.A + abs(end.moment1) * c_z / s.Iz + abs(end.moment2) * c_y / s.Iy
        if sigma > best[0]:
            best = (sigma, label)
    return best


def recover_shell_stress(field: DisplacementField, element: ShellElement) -> ShellStress:
    """Centroid plane stress at the top (+t/2 along the normal) and bottom fibers"""
    if field.model.shell_map.get(element.id) != element:
        raise InputError(f"shell element {element.id} is not part of the solved model")
    model = field.model
    material = model.material(element.material)
    points = model.positions(element.nodes)
    geo = shell_geometry(points)
    t = np.kron(np.eye(8), geo.frame)
    u_local = t @ field.u[_element_dofs(field, element.nodes)]

    c = plane_stress(material.E, material.nu)
    b_m, _ = membrane_b(geo.xy, 0.0, 0.0)
    b_b, _ = bending_b(geo.xy, 0.0, 0.0, rotation_interpolation(geo.xy))
    membrane = c @ (b_m @ u_local[MEMBRANE])
    bending = 0.5 * element.thickness * (c @ (b_b @ u_local[BENDING]))
    top = membrane + bending
    bottom = membrane - bending
    return ShellStress(
        element_id=element.id,
        top=SurfaceStress(*map(float, top)),
        bottom=SurfaceStress(*map(float, bottom)),
    )
