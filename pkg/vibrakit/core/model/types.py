# vibrakit/core/model/types.py
"""
Domain types of the structural model.

All quantities are SI (m, kg, N, Pa). The deck parser converts from the
declared deck units once; nothing downstream sees mm or grams.
"""

import dataclasses
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

import numpy as np

from ...errors import InputError

G0 = 9.80665

DOF_NAMES = ("TX", "TY", "TZ", "RX", "RY", "RZ")

BEAM_TAGS = ("bolt", "rail", "generic")

Vector3 = Tuple[float, float, float]


def parse_dof_mask(text: str) -> Tuple[int, ...]:
    """'1236' -> (0, 1, 2, 5); digits 1-6 map to TX..RZ"""
    text = text.strip()
    if not text:
        raise InputError("empty DOF mask")
    dofs = set()
    for ch in text:
        if ch not in "123456":
            raise InputError(f"invalid DOF digit '{ch}' in mask '{text}'")
        if int(ch) - 1 in dofs:
            raise InputError(f"repeated DOF digit '{ch}' in mask '{text}'")
        dofs.add(int(ch) - 1)
    return tuple(sorted(dofs))


def format_dof_mask(dofs: Iterable[int]) -> str:
    return "".join(str(d + 1) for d in sorted(dofs))


@dataclass(frozen=True)
class Units:
    """Deck unit declaration"""

    length: str = "mm"
    mass: str = "kg"
    force: str = "N"

    LENGTH_SCALES = {"mm": 1e-3, "m": 1.0}
    MASS_SCALES = {"g": 1e-3, "kg": 1.0}

    def __post_init__(self):
        if self.length not in self.LENGTH_SCALES:
            raise InputError(f"unsupported length unit '{self.length}' (use mm or m)")
        if self.mass not in self.MASS_SCALES:
            raise InputError(f"unsupported mass unit '{self.mass}' (use g or kg)")
        if self.force != "N":
            raise InputError(f"unsupported force unit '{self.force}' (use N)")

    @property
    def length_scale(self) -> float:
        return self.LENGTH_SCALES[self.length]

    @property
    def mass_scale(self) -> float:
        return self.MASS_SCALES[self.mass]


@dataclass(frozen=True)
class Material:
    id: int
    E: float
    nu: float
    rho: float
    F_ty: float
    F_tu: float

    @property
    def G(self) -> float:
        return self.E / (2.0 * (1.0 + self.nu))


@dataclass(frozen=True)
class Node:
    id: int
    position: Vector3

    @property
    def xyz(self) -> np.ndarray:
        return np.asarray(self.position, dtype=float)


@dataclass(frozen=True)
class BeamSection:
    A: float
    Iy: float
    Iz: float
    J: float

    @classmethod
    def circular(cls, diameter: float) -> "BeamSection":
        """Solid round section, the default for bolt connectors"""
        if diameter <= 0:
            raise InputError(f"bolt diameter must be positive, got {diameter}")
        r = diameter / 2.0
        area = np.pi * r**2
        inertia = np.pi * r**4 / 4.0
        return cls(A=area, Iy=inertia, Iz=inertia, J=2.0 * inertia)


@dataclass(frozen=True)
class BeamElement:
    id: int
    material: int
    n1: int
    n2: int
    section: BeamSection
    orientation: Vector3
    tag: str = "generic"

    @property
    def nodes(self) -> Tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def is_bolt(self) -> bool:
        return self.tag == "bolt"


@dataclass(frozen=True)
class ShellElement:
    id: int
    material: int
    nodes: Tuple[int, int, int, int]
    thickness: float


@dataclass(frozen=True)
class PointMass:
    id: int
    node: int
    mass: float
    inertia: Vector3 = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class RigidLink:
    id: int
    master: int
    dofs: Tuple[int, ...]
    slaves: Tuple[int, ...]


@dataclass(frozen=True)
class SpcEntry:
    node: int
    dofs: Tuple[int, ...]


@dataclass(frozen=True)
class Preload:
    node: int
    force: Vector3


@dataclass(frozen=True)
class ConstraintSet:
    """Named boundary condition: fixed DOFs, releases of a base set, preload forces"""

    name: str
    spcs: Tuple[SpcEntry, ...] = ()
    releases: Tuple[SpcEntry, ...] = ()
    preloads: Tuple[Preload, ...] = ()
    base: Optional[str] = None


@dataclass(frozen=True)
class LoadCase:
    name: str
    accel_g: Vector3
    preload_set: Optional[str] = None

    @property
    def acceleration(self) -> np.ndarray:
        """Acceleration in m/s²"""
        return np.asarray(self.accel_g, dtype=float) * G0

    def scaled(self, factor: float) -> "LoadCase":
        gx, gy, gz = self.accel_g
        return dataclasses.replace(self, accel_g=(gx * factor, gy * factor, gz * factor))


@dataclass(frozen=True)
class BoltGroupDef:
    label: str
    members: Tuple[int, ...]


@dataclass(frozen=True)
class ResolvedConstraint:
    """Constraint set after base-set inheritance is applied"""

    name: str
    fixed: FrozenSet[Tuple[int, int]]
    preloads: Tuple[Preload, ...]


@dataclass(frozen=True)
class PanelEquivalent:
    """Simplified panel: uniform skin whose dummy density carries the real mass"""

    real_mass: float
    component_mass: float
    area: float
    thickness: float
    density: float

    @property
    def total_mass(self) -> float:
        return self.real_mass + self.component_mass

    @property
    def reconstructed_mass(self) -> float:
        return self.density * self.area * self.thickness

    def mass_error(self) -> float:
        """Relative error of density × area × thickness against the total mass"""
        return abs(self.reconstructed_mass - self.total_mass) / self.total_mass


def quad_area(points: np.ndarray) -> float:
    """Area of a planar quad from its diagonals"""
    d1 = points[2] - points[0]
    d2 = points[3] - points[1]
    return 0.5 * float(np.linalg.norm(np.cross(d1, d2)))


@dataclass(frozen=True)
class Model:
    """Complete analyzable structure; immutable once built"""

    units: Units = field(default_factory=Units)
    materials: Tuple[Material, ...] = ()
    nodes: Tuple[Node, ...] = ()
    beams: Tuple[BeamElement, ...] = ()
    shells: Tuple[ShellElement, ...] = ()
    masses: Tuple[PointMass, ...] = ()
    rigid_links: Tuple[RigidLink, ...] = ()
    constraints: Tuple[ConstraintSet, ...] = ()
    load_cases: Tuple[LoadCase, ...] = ()
    groups: Tuple[BoltGroupDef, ...] = ()

    # Lookups

    @cached_property
    def node_map(self) -> Dict[int, Node]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def material_map(self) -> Dict[int, Material]:
        return {m.id: m for m in self.materials}

    @cached_property
    def beam_map(self) -> Dict[int, BeamElement]:
        return {b.id: b for b in self.beams}

    @cached_property
    def shell_map(self) -> Dict[int, ShellElement]:
        return {s.id: s for s in self.shells}

    @cached_property
    def node_index(self) -> Dict[int, int]:
        """Node id -> position in ascending id order (the global DOF order)"""
        return {nid: i for i, nid in enumerate(sorted(self.node_map))}

    def node(self, node_id: int) -> Node:
        try:
            return self.node_map[node_id]
        except KeyError:
            raise InputError(f"unknown node {node_id}") from None

    def material(self, material_id: int) -> Material:
        try:
            return self.material_map[material_id]
        except KeyError:
            raise InputError(f"unknown material {material_id}") from None

    def beam(self, element_id: int) -> BeamElement:
        try:
            return self.beam_map[element_id]
        except KeyError:
            raise InputError(f"unknown beam element {element_id}") from None

    def shell(self, element_id: int) -> ShellElement:
        try:
            return self.shell_map[element_id]
        except KeyError:
            raise InputError(f"unknown shell element {element_id}") from None

    def constraint(self, name: str) -> ConstraintSet:
        for cs in self.constraints:
            if cs.name == name:
                return cs
        known = ", ".join(cs.name for cs in self.constraints) or "none"
        raise InputError(f"unknown constraint set '{name}' (defined: {known})")

    def load_case(self, name: str) -> LoadCase:
        for case in self.load_cases:
            if case.name == name:
                return case
        known = ", ".join(c.name for c in self.load_cases) or "none"
        raise InputError(f"unknown load case '{name}' (defined: {known})")

    def group(self, label: str) -> BoltGroupDef:
        for group in self.groups:
            if group.label == label:
                return group
        raise InputError(f"unknown bolt group '{label}'")

    def positions(self, node_ids: Iterable[int]) -> np.ndarray:
        return np.array([self.node(n).position for n in node_ids], dtype=float)

    # Constraint resolution

    def resolve_constraint(self, constraint: "ConstraintSet | str") -> ResolvedConstraint:
        """Apply base-set inheritance: base SPCs minus releases plus own SPCs"""
        cs = self.constraint(constraint) if isinstance(constraint, str) else constraint
        chain = []
        seen = set()
        current: Optional[ConstraintSet] = cs
        while current is not None:
            if current.name in seen:
                raise InputError(f"constraint set '{cs.name}' has a cyclic base chain")
            seen.add(current.name)
            chain.append(current)
            current = self.constraint(current.base) if current.base else None

        fixed: set = set()
        preloads: list = []
        for level in reversed(chain):
            for rel in level.releases:
                fixed.difference_update((rel.node, d) for d in rel.dofs)
            for spc in level.spcs:
                fixed.update((spc.node, d) for d in spc.dofs)
            preloads.extend(level.preloads)
        return ResolvedConstraint(name=cs.name, fixed=frozenset(fixed), preloads=tuple(preloads))

    # Mass properties

    def beam_length(self, beam: BeamElement) -> float:
        return float(np.linalg.norm(self.node(beam.n2).xyz - self.node(beam.n1).xyz))

    def shell_area(self, shell: ShellElement) -> float:
        return quad_area(self.positions(shell.nodes))

    def structural_mass(self) -> float:
        """Mass carried by elements, excluding point masses"""
        total = 0.0
        for beam in self.beams:
            total += self.material(beam.material).rho * beam.section.A * self.beam_length(beam)
        for shell in self.shells:
            total += self.material(shell.material).rho * shell.thickness * self.shell_area(shell)
        return total

    def total_mass(self) -> float:
        return self.structural_mass() + sum(pm.mass for pm in self.masses)

    # Derived models

    def without_elements(self, element_ids: Iterable[int]) -> "Model":
        """Copy with the given beams/shells removed; groups lose those members"""
        drop = set(element_ids)
        known = set(self.beam_map) | set(self.shell_map)
        unknown = sorted(drop - known)
        if unknown:
            raise InputError(f"unknown element id(s): {', '.join(map(str, unknown))}")
        groups = []
        for group in self.groups:
            members = tuple(m for m in group.members if m not in drop)
            if members:
                groups.append(BoltGroupDef(group.label, members))
        return dataclasses.replace(
            self,
            beams=tuple(b for b in self.beams if b.id not in drop),
            shells=tuple(s for s in self.shells if s.id not in drop),
            groups=tuple(groups),
        )

    def with_shell_thickness(self, thickness: float, density: Optional[float] = None) -> "Model":
        """Copy where every shell has the given thickness (and shell materials the density)"""
        if thickness <= 0:
            raise InputError(f"shell thickness must be positive, got {thickness}")
        shells = tuple(dataclasses.replace(s, thickness=thickness) for s in self.shells)
        materials = self.materials
        if density is not None:
            shell_mats = {s.material for s in self.shells}
            materials = tuple(
                dataclasses.replace(m, rho=density) if m.id in shell_mats else m
                for m in self.materials
            )
        return dataclasses.replace(self, shells=shells, materials=materials)

    def with_constraint(self, constraint: ConstraintSet) -> "Model":
        """Copy with a constraint set added or replaced by name"""
        others = tuple(cs for cs in self.constraints if cs.name != constraint.name)
        return dataclasses.replace(self, constraints=others + (constraint,))

