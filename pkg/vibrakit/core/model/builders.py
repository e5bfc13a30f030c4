# vibrakit/core/model/builders.py
"""Parametric model templates: benchmark beams and plates, spring chains, panels, frames, jigs."""

from typing import Dict, List, Optional, Sequence, Tuple

from ...errors import InputError
from .types import (
    BeamElement,
    BeamSection,
    BoltGroupDef,
    ConstraintSet,
    LoadCase,
    Material,
    Model,
    Node,
    PointMass,
    Preload,
    RigidLink,
    ShellElement,
    SpcEntry,
)

ALL_DOFS = (0, 1, 2, 3, 4, 5)


def a7075(material_id: int = 1) -> Material:
    """A7075-T7351 with handbook-typical elastic constants"""
    return Material(id=material_id, E=71.7e9, nu=0.33, rho=2810.0, F_ty=385e6, F_tu=460e6)


def cantilever_beam(
    length: float,
    n_elements: int,
    section: BeamSection,
    material: Material,
    load_cases: Sequence[LoadCase] = (),
    tip_mass: Optional[float] = None,
) -> Model:
    """Beam along +X clamped at node 1 under constraint set CLAMP"""
    if n_elements < 1 or length <= 0:
        raise InputError("cantilever needs length > 0 and at least one element")
    nodes = tuple(Node(i + 1, (length * i / n_elements, 0.0, 0.0)) for i in range(n_elements + 1))
    beams = tuple(
        BeamElement(i + 1, material.id, i + 1, i + 2, section, (0.0, 1.0, 0.0))
        for i in range(n_elements)
    )
    masses = (PointMass(1, n_elements + 1, tip_mass),) if tip_mass else ()
    return Model(
        materials=(material,),
        nodes=nodes,
        beams=beams,
        masses=masses,
        constraints=(ConstraintSet("CLAMP", spcs=(SpcEntry(1, ALL_DOFS),)),),
        load_cases=tuple(load_cases),
    )


def spring_chain(masses: Sequence[float], stiffness: float) -> Model:
    """Point masses joined by axial rods along X, ground at node 1, only TX free

    Rod stiffness EA/L equals `stiffness` with unit length and area; rods are massless.
    """
    rod = Material(id=1, E=stiffness, nu=0.0, rho=0.0, F_ty=1.0, F_tu=1.0)
    section = BeamSection(A=1.0, Iy=1.0, Iz=1.0, J=1.0)
    count = len(masses)
    nodes = tuple(Node(i + 1, (float(i), 0.0, 0.0)) for i in range(count + 1))
    beams = tuple(
        BeamElement(i + 1, 1, i + 1, i + 2, section, (0.0, 1.0, 0.0), "generic")
        for i in range(count)
    )
    point_masses = tuple(PointMass(i + 1, i + 2, m) for i, m in enumerate(masses))
    spcs = [SpcEntry(1, ALL_DOFS)] + [SpcEntry(i + 2, (1, 2, 3, 4, 5)) for i in range(count)]
    return Model(
        materials=(rod,),
        nodes=nodes,
        beams=beams,
        masses=point_masses,
        constraints=(ConstraintSet("CHAIN", spcs=tuple(spcs)),),
    )


def _plate_grid(
    size: float, n: int, thickness: float, material: Material, first_node: int = 1
) -> Tuple[Tuple[Node, ...], Tuple[ShellElement, ...], Dict[Tuple[int, int], int]]:
    ids: Dict[Tuple[int, int], int] = {}
    nodes: List[Node] = []
    step = size / n
    for i in range(n + 1):
        for j in range(n + 1):
            nid = first_node + i * (n + 1) + j
            ids[(i, j)] = nid
            nodes.append(Node(nid, (i * step - size / 2, j * step - size / 2, 0.0)))
    shells = []
    for i in range(n):
        for j in range(n):
            corners = (ids[(i, j)], ids[(i + 1, j)], ids[(i + 1, j + 1)], ids[(i, j + 1)])
            shells.append(ShellElement(1 + i * n + j, material.id, corners, thickness))
    return tuple(nodes), tuple(shells), ids


def square_plate(
    size: float, n: int, thickness: float, material: Material, support: str = "simply"
) -> Model:
    """Flat n×n plate in the XY plane centered on the origin

    support: 'simply' (edges TZ fixed), 'clamped' (edges fully fixed) or 'free'.
    In-plane and drilling DOFs are fixed everywhere for 'simply' and 'clamped',
    leaving a pure bending problem. The constraint set is named after the support.
    """
    if support not in ("simply", "clamped", "free"):
        raise InputError(f"unknown support '{support}'")
    nodes, shells, ids = _plate_grid(size, n, thickness, material)
    spcs = []
    if support != "free":
        for (i, j), nid in ids.items():
            edge = i in (0, n) or j in (0, n)
            if edge:
                dofs = ALL_DOFS if support == "clamped" else (0, 1, 2, 5)
            else:
                dofs = (0, 1, 5)
            spcs.append(SpcEntry(nid, dofs))
    return Model(
        materials=(material,),
        nodes=nodes,
        shells=shells,
        constraints=(ConstraintSet(support.upper(), spcs=tuple(spcs)),),
    )


def panel_template(
    size: float, n: int, thickness: float, material: Material, component_mass: float = 0.0
) -> Model:
    """Simplified panel with a fixed / rigid-linked boundary pattern

    Six edge nodes (four corners and the two mid-points of the X edges) are fully
    fixed, and the interior nodes one ring in from the center are tied to a free
    master node above the panel center by a rigid link. A point mass on the master
    stands in for mounted components. Constraint set: PANEL.
    """
    if n < 4 or n % 2:
        raise InputError("panel template needs an even mesh count of at least 4")
    nodes, shells, ids = _plate_grid(size, n, thickness, material)
    mid = n // 2
    fixed = [ids[(0, 0)], ids[(0, n)], ids[(n, 0)], ids[(n, n)], ids[(0, mid)], ids[(n, mid)]]
    slaves = tuple(
        ids[(i, j)] for i in range(mid - 1, mid + 2) for j in range(mid - 1, mid + 2)
    )
    master = max(nid for nid in ids.values()) + 1
    all_nodes = nodes + (Node(master, (0.0, 0.0, size / 10)),)
    masses = (PointMass(1, master, component_mass),) if component_mass > 0 else ()
    return Model(
        materials=(material,),
        nodes=all_nodes,
        shells=shells,
        masses=masses,
        rigid_links=(RigidLink(1, master, ALL_DOFS, slaves),),
        constraints=(ConstraintSet("PANEL", spcs=tuple(SpcEntry(nid, ALL_DOFS) for nid in fixed)),),
    )


def _rail_section(width: float) -> BeamSection:
    """Solid square rail"""
    inertia = width**4 / 12.0
    return BeamSection(A=width**2, Iy=inertia, Iz=inertia, J=0.1406 * width**4)


def bolt_steel(material_id: int = 2) -> Material:
    """Connector material; massless so that removing bolts only removes stiffness"""
    return Material(id=material_id, E=200e9, nu=0.3, rho=0.0, F_ty=640e6, F_tu=800e6)


def two_panel_frame(
    size: float = 0.1,
    height: float = 0.1,
    n: int = 4,
    panel_thickness: float = 0.0015,
    edge_offset: float = 0.005,
    rail_width: float = 0.0085,
    bolt_diameter: float = 0.003,
    payload: float = 0.25,
    preload: float = 46.6,
) -> Model:
    """Four vertical rails and two side panels joined by 12 bolt connectors

    Rails run along Z at (±size/2, ±size/2). The +X and -X panels lie in YZ
    planes and bolt to the two rails on their face at three heights per edge.
    Bolt groups are named after the panel face and rail side (XP-YM, XP-YP,
    XM-YM, XM-YP). Constraint sets:

    - A: both rail end faces fully fixed
    - B: A with the +Z rail ends free in Z and a compressive preload on them
    - C: the two -Y rails fixed along their length

    Load cases X, Y and Z apply 7 G along each axis.
    """
    if n < 2 or n % 2:
        raise InputError("frame panels need an even mesh count of at least 2")
    panel_mat = a7075(1)
    bolt_mat = bolt_steel(2)
    half = size / 2.0
    width = size - 2.0 * edge_offset
    mid = n // 2
    rail_levels = (0, mid, n)

    nodes: List[Node] = []
    shells: List[ShellElement] = []
    beams: List[BeamElement] = []
    masses: List[PointMass] = []

    def panel_node(p: int, iz: int, jy: int) -> int:
        return 1 + p * 1000 + iz * (n + 1) + jy

    def rail_node(r: int, k: int) -> int:
        return 5000 + r * 10 + k

    # Rails r: 0 (+X,-Y), 1 (+X,+Y), 2 (-X,-Y), 3 (-X,+Y)
    rail_xy = ((half, -half), (half, half), (-half, -half), (-half, half))
    for r, (x, y) in enumerate(rail_xy):
        for k, level in enumerate(rail_levels):
            nodes.append(Node(rail_node(r, k), (x, y, height * level / n)))
        for k in range(len(rail_levels) - 1):
            beams.append(
                BeamElement(
                    2000 + r * 10 + k,
                    panel_mat.id,
                    rail_node(r, k),
                    rail_node(r, k + 1),
                    _rail_section(rail_width),
                    (1.0, 0.0, 0.0),
                    "rail",
                )
            )

    groups = []
    bolt_section = BeamSection.circular(bolt_diameter)
    for p, x in enumerate((half, -half)):
        face = "XP" if x > 0 else "XM"
        for iz in range(n + 1):
            for jy in range(n + 1):
                y = -width / 2.0 + width * jy / n
                nodes.append(Node(panel_node(p, iz, jy), (x, y, height * iz / n)))
        for iz in range(n):
            for jy in range(n):
                corners = (
                    panel_node(p, iz, jy),
                    panel_node(p, iz, jy + 1),
                    panel_node(p, iz + 1, jy + 1),
                    panel_node(p, iz + 1, jy),
                )
                eid = 1 + p * 1000 + iz * n + jy
                shells.append(ShellElement(eid, panel_mat.id, corners, panel_thickness))
        if payload > 0:
            masses.append(PointMass(p + 1, panel_node(p, mid, mid), payload))
        for side, (jy, r) in enumerate(((0, 2 * p), (n, 2 * p + 1))):
            members = []
            for k, level in enumerate(rail_levels):
                eid = 3000 + p * 100 + side * 10 + k
                beams.append(
                    BeamElement(
                        eid,
                        bolt_mat.id,
                        panel_node(p, level, jy),
                        rail_node(r, k),
                        bolt_section,
                        (1.0, 0.0, 0.0),
                        "bolt",
                    )
                )
                members.append(eid)
            groups.append(BoltGroupDef(f"{face}-{'YM' if side == 0 else 'YP'}", tuple(members)))

    ends = [rail_node(r, k) for r in range(4) for k in (0, len(rail_levels) - 1)]
    top = [rail_node(r, len(rail_levels) - 1) for r in range(4)]
    ym_rails = [rail_node(r, k) for r in (0, 2) for k in range(len(rail_levels))]
    constraints = (
        ConstraintSet("A", spcs=tuple(SpcEntry(nid, ALL_DOFS) for nid in ends)),
        ConstraintSet(
            "B",
            releases=tuple(SpcEntry(nid, (2,)) for nid in top),
            preloads=tuple(Preload(nid, (0.0, 0.0, -preload)) for nid in top),
            base="A",
        ),
        ConstraintSet("C", spcs=tuple(SpcEntry(nid, ALL_DOFS) for nid in ym_rails)),
    )
    cases = (
        LoadCase("X", (7.0, 0.0, 0.0)),
        LoadCase("Y", (0.0, 7.0, 0.0)),
        LoadCase("Z", (0.0, 0.0, 7.0)),
    )
    return Model(
        materials=(panel_mat, bolt_mat),
        nodes=tuple(sorted(nodes, key=lambda node: node.id)),
        beams=tuple(sorted(beams, key=lambda b: b.id)),
        shells=tuple(shells),
        masses=tuple(masses),
        constraints=constraints,
        load_cases=cases,
        groups=tuple(groups),
    )


def jig_plate(
    thickness: float,
    rib_depth: Optional[float] = None,
    rib_width: float = 0.01,
    size: float = 0.3,
    n: int = 6,
    article_mass: float = 50.0,
    lift: float = 0.02,
) -> Model:
    """Square shaker jig carrying the test article as a point mass

    With `rib_depth` the plate gets a waffle of ribs along every mesh line,
    modeled as beams on the plate nodes with the parallel-axis bending
    stiffness about the plate mid-plane. The article sits on a rigid link
    tied to the nine central nodes. Corners and edge mid-points are fixed
    (constraint set SHAKER).
    """
    if n < 4 or n % 2:
        raise InputError("jig plate needs an even mesh count of at least 4")
    material = a7075(1)
    grid, shells, ids = _plate_grid(size, n, thickness, material)
    mid = n // 2

    beams: List[BeamElement] = []
    if rib_depth is not None:
        if rib_depth <= 0 or rib_width <= 0:
            raise InputError("rib depth and width must be positive")
        area = rib_width * rib_depth
        offset = (rib_depth + thickness) / 2.0
        short, long_ = sorted((rib_width, rib_depth))
        section = BeamSection(
            A=area,
            Iy=rib_depth * rib_width**3 / 12.0,
            Iz=rib_width * rib_depth**3 / 12.0 + area * offset**2,
            J=long_ * short**3 / 3.0 * (1.0 - 0.63 * short / long_),
        )
        eid = n * n + 1
        for line in range(n + 1):
            for k in range(n):
                # Ribs along Y (constant i) then along X (constant j)
                for a, b in (((line, k), (line, k + 1)), ((k, line), (k + 1, line))):
                    rib = BeamElement(eid, material.id, ids[a], ids[b], section, (0.0, 0.0, 1.0))
                    beams.append(rib)
                    eid += 1

    master = max(ids.values()) + 1
    slaves = tuple(ids[(i, j)] for i in range(mid - 1, mid + 2) for j in range(mid - 1, mid + 2))
    supports = [ids[(0, 0)], ids[(0, n)], ids[(n, 0)], ids[(n, n)]]
    supports += [ids[(0, mid)], ids[(n, mid)], ids[(mid, 0)], ids[(mid, n)]]
    return Model(
        materials=(material,),
        nodes=grid + (Node(master, (0.0, 0.0, lift)),),
        beams=tuple(beams),
        shells=shells,
        masses=(PointMass(1, master, article_mass),) if article_mass > 0 else (),
        rigid_links=(RigidLink(1, master, ALL_DOFS, slaves),),
        constraints=(
            ConstraintSet("SHAKER", spcs=tuple(SpcEntry(nid, ALL_DOFS) for nid in supports)),
        ),
    )
