# vibrakit/core/model/validation.py
"""Model invariant checks; every problem becomes a Finding, nothing is raised."""

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .types import BEAM_TAGS, Model, quad_area

# Relative out-of-plane tolerance for shell warping, scaled by the element size
WARP_TOLERANCE = 1e-3


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" | "warning"
    entity: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity.upper()}: {self.entity}: {self.message}"


@dataclass
class ValidationReport:
    findings: List[Finding] = field(default_factory=list)

    def error(self, entity: str, message: str):
        self.findings.append(Finding("error", entity, message))

    def warning(self, entity: str, message: str):
        self.findings.append(Finding("warning", entity, message))

    @property
    def errors(self) -> List[Finding]:
        return [f for f in self.findings if f.severity == "error"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def __len__(self) -> int:
        return len(self.findings)

    def __iter__(self):
        return iter(self.findings)

    def messages(self) -> List[str]:
        return [f.message for f in self.findings]


def _check_duplicates(report: ValidationReport, kind: str, ids):
    for key, count in Counter(ids).items():
        if count > 1:
            report.error(f"{kind} {key}", f"duplicate {kind} id {key}")


def _check_materials(model: Model, report: ValidationReport):
    _check_duplicates(report, "material", [m.id for m in model.materials])
    for m in model.materials:
        entity = f"material {m.id}"
        if not m.E > 0:
            report.error(entity, "Young's modulus must be positive")
        if not 0 <= m.nu < 0.5:
            report.error(entity, f"Poisson ratio {m.nu} outside [0, 0.5)")
        if not m.rho >= 0:
            report.error(entity, "density must be non-negative")
        if not 0 < m.F_ty <= m.F_tu:
            report.error(entity, "limits must satisfy 0 < F_ty <= F_tu")


def _check_nodes(model: Model, report: ValidationReport):
    _check_duplicates(report, "node", [n.id for n in model.nodes])
    connected = {n for b in model.beams for n in b.nodes}
    connected |= {n for s in model.shells for n in s.nodes}
    connected |= {n for link in model.rigid_links for n in (link.master,) + link.slaves}
    for n in model.nodes:
        if not all(math.isfinite(c) for c in n.position):
            report.error(f"node {n.id}", "non-finite position")
        if n.id not in connected:
            report.warning(f"node {n.id}", "not connected to any element or rigid link")


def _check_beams(model: Model, report: ValidationReport):
    for b in model.beams:
        entity = f"beam {b.id}"
        if b.material not in model.material_map:
            report.error(entity, f"dangling material {b.material}")
        missing = [n for n in b.nodes if n not in model.node_map]
        for n in missing:
            report.error(entity, f"dangling node {n}")
        if b.tag not in BEAM_TAGS:
            report.error(entity, f"unknown tag '{b.tag}'")
        s = b.section
        if min(s.A, s.Iy, s.Iz, s.J) <= 0:
            report.error(entity, "section properties must be strictly positive")
        if b.n1 == b.n2:
            report.error(entity, "both ends on the same node")
            continue
        if missing:
            continue
        axis = model.node(b.n2).xyz - model.node(b.n1).xyz
        length = float(np.linalg.norm(axis))
        if length <= 0:
            report.error(entity, "zero-length beam")
            continue
        v = np.asarray(b.orientation, dtype=float)
        v_norm = float(np.linalg.norm(v))
        if v_norm == 0 or np.linalg.norm(np.cross(axis / length, v)) < 1e-8 * v_norm:
            report.error(entity, "orientation vector parallel to the element axis")


def _check_shells(model: Model, report: ValidationReport):
    for s in model.shells:
        entity = f"shell {s.id}"
        if s.material not in model.material_map:
            report.error(entity, f"dangling material {s.material}")
        if not s.thickness > 0:
            report.error(entity, "thickness must be positive")
        missing = [n for n in s.nodes if n not in model.node_map]
        for n in missing:
            report.error(entity, f"dangling node {n}")
        if missing:
            continue
        pts = model.positions(s.nodes)
        if len(set(s.nodes)) < 4 or any(
            np.linalg.norm(pts[i] - pts[j]) == 0 for i in range(4) for j in range(i + 1, 4)
        ):
            report.error(entity, "degenerate shell: coincident corners")
            continue
        area = quad_area(pts)
        if area <= 0:
            report.error(entity, "degenerate shell: zero area")
            continue
        normal = np.cross(pts[2] - pts[0], pts[3] - pts[1])
        normal /= np.linalg.norm(normal)
        center = pts.mean(axis=0)
        warp = np.abs((pts - center) @ normal).max()
        if warp > WARP_TOLERANCE * math.sqrt(area):
            report.error(entity, f"non-planar quad (warp {warp:.3g} m)")
        # Convexity: every corner turns the same way about the normal
        for i in range(4):
            e1 = pts[(i + 1) % 4] - pts[i]
            e2 = pts[(i + 2) % 4] - pts[(i + 1) % 4]
            if np.dot(np.cross(e1, e2), normal) <= 0:
                report.error(entity, "degenerate shell: quad is not convex")
                break


def _check_masses(model: Model, report: ValidationReport):
    _check_duplicates(report, "mass", [m.id for m in model.masses])
    for pm in model.masses:
        entity = f"mass {pm.id}"
        if pm.node not in model.node_map:
            report.error(entity, f"dangling node {pm.node}")
        if not pm.mass >= 0:
            report.error(entity, "mass must be non-negative")
        if any(i < 0 for i in pm.inertia):
            report.error(entity, "rotary inertia must be non-negative")


def _check_links(model: Model, report: ValidationReport):
    _check_duplicates(report, "rigid link", [r.id for r in model.rigid_links])
    slave_owner = {}
    for link in model.rigid_links:
        entity = f"rigid link {link.id}"
        for n in (link.master,) + link.slaves:
            if n not in model.node_map:
                report.error(entity, f"dangling node {n}")
        if link.master in link.slaves:
            report.error(entity, "master node listed among its slaves")
        if not link.dofs:
            report.error(entity, "empty DOF mask")
        if not link.slaves:
            report.error(entity, "no slave nodes")
        for n in link.slaves:
            if n in slave_owner:
                report.error(entity, f"node {n} is already a slave of rigid link {slave_owner[n]}")
            slave_owner[n] = link.id


def _check_constraints(model: Model, report: ValidationReport):
    names = [cs.name for cs in model.constraints]
    _check_duplicates(report, "constraint set", names)
    for cs in model.constraints:
        entity = f"constraint set {cs.name}"
        if cs.base is not None and cs.base not in names:
            report.error(entity, f"dangling base set {cs.base}")
        fixed = set()
        for entry in cs.spcs + cs.releases:
            if entry.node not in model.node_map:
                report.error(entity, f"dangling node {entry.node}")
        for entry in cs.preloads:
            if entry.node not in model.node_map:
                report.error(entity, f"dangling node {entry.node}")
            if not all(math.isfinite(f) for f in entry.force):
                report.error(entity, f"non-finite preload at node {entry.node}")
        for spc in cs.spcs:
            fixed.update((spc.node, d) for d in spc.dofs)
        for rel in cs.releases:
            both = sorted(d + 1 for d in rel.dofs if (rel.node, d) in fixed)
            if both:
                report.error(
                    entity, f"node {rel.node} DOF {''.join(map(str, both))} both fixed and released"
                )


def _check_cases(model: Model, report: ValidationReport):
    _check_duplicates(report, "load case", [c.name for c in model.load_cases])
    names = {cs.name for cs in model.constraints}
    for case in model.load_cases:
        entity = f"load case {case.name}"
        if not all(math.isfinite(a) for a in case.accel_g):
            report.error(entity, "non-finite acceleration")
        elif not any(case.accel_g) and case.preload_set is None:
            report.warning(entity, "zero acceleration and no preload set")
        if case.preload_set is not None and case.preload_set not in names:
            report.error(entity, f"dangling preload set {case.preload_set}")


def _check_groups(model: Model, report: ValidationReport):
    _check_duplicates(report, "group", [g.label for g in model.groups])
    owner = {}
    for group in model.groups:
        entity = f"group {group.label}"
        if not group.members:
            report.error(entity, "empty bolt group")
        for eid in group.members:
            beam = model.beam_map.get(eid)
            if beam is None:
                report.error(entity, f"dangling element {eid}")
                continue
            if not beam.is_bolt:
                report.error(entity, f"element {eid} is not tagged bolt")
            if eid in owner:
                report.error(entity, f"element {eid} already belongs to group {owner[eid]}")
            owner[eid] = group.label


def validate_model(model: Model) -> ValidationReport:
    """Check every model invariant and return the findings"""
    report = ValidationReport()
    _check_materials(model, report)
    _check_nodes(model, report)
    _check_duplicates(report, "element", [b.id for b in model.beams] + [s.id for s in model.shells])
    _check_beams(model, report)
    _check_shells(model, report)
    _check_masses(model, report)
    _check_links(model, report)
    _check_constraints(model, report)
    _check_cases(model, report)
    _check_groups(model, report)

    if report.ok:
        total = model.total_mass()
        if not total > 0:
            report.error("model", "total mass must be positive")
    return report
