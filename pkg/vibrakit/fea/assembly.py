# vibrakit/fea/assembly.py
"""
Global assembly under a constraint set.

Full DOF index = 6 * (node position in ascending id order) + local DOF.
Rigid links are eliminated master-slave style through a sparse map
u_full = T u_independent; SPC'd independent DOFs are then dropped.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..config.settings import RuntimeSettings
from ..core.model.types import DOF_NAMES, ConstraintSet, LoadCase, Model, ResolvedConstraint
from ..errors import AssemblyError, InputError, ModelTooLargeError
from ..utils.logging import get_logger
from .beam import beam_matrices
from .shell import DEFAULT_DRILLING_FACTOR, shell_matrices

logger = get_logger('fea.assembly')

CONSTRAINED = -1


@dataclass
class DofMap:
    """(node, dof) -> equation number, or CONSTRAINED for fixed and slave DOFs"""

    node_ids: Tuple[int, ...]
    equations: np.ndarray  # (n_nodes, 6) int
    fixed_columns: Tuple[Tuple[int, int], ...]  # (node, dof) of SPC'd independent DOFs

    @property
    def n_free(self) -> int:
        return int((self.equations >= 0).sum())

    @property
    def n_full(self) -> int:
        return 6 * len(self.node_ids)

    def equation(self, node: int, dof: int) -> int:
        try:
            row = self.node_ids.index(node)
        except ValueError:
            raise InputError(f"node {node} is not part of the assembled model") from None
        return int(self.equations[row, dof])

    def free_dofs(self) -> List[Tuple[int, int]]:
        """(node, dof) pairs in equation order"""
        pairs = [
            (int(self.equations[r, d]), nid, d)
            for r, nid in enumerate(self.node_ids)
            for d in range(6)
            if self.equations[r, d] >= 0
        ]
        return [(nid, d) for _, nid, d in sorted(pairs)]


@dataclass
class AssembledSystem:
    model: Model
    constraint: ResolvedConstraint
    dof_map: DofMap
    K: np.ndarray
    M: np.ndarray
    K_full: sp.csr_matrix
    M_full: sp.csr_matrix
    T_free: sp.csr_matrix
    T_fixed: sp.csr_matrix
    preload: np.ndarray  # full-length load vector from the constraint's preloads

    @property
    def n_free(self) -> int:
        return self.dof_map.n_free

    def rigid_body_vector(self, axis: int) -> np.ndarray:
        """Unit translation along axis, expressed on the free DOFs"""
        r = np.zeros(self.n_free)
        for eq, (_, dof) in enumerate(self.dof_map.free_dofs()):
            if dof == axis:
                r[eq] = 1.0
        return r

    def body_load(self, acceleration: np.ndarray) -> np.ndarray:
        """Full-length M·a for a uniform translational acceleration (m/s²)"""
        a = np.zeros(self.dof_map.n_full)
        for axis in range(3):
            a[axis::6] = acceleration[axis]
        return self.M_full @ a

    def preload_for(self, case: LoadCase) -> np.ndarray:
        if case.preload_set is None:
            return self.preload
        resolved = self.model.resolve_constraint(case.preload_set)
        return preload_vector(self.model, resolved)

    def full_load(self, case: LoadCase) -> np.ndarray:
        return self.body_load(case.acceleration) + self.preload_for(case)

    def expand(self, u_free: np.ndarray) -> np.ndarray:
        """Free-DOF vector(s) -> full-length vector(s)"""
        return self.T_free @ u_free

    def total_mass(self) -> np.ndarray:
        """Translational mass per axis carried by the full mass matrix"""
        masses = []
        for axis in range(3):
            r = np.zeros(self.dof_map.n_full)
            r[axis::6] = 1.0
            masses.append(float(r @ (self.M_full @ r)))
        return np.array(masses)


def preload_vector(model: Model, constraint: ResolvedConstraint) -> np.ndarray:
    f = np.zeros(6 * len(model.nodes))
    index = model.node_index
    for pre in constraint.preloads:
        base = 6 * index[pre.node]
        f[base : base + 3] += pre.force
    return f


def _element_matrices(model: Model, drilling_factor: float):
    """(element id, full DOF indices, K_e, M_e) in ascending element id order"""
    index = model.node_index
    elements = [(b.id, "beam", b) for b in model.beams] + [(s.id, "shell", s) for s in model.shells]
    for eid, kind, element in sorted(elements, key=lambda e: e[0]):
        material = model.material(element.material)
        if kind == "beam":
            n1, n2 = model.node(element.n1), model.node(element.n2)
            k_e, m_e = beam_matrices(element, material, n1, n2)
            node_ids = element.nodes
        else:
            points = model.positions(element.nodes)
            k_e, m_e = shell_matrices(element, material, points, drilling_factor)
            node_ids = element.nodes
        dofs = np.array([6 * index[n] + d for n in node_ids for d in range(6)])
        yield eid, dofs, k_e, m_e


def _scatter(
    n_full: int,
    blocks: List[Tuple[np.ndarray, np.ndarray]],
    extra: Optional[np.ndarray] = None,
):
    rows, cols, vals = [], [], []
    for dofs, mat in blocks:
        r, c = np.meshgrid(dofs, dofs, indexing="ij")
        rows.append(r.ravel())
        cols.append(c.ravel())
        vals.append(mat.ravel())
    if extra is not None:
        idx = np.nonzero(extra)[0]
        rows.append(idx)
        cols.append(idx)
        vals.append(extra[idx])
    if not rows:
        return sp.csr_matrix((n_full, n_full))
    coo = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n_full, n_full)
    )
    return coo.tocsr()


def _dependency_rows(model: Model, fixed) -> Dict[int, Dict[int, float]]:
    """Each slave full DOF expressed as a combination of independent full DOFs"""
    index = model.node_index
    direct: Dict[int, Dict[int, float]] = {}
    owner: Dict[int, int] = {}
    for link in model.rigid_links:
        master = model.node(link.master).xyz
        m0 = 6 * index[link.master]
        for slave in link.slaves:
            if slave in owner:
                raise AssemblyError(
                    f"node {slave} is a slave of rigid links {owner[slave]} and {link.id}"
                )
            owner[slave] = link.id
            r = model.node(slave).xyz - master
            s0 = 6 * index[slave]
            for dof in link.dofs:
                if (slave, dof) in fixed:
                    raise AssemblyError(
                        f"over-constrained: {DOF_NAMES[dof]} of node {slave} is both an SPC "
                        f"and a slave of rigid link {link.id}"
                    )
                if dof < 3:
                    # u_s = u_m + θ_m × r
                    row = {m0 + dof: 1.0}
                    rx, ry, rz = r
                    cross = {
                        0: {m0 + 4: rz, m0 + 5: -ry},
                        1: {m0 + 5: rx, m0 + 3: -rz},
                        2: {m0 + 3: ry, m0 + 4: -rx},
                    }[dof]
                    for k, v in cross.items():
                        if v != 0.0:
                            row[k] = row.get(k, 0.0) + v
                else:
                    row = {m0 + dof: 1.0}
                direct[s0 + dof] = row

    resolved: Dict[int, Dict[int, float]] = {}
    visiting: set = set()

    def resolve(dof: int) -> Dict[int, float]:
        if dof not in direct:
            return {dof: 1.0}
        if dof in resolved:
            return resolved[dof]
        if dof in visiting:
            raise AssemblyError("over-constrained: rigid links form a cycle")
        visiting.add(dof)
        out: Dict[int, float] = {}
        for k, v in direct[dof].items():
            for kk, vv in resolve(k).items():
                out[kk] = out.get(kk, 0.0) + v * vv
        visiting.discard(dof)
        resolved[dof] = out
        return out

    for dof in sorted(direct):
        resolve(dof)
    return resolved


def _transformations(model: Model, constraint: ResolvedConstraint):
    n_nodes = len(model.nodes)
    n_full = 6 * n_nodes
    node_ids = tuple(sorted(model.node_map))
    slaves = _dependency_rows(model, constraint.fixed)

    equations = np.full((n_nodes, 6), CONSTRAINED, dtype=int)
    free_col: Dict[int, int] = {}
    fixed_col: Dict[int, int] = {}
    fixed_pairs = []
    for row, nid in enumerate(node_ids):
        for dof in range(6):
            g = 6 * row + dof
            if g in slaves:
                continue
            if (nid, dof) in constraint.fixed:
                fixed_col[g] = len(fixed_col)
                fixed_pairs.append((nid, dof))
            else:
                free_col[g] = len(free_col)
                equations[row, dof] = free_col[g]

    def build(columns: Dict[int, int]) -> sp.csr_matrix:
        rows, cols, vals = [], [], []
        for g in range(n_full):
            combo = slaves.get(g, {g: 1.0})
            for k, v in combo.items():
                if k in columns and v != 0.0:
                    rows.append(g)
                    cols.append(columns[k])
                    vals.append(v)
        return sp.csr_matrix((vals, (rows, cols)), shape=(n_full, len(columns)))

    dof_map = DofMap(node_ids=node_ids, equations=equations, fixed_columns=tuple(fixed_pairs))
    return dof_map, build(free_col), build(fixed_col)


def _symmetric(a: np.ndarray) -> np.ndarray:
    return np.triu(a) + np.triu(a, 1).T


def assemble(
    model: Model,
    constraint: "ConstraintSet | str",
    drilling_factor: float = DEFAULT_DRILLING_FACTOR,
    max_dof: Optional[int] = None,
) -> AssembledSystem:
    """Scatter element matrices, impose rigid links and SPCs, build load vectors"""
    resolved = model.resolve_constraint(constraint)
    for nid, _ in resolved.fixed:
        model.node(nid)
    for pre in resolved.preloads:
        model.node(pre.node)

    n_full = 6 * len(model.nodes)
    dof_map, t_free, t_fixed = _transformations(model, resolved)
    n_free = dof_map.n_free
    if n_free == 0:
        raise AssemblyError(f"constraint set '{resolved.name}' leaves no free DOF")
    limit = max_dof if max_dof is not None else RuntimeSettings().max_dof
    if n_free > limit:
        raise ModelTooLargeError(
            f"{n_free} free DOFs exceed the limit of {limit} (raise VIBRAKIT_MAX_DOF)"
        )

    k_blocks, m_blocks = [], []
    for _, dofs, k_e, m_e in _element_matrices(model, drilling_factor):
        k_blocks.append((dofs, k_e))
        m_blocks.append((dofs, m_e))

    lumped = np.zeros(n_full)
    index = model.node_index
    for pm in model.masses:
        base = 6 * index[pm.node]
        lumped[base : base + 3] += pm.mass
        lumped[base + 3 : base + 6] += pm.inertia

    k_full = _scatter(n_full, k_blocks)
    m_full = _scatter(n_full, m_blocks, lumped)

    k = _symmetric((t_free.T @ k_full @ t_free).toarray())
    m = _symmetric((t_free.T @ m_full @ t_free).toarray())

    system = AssembledSystem(
        model=model,
        constraint=resolved,
        dof_map=dof_map,
        K=k,
        M=m,
        K_full=k_full,
        M_full=m_full,
        T_free=t_free,
        T_fixed=t_fixed,
        preload=preload_vector(model, resolved),
    )

    logger.debug(
        f"Assembled '{resolved.name}': {n_full} DOFs, {n_free} free, "
        f"{len(dof_map.fixed_columns)} fixed, {len(model.rigid_links)} rigid links"
    )
    return system
