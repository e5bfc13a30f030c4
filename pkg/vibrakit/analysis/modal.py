# vibrakit/analysis/modal.py
"""
Normal-mode workflow: effective modal mass, axis classification and the
frequency requirement checks applied to a solved structure.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.model.types import ConstraintSet, Model
from ..errors import InputError
from ..fea.assembly import assemble
from ..fea.shell import DEFAULT_DRILLING_FACTOR
from ..fea.solvers import solve_modes
from ..utils.logging import get_logger

logger = get_logger('analysis.modal')

AXES = ("X", "Y", "Z")
MIXED = "mixed"
NONE = "none"

# Allowed deviation of φᵀMφ from 1 for a mass-normalized shape
NORMALIZATION_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class ModeRecord:
    index: int  # 1-based
    frequency: float  # Hz
    shape: np.ndarray  # free-DOF vector, mass-normalized
    effective_mass: Tuple[float, float, float]  # kg along X, Y, Z
    axis: str

    @property
    def max_effective_mass(self) -> float:
        return max(self.effective_mass)


@dataclass(frozen=True, eq=False)
class ModalResult:
    constraint: str
    modes: Tuple[ModeRecord, ...]
    total_mass: Tuple[float, float, float]  # whole model, kg per axis
    free_mass: Tuple[float, float, float]  # mass carried by free DOFs (rᵀMr)

    @property
    def frequencies(self) -> List[float]:
        return [m.frequency for m in self.modes]

    @property
    def first_frequency(self) -> float:
        if not self.modes:
            raise InputError(f"modal result for '{self.constraint}' has no modes")
        return self.modes[0].frequency

    def effective_mass_sums(self) -> Tuple[float, float, float]:
        sums = np.zeros(3)
        for mode in self.modes:
            sums += mode.effective_mass
        return tuple(float(v) for v in sums)  # type: ignore[return-value]


@dataclass(frozen=True)
class RequirementCheck:
    """Outcome of a numeric requirement: value against limit"""

    name: str
    value: float
    limit: float
    passed: bool

    @property
    def margin(self) -> float:
        return self.value - self.limit


@dataclass(frozen=True)
class SeparationCheck:
    f_article: float
    f_fixture: float
    ratio: float
    min_ratio: float
    passed: bool


@dataclass(frozen=True)
class ConditionDelta:
    index: int
    f_first: float
    f_second: float

    @property
    def delta_percent(self) -> float:
        """(second - first) / first in percent"""
        if self.f_first == 0:
            return 0.0 if self.f_second == 0 else float("inf")
        return 100.0 * (self.f_second - self.f_first) / self.f_first


def effective_mass(shape: np.ndarray, mass: np.ndarray, r: np.ndarray) -> float:
    """Γ² with Γ = φᵀ M r for a mass-normalized φ"""
    shape = np.asarray(shape, dtype=float)
    modal_mass = float(shape @ (mass @ shape))
    if abs(modal_mass - 1.0) > NORMALIZATION_TOLERANCE:
        raise InputError(f"mode shape is not mass-normalized (φᵀMφ = {modal_mass:.9g})")
    gamma = float(shape @ (mass @ np.asarray(r, dtype=float)))
    return gamma * gamma


def classify_mode(masses: Sequence[float], dominance_ratio: float = 2.0) -> str:
    """Axis whose effective mass dominates the runner-up by `dominance_ratio`"""
    values = [float(v) for v in masses]
    if len(values) != 3:
        raise InputError("classify_mode expects three effective masses (X, Y, Z)")
    if any(v < 0 for v in values):
        raise InputError("effective masses cannot be negative")
    if max(values) <= 0:
        return NONE
    order = sorted(range(3), key=lambda i: values[i], reverse=True)
    top, second = values[order[0]], values[order[1]]
    if top == second:
        return MIXED
    if second == 0 or top >= dominance_ratio * second:
        return AXES[order[0]]
    return MIXED


def normal_modes(
    model: Model,
    constraint: Union[ConstraintSet, str],
    n_modes: Optional[int] = 10,
    dominance_ratio: float = 2.0,
    drilling_factor: float = DEFAULT_DRILLING_FACTOR,
    max_dof: Optional[int] = None,
) -> ModalResult:
    """Assemble under `constraint`, solve the lowest modes, attach effective masses

    `n_modes=None` solves every mode; a count above the free-DOF count is
    clipped to it.
    """
    system = assemble(model, constraint, drilling_factor=drilling_factor, max_dof=max_dof)
    count = system.n_free if n_modes is None else min(int(n_modes), system.n_free)
    if n_modes is not None and n_modes > system.n_free:
        logger.debug(f"Clipping {n_modes} requested modes to {system.n_free} free DOFs")
    solution = solve_modes(system, count)

    rigid = [system.rigid_body_vector(axis) for axis in range(3)]
    records = []
    for j in range(solution.shapes.shape[1]):
        shape = solution.shapes[:, j]
        masses = tuple(effective_mass(shape, system.M, r) for r in rigid)
        records.append(
            ModeRecord(
                index=j + 1,
                frequency=float(solution.frequencies[j]),
                shape=shape,
                effective_mass=masses,  # type: ignore[arg-type]
                axis=classify_mode(masses, dominance_ratio),
            )
        )

    free_mass = tuple(float(r @ (system.M @ r)) for r in rigid)
    total = tuple(float(v) for v in system.total_mass())
    logger.info(
        f"Normal modes under '{system.constraint.name}': {len(records)} modes, "
        f"f1 = {records[0].frequency:.4f} Hz"
    )
    return ModalResult(
        constraint=system.constraint.name,
        modes=tuple(records),
        total_mass=total,  # type: ignore[arg-type]
        free_mass=free_mass,  # type: ignore[arg-type]
    )


def check_min_frequency(result: Union[ModalResult, float], floor: float = 60.0) -> RequirementCheck:
    """First natural frequency at or above the floor"""
    f1 = result.first_frequency if isinstance(result, ModalResult) else float(result)
    return RequirementCheck(
        name="first natural frequency", value=f1, limit=floor, passed=f1 >= floor
    )


def frequency_separation(
    f_article: float, f_fixture: float, min_ratio: float = 2.0
) -> SeparationCheck:
    """Fixture/article frequency ratio against the minimum separation"""
    if f_article <= 0 or f_fixture <= 0:
        raise InputError(
            f"frequencies must be positive (article {f_article}, fixture {f_fixture})"
        )
    if min_ratio <= 0:
        raise InputError(f"separation ratio must be positive, got {min_ratio}")
    ratio = f_fixture / f_article
    return SeparationCheck(
        f_article=f_article,
        f_fixture=f_fixture,
        ratio=ratio,
        min_ratio=min_ratio,
        passed=ratio >= min_ratio,
    )


def compare_conditions(first: ModalResult, second: ModalResult) -> List[ConditionDelta]:
    """Mode-by-mode frequency delta between two constraint conditions"""
    count = min(len(first.modes), len(second.modes))
    return [
        ConditionDelta(
            index=i + 1, f_first=first.modes[i].frequency, f_second=second.modes[i].frequency
        )
        for i in range(count)
    ]


def filter_modes(result: ModalResult, floor_kg: float) -> List[ModeRecord]:
    """Modes whose largest effective mass exceeds `floor_kg`; a floor of 0 keeps all"""
    if floor_kg <= 0:
        return list(result.modes)
    return [m for m in result.modes if m.max_effective_mass > floor_kg]
