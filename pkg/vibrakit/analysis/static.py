# vibrakit/analysis/static.py
"""
Static acceleration cases: stress recovery, maximum von Mises search,
yield/ultimate margins of safety and the ultimate-stress ratio check.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from operator import attrgetter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..config.settings import Thresholds
from ..core.model.types import ConstraintSet, LoadCase, Material, Model
from ..errors import InputError
from ..fea.assembly import AssembledSystem, assemble
from ..fea.recovery import (
    BeamEndForces,
    ShellStress,
    beam_fiber_stress,
    recover_beam_end_forces,
    recover_shell_stress,
)
from ..fea.shell import DEFAULT_DRILLING_FACTOR
from ..fea.solvers import DisplacementField, solve_static
from ..utils.logging import get_logger

logger = get_logger('analysis.static')


@dataclass(frozen=True)
class SafetyFactors:
    fs_yield: float = 1.5
    fs_ultimate: float = 2.0
    ratio_limit: float = 0.30

    def __post_init__(self):
        for name in ("fs_yield", "fs_ultimate", "ratio_limit"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive, got {getattr(self, name)}")

    @classmethod
    def from_thresholds(cls, thresholds: Thresholds) -> "SafetyFactors":
        return cls(
            fs_yield=thresholds.fs_yield,
            fs_ultimate=thresholds.fs_ultimate,
            ratio_limit=thresholds.ratio_limit,
        )


@dataclass(frozen=True)
class MarginResult:
    """Yield and ultimate margins; both None when the stress is zero (unbounded)"""

    ms_ty: Optional[float]
    ms_tu: Optional[float]

    @property
    def unbounded(self) -> bool:
        return self.ms_ty is None

    @property
    def passed(self) -> bool:
        return self.unbounded or (self.ms_ty >= 0 and self.ms_tu >= 0)  # type: ignore[operator]


@dataclass(frozen=True)
class RatioCheck:
    ratio: float
    limit: float

    @property
    def percent(self) -> float:
        return 100.0 * self.ratio

    @property
    def passed(self) -> bool:
        return self.ratio < self.limit


@dataclass(frozen=True)
class StressLocation:
    s_max: float  # Pa
    element_id: int
    surface: str  # top | bottom | end-A | end-B


@dataclass
class StaticResult:
    case: LoadCase
    constraint: str
    field: DisplacementField
    shell_stresses: Dict[int, ShellStress]
    beam_forces: Dict[int, BeamEndForces]
    location: StressLocation
    material: Material
    margins: MarginResult
    ratio: RatioCheck

    @property
    def s_max(self) -> float:
        return self.location.s_max

    @property
    def passed(self) -> bool:
        return self.margins.passed and self.ratio.passed


def margin_of_safety(
    s_max: float, material: Material, factors: SafetyFactors = SafetyFactors()
) -> MarginResult:
    """MS = allowable / (S_max × FS) − 1 for yield and ultimate"""
    if s_max <= 0:
        return MarginResult(ms_ty=None, ms_tu=None)
    return MarginResult(
        ms_ty=material.F_ty / (s_max * factors.fs_yield) - 1.0,
        ms_tu=material.F_tu / (s_max * factors.fs_ultimate) - 1.0,
    )


def stress_ratio_check(s_max: float, f_tu: float, limit: float = 0.30) -> RatioCheck:
    """S_max / F_tu, passing strictly below the limit"""
    if f_tu <= 0:
        raise InputError(f"F_tu must be positive, got {f_tu}")
    return RatioCheck(ratio=s_max / f_tu, limit=limit)


def max_von_mises(stresses: Iterable[Tuple[int, str, float]]) -> StressLocation:
    """Largest (element id, surface, σ_vm) candidate; ties go to the lowest element id"""
    best: Optional[StressLocation] = None
    for element_id, surface, value in stresses:
        if (
            best is None
            or value > best.s_max
            or (value == best.s_max and element_id < best.element_id)
        ):
            best = StressLocation(s_max=float(value), element_id=int(element_id), surface=surface)
    if best is None:
        raise InputError("no recovered stresses to search")
    return best


def _candidates(model: Model, shells: Dict[int, ShellStress], beams: Dict[int, BeamEndForces]):
    for eid, stress in shells.items():
        yield eid, "top", stress.top.von_mises
        yield eid, "bottom", stress.bottom.von_mises
    for eid, forces in beams.items():
        sigma, end = beam_fiber_stress(forces, model.beam(eid))
        yield eid, end, sigma


def _evaluate(system: AssembledSystem, case: LoadCase, factors: SafetyFactors) -> StaticResult:
    model = system.model
    field = solve_static(system, case)
    by_id = attrgetter("id")
    shells = {s.id: recover_shell_stress(field, s) for s in sorted(model.shells, key=by_id)}
    beams = {b.id: recover_beam_end_forces(field, b) for b in sorted(model.beams, key=by_id)}
    location = max_von_mises(_candidates(model, shells, beams))
    owner = model.shell_map.get(location.element_id) or model.beam(location.element_id)
    material = model.material(owner.material)
    margins = margin_of_safety(location.s_max, material, factors)
    ratio = stress_ratio_check(location.s_max, material.F_tu, factors.ratio_limit)
    logger.info(
        f"Static case '{case.name}' under '{system.constraint.name}': "
        f"S_max = {location.s_max / 1e6:.3f} MPa "
        f"at element {location.element_id} ({location.surface})"
    )
    return StaticResult(
        case=case,
        constraint=system.constraint.name,
        field=field,
        shell_stresses=shells,
        beam_forces=beams,
        location=location,
        material=material,
        margins=margins,
        ratio=ratio,
    )


def _case(model: Model, case: Union[LoadCase, str]) -> LoadCase:
    return model.load_case(case) if isinstance(case, str) else case


def run_static_case(
    model: Model,
    constraint: Union[ConstraintSet, str],
    case: Union[LoadCase, str],
    factors: SafetyFactors = SafetyFactors(),
    drilling_factor: float = DEFAULT_DRILLING_FACTOR,
    max_dof: Optional[int] = None,
) -> StaticResult:
    """Assemble, solve, recover every element and compute margins for one case"""
    system = assemble(model, constraint, drilling_factor=drilling_factor, max_dof=max_dof)
    return _evaluate(system, _case(model, case), factors)


def run_static_cases(
    model: Model,
    constraint: Union[ConstraintSet, str],
    cases: Sequence[Union[LoadCase, str]],
    factors: SafetyFactors = SafetyFactors(),
    workers: int = 1,
    drilling_factor: float = DEFAULT_DRILLING_FACTOR,
    max_dof: Optional[int] = None,
) -> List[StaticResult]:
    """Several cases on one assembled system, returned in case order"""
    resolved = [_case(model, c) for c in cases]
    if not resolved:
        raise InputError("no load cases to run")
    system = assemble(model, constraint, drilling_factor=drilling_factor, max_dof=max_dof)
    if workers <= 1 or len(resolved) == 1:
        return [_evaluate(system, c, factors) for c in resolved]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda c: _evaluate(system, c, factors), resolved))
