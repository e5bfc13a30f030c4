# vibrakit/analysis/bolts.py
"""
Bolt connector shear: SRSS per bolt, maximum per fastening row, a heuristic
loosening-risk ranking, and the bolt-length stack-up rule.
"""

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from ..core.model.types import BoltGroupDef, LoadCase
from ..errors import InputError, MissingRecordError
from ..io.punch import (
    BeamForceRow,
    FormatDescriptor,
    PunchBlock,
    PunchDocument,
    PunchRecord,
)
from ..utils.logging import get_logger
from ..vibration.psd import PsdProfile, miles_acceleration
from .static import StaticResult

logger = get_logger('analysis.bolts')

RANKING_DIGITS = 9


def srss_shear(v1: float, v2: float) -> float:
    """sqrt(V1² + V2²) without intermediate overflow"""
    if not (math.isfinite(v1) and math.isfinite(v2)):
        raise InputError(f"shear components must be finite, got ({v1}, {v2})")
    return math.hypot(v1, v2)


@dataclass(frozen=True)
class BoltShearRecord:
    element_id: int
    case: str
    v1: float
    v2: float
    axial: float = 0.0

    @property
    def srss(self) -> float:
        return srss_shear(self.v1, self.v2)


@dataclass(frozen=True)
class GroupShear:
    label: str
    bolt_count: int
    max_shear: float
    governing_element: int


@dataclass(frozen=True)
class BoltGroupReport:
    case: str
    rows: Tuple[GroupShear, ...]  # group declaration order

    def row(self, label: str) -> GroupShear:
        for row in self.rows:
            if row.label == label:
                return row
        raise InputError(f"group '{label}' is not in the report for case '{self.case}'")


def group_max_shear(
    records: Iterable[BoltShearRecord], groups: Sequence[BoltGroupDef], case: str
) -> BoltGroupReport:
    """Largest SRSS shear and its bolt per group for one load case"""
    by_element: Dict[int, BoltShearRecord] = {}
    for record in records:
        if record.case != case:
            continue
        known = by_element.get(record.element_id)
        if known is None or record.srss > known.srss:
            by_element[record.element_id] = record

    rows = []
    for group in groups:
        if not group.members:
            raise InputError(f"bolt group '{group.label}' has no members")
        best: Optional[BoltShearRecord] = None
        for eid in group.members:
            record = by_element.get(eid)
            if record is None:
                raise MissingRecordError(
                    f"bolt element {eid} of group '{group.label}' "
                    f"has no shear record for case '{case}'"
                )
            if best is None or record.srss > best.srss:
                best = record
        assert best is not None
        rows.append(
            GroupShear(
                label=group.label,
                bolt_count=len(group.members),
                max_shear=best.srss,
                governing_element=best.element_id,
            )
        )
    return BoltGroupReport(case=case, rows=tuple(rows))


def rank_loosening_risk(report: BoltGroupReport) -> List[GroupShear]:
    """Groups by descending max shear; equal shears keep declaration order

    Shears are compared at RANKING_DIGITS significant digits so that mirror-image
    groups tie regardless of round-off. Heuristic only: larger shear means higher
    loosening risk, no threshold implied.
    """
    if not report.rows:
        raise InputError(f"bolt report for case '{report.case}' is empty")
    return sorted(report.rows, key=lambda row: -float(f"{row.max_shear:.{RANKING_DIGITS - 1}e}"))


def bolt_shear_records(
    result: StaticResult, elements: Optional[Iterable[int]] = None
) -> List[BoltShearRecord]:
    """SRSS records for the bolt-tagged beams of a static result, governing end per element"""
    model = result.field.model
    wanted = set(elements) if elements is not None else None
    records = []
    for eid, forces in sorted(result.beam_forces.items()):
        beam = model.beam(eid)
        if wanted is not None:
            if eid not in wanted:
                continue
        elif not beam.is_bolt:
            continue
        end = forces.governing_end
        records.append(
            BoltShearRecord(
                element_id=eid, case=result.case.name, v1=end.shear1, v2=end.shear2, axial=end.axial
            )
        )
    if not records:
        logger.warning(f"Case '{result.case.name}' produced no bolt shear records")
    return records


def records_from_rows(rows: Iterable[BeamForceRow], case: str) -> List[BoltShearRecord]:
    return [BoltShearRecord(r.element_id, case, r.v1, r.v2, r.axial) for r in rows]


def records_to_punch(
    cases: Sequence[Tuple[int, Sequence[BoltShearRecord]]],
    descriptor: FormatDescriptor,
    title: Optional[str] = None,
) -> PunchDocument:
    """Punch document with one subcase block per (subcase id, records); unshared values are 0"""
    v1_name, v2_name = descriptor.shears()
    axial_name = descriptor.axial()
    blocks = []
    for subcase, records in cases:
        punch_records = []
        for record in sorted(records, key=lambda r: r.element_id):
            values = {name: 0.0 for name in descriptor.names}
            values[v1_name] = record.v1
            values[v2_name] = record.v2
            if axial_name:
                values[axial_name] = record.axial
            punch_records.append(
                PunchRecord(record.element_id, tuple((n, values[n]) for n in descriptor.names))
            )
        label = records[0].case if records else None
        blocks.append(
            PunchBlock(
                title=title,
                label=label,
                kind=descriptor.kind,
                subcase=subcase,
                records=tuple(punch_records),
            )
        )
    return PunchDocument(blocks=tuple(blocks))


def load_annotations(text: str) -> FrozenSet[Tuple[str, str]]:
    """Observed loosening from ``LOOSE,<group>,<case>`` lines; '#' starts a comment"""
    flags = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        fields = [f.strip() for f in content.split(",")]
        if len(fields) != 3 or fields[0].upper() != "LOOSE" or not fields[1] or not fields[2]:
            raise InputError(f"annotations line {lineno}: expected LOOSE,<group>,<case>")
        flags.add((fields[1], fields[2]))
    return frozenset(flags)


def miles_scaled_case(
    case: LoadCase, f_n: float, q: float, profile: PsdProfile, sigma: float = 3.0
) -> LoadCase:
    """Case with the same direction whose magnitude is `sigma` × the Miles rms acceleration"""
    magnitude = math.sqrt(sum(g * g for g in case.accel_g))
    if magnitude == 0:
        raise InputError(f"load case '{case.name}' has no acceleration to scale")
    target = sigma * miles_acceleration(f_n, q, profile)
    return case.scaled(target / magnitude)


class StackItem(BaseModel):
    name: str
    thickness: float = Field(ge=0, description="mm")


class StackUp(BaseModel):
    """Bolt length rule inputs for one fastening position (all lengths in mm)"""

    name: str = "bolt"
    bolt_length: float = Field(gt=0, description="Length under head")
    items: List[StackItem] = Field(default_factory=list)
    helicoil_length: float = Field(default=8.0, gt=0, description="Insert female thread length")
    tapped_depth: float = Field(gt=0, description="Available tapped depth")
    margin: float = Field(default=4.0, ge=0, description="Required engagement beyond the insert")

    @property
    def stack_thickness(self) -> float:
        return sum(item.thickness for item in self.items)


@dataclass(frozen=True)
class StackUpResult:
    name: str
    engaged_length: float
    required_length: float
    tapped_depth: float
    findings: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.findings

    @property
    def margin(self) -> float:
        return self.engaged_length - self.required_length


def stackup_check(stack: StackUp) -> StackUpResult:
    """Engaged length must exceed insert + margin and fit the tapped depth"""
    engaged = stack.bolt_length - stack.stack_thickness
    required = stack.helicoil_length + stack.margin
    findings = []
    if not engaged > required:
        findings.append(
            f"engaged length {engaged:.2f} mm does not exceed "
            f"helicoil {stack.helicoil_length:.2f} mm "
            f"+ {stack.margin:.2f} mm margin"
        )
    if engaged > stack.tapped_depth:
        findings.append(
            f"bolt cannot be fully inserted: engaged length {engaged:.2f} mm exceeds "
            f"available tapped depth {stack.tapped_depth:.2f} mm"
        )
    return StackUpResult(
        name=stack.name,
        engaged_length=engaged,
        required_length=required,
        tapped_depth=stack.tapped_depth,
        findings=tuple(findings),
    )
