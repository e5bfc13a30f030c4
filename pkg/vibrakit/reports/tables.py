# vibrakit/reports/tables.py
"""
Fixed-column text reports shaped like the verification tables, each with a
CSV twin. Row cells hold SI values; text columns scale and round them, CSV
writes them at full precision.
"""

import csv
import io
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..analysis.bolts import BoltGroupReport, StackUpResult, rank_loosening_risk
from ..analysis.jig import JigStudy
from ..analysis.modal import AXES, ModalResult, RequirementCheck, compare_conditions, filter_modes
from ..analysis.static import MarginResult, RatioCheck, StaticResult
from ..core.model.types import Material, PanelEquivalent
from ..vibration.psd import MagnificationRow

PASS = "PASS"
FAIL = "FAIL"


def verdict(passed: bool) -> str:
    return PASS if passed else FAIL


@dataclass
class Column:
    header: str
    width: int
    decimals: Optional[int] = None
    scale: float = 1.0  # text only
    align: str = ">"
    key: Optional[str] = None  # CSV header; defaults to the text header
    missing: str = "-"

    @property
    def csv_key(self) -> str:
        return self.key or self.header

    def text(self, value: Any) -> str:
        if value is None:
            return self.missing
        if isinstance(value, bool):
            return verdict(value)
        if isinstance(value, (int, float)) and self.decimals is not None:
            return f"{value * self.scale:.{self.decimals}f}"
        return str(value)


@dataclass
class Table:
    title: str
    columns: List[Column]
    rows: List[List[Any]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add_row(self, *values: Any):
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} cells, table has {len(self.columns)} columns")
        self.rows.append(list(values))

    def render_text(self) -> str:
        header = " ".join(f"{c.header:{c.align}{c.width}}" for c in self.columns)
        lines = [self.title, header, "-" * len(header)]
        for row in self.rows:
            cells = (f"{c.text(v):{c.align}{c.width}}" for c, v in zip(self.columns, row))
            lines.append(" ".join(cells).rstrip())
        lines.extend(self.notes)
        return "\n".join(lines) + "\n"

    def render_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([c.csv_key for c in self.columns])
        for row in self.rows:
            writer.writerow([_csv_cell(v) for v in row])
        return buffer.getvalue()

    def render(self, fmt: str) -> str:
        return self.render_csv() if fmt == "csv" else self.render_text()


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return verdict(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_tables(tables: Sequence[Table], fmt: str) -> str:
    """Text tables separated by a blank line; CSV tables concatenated"""
    joiner = "" if fmt == "csv" else "\n"
    return joiner.join(t.render(fmt) for t in tables)


def modal_table(
    results: Sequence[ModalResult],
    checks: Sequence[RequirementCheck] = (),
    mass_floor_kg: float = 0.0,
) -> Table:
    """Frequencies under one or two constraint conditions with the first one's effective masses"""
    first = results[0]
    columns = [Column("Mode", 4, key="mode")]
    for result in results:
        name = result.constraint
        columns.append(Column(f"f[{name}] (Hz)", 14, 2, key=f"f_{name}_hz"))
    paired = len(results) == 2
    if paired:
        columns.append(Column("Delta (%)", 9, 2, key="delta_percent"))
    columns += [
        Column("Meff X (kg)", 11, 3, key="meff_x_kg"),
        Column("Meff Y (kg)", 11, 3, key="meff_y_kg"),
        Column("Meff Z (kg)", 11, 3, key="meff_z_kg"),
        Column("Axis", 6, key="axis"),
    ]
    names = " / ".join(r.constraint for r in results)
    table = Table(
        f"Normal modes under constraint {names} (effective mass: {first.constraint})", columns
    )

    deltas = {}
    if paired:
        deltas = {d.index: d.delta_percent for d in compare_conditions(results[0], results[1])}
    for mode in filter_modes(first, mass_floor_kg):
        row: List[Any] = [mode.index]
        for result in results:
            solved = mode.index <= len(result.modes)
            row.append(result.modes[mode.index - 1].frequency if solved else None)
        if paired:
            row.append(deltas.get(mode.index))
        row += [*mode.effective_mass, mode.axis]
        table.add_row(*row)

    if mass_floor_kg > 0:
        table.notes.append(f"Modes listed: largest effective mass > {mass_floor_kg:g} kg")
    for result in results:
        sums = result.effective_mass_sums()
        table.notes.append(
            f"[{result.constraint}] effective mass sum X/Y/Z: "
            f"{sums[0]:.3f} / {sums[1]:.3f} / {sums[2]:.3f} kg of {result.total_mass[0]:.3f} kg"
        )
    for result, check in zip(results, checks):
        relation = ">=" if check.passed else "<"
        table.notes.append(
            f"[{result.constraint}] f1 = {check.value:.2f} Hz {relation} "
            f"{check.limit:.2f} Hz floor: "
            f"{verdict(check.passed)} (margin {check.margin:+.2f} Hz)"
        )
    return table


@dataclass(frozen=True)
class MarginRow:
    label: str
    s_max: float  # Pa
    material: Material
    margins: MarginResult
    ratio: RatioCheck
    location: Optional[str] = None

    @classmethod
    def from_result(cls, result: StaticResult) -> "MarginRow":
        loc = result.location
        return cls(
            label=result.case.name,
            s_max=result.s_max,
            material=result.material,
            margins=result.margins,
            ratio=result.ratio,
            location=f"{loc.element_id}/{loc.surface}",
        )

    @property
    def passed(self) -> bool:
        return self.margins.passed and self.ratio.passed


def margins_table(rows: Sequence[MarginRow], constraint: str) -> Table:
    table = Table(
        f"Margins of safety under constraint {constraint}",
        [
            Column("Case", 10, align="<", key="case"),
            Column("S_max (MPa)", 11, 1, 1e-6, key="s_max_pa"),
            Column("F_ty (MPa)", 10, 0, 1e-6, key="f_ty_pa"),
            Column("F_tu (MPa)", 10, 0, 1e-6, key="f_tu_pa"),
            Column("MS yield", 10, 2, key="ms_yield", missing="unbounded"),
            Column("MS ult", 10, 2, key="ms_ultimate", missing="unbounded"),
            Column("Ratio (%)", 9, 1, 100.0, key="ratio"),
            Column("Result", 6, key="result"),
            Column("Element", 12, align="<", key="location"),
        ],
    )
    for row in rows:
        table.add_row(
            row.label,
            row.s_max,
            row.material.F_ty,
            row.material.F_tu,
            row.margins.ms_ty,
            row.margins.ms_tu,
            row.ratio.ratio,
            row.passed,
            row.location,
        )
    if rows:
        limit = rows[0].ratio.limit
        table.notes.append(f"Requirement: S_max/F_tu < {100 * limit:.1f}% and non-negative margins")
    return table


def bolt_group_table(
    reports: Sequence[BoltGroupReport],
    observed: FrozenSet[Tuple[str, str]] = frozenset(),
) -> Table:
    """Group rows with the max SRSS shear per case and observed-loosening marks"""
    columns = [Column("Group", 8, align="<", key="group"), Column("Bolts", 5, key="bolts")]
    for report in reports:
        columns.append(Column(f"{report.case} max (N)", 14, 1, key=f"{report.case}_max_shear_n"))
        columns.append(Column("L", 1, key=f"{report.case}_loose", missing=""))
    table = Table("Shear forces in bolt groups (L: loosening observed)", columns)
    if not reports:
        return table
    for i, base in enumerate(reports[0].rows):
        row: List[Any] = [base.label, base.bolt_count]
        for report in reports:
            group = report.rows[i]
            row += [group.max_shear, "L" if (group.label, report.case) in observed else None]
        table.add_row(*row)
    for report in reports:
        ranking = ", ".join(f"{g.label} ({g.max_shear:.1f} N)" for g in rank_loosening_risk(report))
        table.notes.append(
            f"Loosening-risk ranking [{report.case}] (heuristic, by max shear): {ranking}"
        )
    return table


def stackup_table(results: Sequence[StackUpResult]) -> Table:
    table = Table(
        "Bolt stack-up check",
        [
            Column("Position", 12, align="<", key="position"),
            Column("Engaged (mm)", 12, 2, key="engaged_mm"),
            Column("Required (mm)", 13, 2, key="required_mm"),
            Column("Tapped (mm)", 11, 2, key="tapped_mm"),
            Column("Margin (mm)", 11, 2, key="margin_mm"),
            Column("Result", 6, key="result"),
        ],
    )
    for r in results:
        table.add_row(
            r.name, r.engaged_length, r.required_length, r.tapped_depth, r.margin, r.passed
        )
        for finding in r.findings:
            table.notes.append(f"{r.name}: {finding}")
    return table


def simplify_table(equivalent: PanelEquivalent) -> Table:
    table = Table(
        "Simplified panel equivalent density",
        [
            Column("Real (g)", 10, 1, 1e3, key="real_mass_kg"),
            Column("Component (g)", 13, 1, 1e3, key="component_mass_kg"),
            Column("Total (g)", 10, 1, 1e3, key="total_mass_kg"),
            Column("Density (g/cc)", 14, 3, 1e-3, key="density_kg_m3"),
            Column("Check (g)", 10, 1, 1e3, key="reconstructed_mass_kg"),
            Column("Error (%)", 9, 4, 100.0, key="mass_error"),
        ],
    )
    table.add_row(
        equivalent.real_mass,
        equivalent.component_mass,
        equivalent.total_mass,
        equivalent.density,
        equivalent.reconstructed_mass,
        equivalent.mass_error(),
    )
    return table


def magnification_table(rows: Sequence[MagnificationRow]) -> Table:
    convention = rows[0].result.convention if rows else "psd"
    table = Table(
        f"Peak frequencies and response magnifications ({convention} ratio)",
        [
            Column("Axis", 5, align="<", key="axis"),
            Column("Modal f (Hz)", 12, 1, key="modal_hz"),
            Column("Test f (Hz)", 11, 1, key="test_hz"),
            Column("PSD (G2/Hz)", 11, 3, key="sensor_psd"),
            Column("Ref (G2/Hz)", 11, 4, key="reference_psd"),
            Column("Mag", 6, 1, key="magnification"),
        ],
    )
    for row in rows:
        r = row.result
        table.add_row(
            row.axis,
            row.modal_frequency,
            r.peak_frequency,
            r.sensor_psd,
            r.reference_psd,
            r.magnification,
        )
    return table


def jig_table(studies: Sequence[JigStudy]) -> Table:
    table = Table(
        "Jig frequency separation and handling mass",
        [
            Column("Constraint", 10, align="<", key="constraint"),
            Column("f1 (Hz)", 8, 1, key="f1_hz"),
            Column("Gov. mode", 9, key="governing_mode"),
            Column("f (Hz)", 8, 1, key="governing_hz"),
            Column("Meff (kg)", 9, 2, key="governing_meff_kg"),
            Column("Ratio", 6, 2, key="separation_ratio"),
            Column("Sep.", 4, key="separation"),
            Column("Jig (kg)", 8, 2, key="jig_mass_kg"),
            Column("Hand.", 5, key="handling"),
        ],
    )
    for s in studies:
        k = AXES.index(s.axis)
        table.add_row(
            s.constraint,
            s.first_frequency,
            s.governing_mode.index,
            s.governing_mode.frequency,
            s.governing_mode.effective_mass[k],
            s.separation.ratio,
            s.separation.passed,
            s.handling.mass,
            s.handling.passed,
        )
    if studies:
        s = studies[0]
        table.notes.append(
            f"Governing mode: largest {s.axis} effective mass; "
            f"separation >= {s.separation.min_ratio:g} against article f1 "
            f"{s.separation.f_article:g} Hz; handling limit {s.handling.limit:g} kg"
        )
    return table


def scalar_csv(values: Dict[str, float]) -> str:
    """quantity,value rows at full precision"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["quantity", "value"])
    for name, value in values.items():
        writer.writerow([name, repr(float(value))])
    return buffer.getvalue()
