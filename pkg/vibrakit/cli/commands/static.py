# vibrakit/cli/commands/static.py

from pathlib import Path
from typing import List, Optional

import typer

from ...analysis.static import (
    SafetyFactors,
    margin_of_safety,
    run_static_cases,
    stress_ratio_check,
)
from ...core.model.types import Material
from ...errors import InputError
from ...reports.tables import MarginRow, margins_table
from ..context import AnalysisContext, OutputFormat, fail, handle_errors


def _ms(value: Optional[float]) -> str:
    return "unbounded" if value is None else f"{value:.2f}"


def _override_rows(
    smax: List[float], labels: List[str], f_ty: float, f_tu: float, factors: SafetyFactors
) -> List[MarginRow]:
    if labels and len(labels) != len(smax):
        raise InputError(f"{len(labels)} --case label(s) for {len(smax)} --smax value(s)")
    if not 0 < f_ty <= f_tu:
        raise InputError(f"limits must satisfy 0 < F_ty <= F_tu (got {f_ty}, {f_tu} MPa)")
    material = Material(id=0, E=1.0, nu=0.0, rho=0.0, F_ty=f_ty * 1e6, F_tu=f_tu * 1e6)
    rows = []
    for i, value in enumerate(smax):
        if value < 0:
            raise InputError(f"S_max cannot be negative, got {value} MPa")
        s = value * 1e6
        rows.append(
            MarginRow(
                label=labels[i] if labels else f"S{i + 1}",
                s_max=s,
                material=material,
                margins=margin_of_safety(s, material, factors),
                ratio=stress_ratio_check(s, material.F_tu, factors.ratio_limit),
            )
        )
    return rows


@handle_errors
def static(
    deck: Optional[Path] = typer.Option(None, "--deck", "-d", help="Model deck"),
    constraint: Optional[str] = typer.Option(
        None, "--constraint", "-c", help="Constraint set for the static cases (e.g. B)"
    ),
    case: Optional[List[str]] = typer.Option(
        None, "--case", help="Load case to run (repeatable) [default: every case in the deck]"
    ),
    smax: Optional[List[float]] = typer.Option(
        None,
        "--smax",
        help="Skip the solve and evaluate this S_max in MPa (repeatable; --case labels the rows)",
    ),
    f_ty: float = typer.Option(385.0, "--fty", help="Yield strength for --smax, MPa [A7075-T7351]"),
    f_tu: float = typer.Option(
        460.0, "--ftu", help="Ultimate strength for --smax, MPa [A7075-T7351]"
    ),
    fs_yield: Optional[float] = typer.Option(
        None, "--fs-yield", help="Yield factor of safety [default 1.5]"
    ),
    fs_ultimate: Optional[float] = typer.Option(
        None, "--fs-ultimate", help="Ultimate factor of safety [default 2.0]"
    ),
    ratio_limit: Optional[float] = typer.Option(
        None,
        "--ratio-limit",
        help="S_max/F_tu must stay strictly below this [default 0.30: within 30% of ultimate]",
    ),
    workers: Optional[int] = typer.Option(
        None, "--workers", min=1, help="Threads for independent cases"
    ),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="Report format"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report to a file"),
):
    """Static acceleration cases with yield/ultimate margins of safety"""
    ctx = AnalysisContext()
    run = ctx.run_config(
        thresholds={'fs_yield': fs_yield, 'fs_ultimate': fs_ultimate, 'ratio_limit': ratio_limit},
        solver={'workers': workers},
        deck=deck,
        constraints=[constraint] if constraint else [],
        cases=case or [],
        output_format=fmt,
        out=out,
    )
    factors = SafetyFactors.from_thresholds(run.thresholds)

    if smax:
        rows = _override_rows(list(smax), run.cases, f_ty, f_tu, factors)
        title = constraint or "override"
    else:
        if run.deck is None:
            raise InputError("give --deck (with --constraint) or --smax")
        if not run.constraints:
            raise InputError("--constraint is required when solving a deck")
        model = ctx.load_model(run.deck)
        names = run.cases or [c.name for c in model.load_cases]
        if not names:
            raise InputError(f"{run.deck}: deck defines no load cases")
        results = run_static_cases(
            model,
            run.constraints[0],
            names,
            factors,
            workers=run.solver.workers,
            drilling_factor=run.solver.drilling_factor,
            max_dof=ctx.max_dof,
        )
        rows = [MarginRow.from_result(r) for r in results]
        title = run.constraints[0]

    ctx.emit(run, margins_table(rows, title).render(run.fmt))

    failed = [row for row in rows if not row.passed]
    if failed:
        row = failed[0]
        fail(
            f"case '{row.label}' fails: S_max/F_tu = {row.ratio.percent:.1f}% "
            f"(limit below {100 * row.ratio.limit:.1f}%), MS yield {_ms(row.margins.ms_ty)}, "
            f"MS ult {_ms(row.margins.ms_tu)}"
        )
