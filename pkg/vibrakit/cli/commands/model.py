# vibrakit/cli/commands/model.py

from pathlib import Path
from typing import Optional, Tuple

import typer

from ...core.model import load_deck, validate_model
from ...core.panels import (
    match_equivalent_thickness,
    panel_equivalent,
    panel_first_frequency,
    shell_mass_and_area,
)
from ...errors import InputError
from ...reports.tables import scalar_csv, simplify_table
from ..context import EXIT_INPUT, AnalysisContext, OutputFormat, fail, handle_errors, report_console


@handle_errors
def validate(
    deck: Path = typer.Option(..., "--deck", "-d", help="Model deck to check"),
):
    """Parse a deck and list every validation finding"""
    ctx = AnalysisContext()
    run = ctx.run_config(deck=deck)
    assert run.deck is not None
    model = load_deck(run.deck)
    report = validate_model(model)

    lines = [
        f"Deck {run.deck.name}: {len(model.nodes)} nodes, {len(model.beams)} beams, "
        f"{len(model.shells)} shells, {len(model.masses)} point masses, "
        f"{len(model.rigid_links)} rigid links",
        f"Constraint sets: {', '.join(cs.name for cs in model.constraints) or 'none'}",
        f"Load cases: {', '.join(c.name for c in model.load_cases) or 'none'}",
        f"Bolt groups: {', '.join(g.label for g in model.groups) or 'none'}",
        f"Mass: {model.total_mass():.4f} kg ({model.structural_mass():.4f} kg structural)",
    ]
    lines.extend(str(finding) for finding in report)
    lines.append(f"{len(report.errors)} error(s), {len(report) - len(report.errors)} warning(s)")
    report_console.print("\n".join(lines))

    if not report.ok:
        fail(f"{run.deck} has {len(report.errors)} validation error(s)", EXIT_INPUT)


@handle_errors
def simplify(
    real_mass: float = typer.Option(..., "--real-mass", help="Mass of the real panel, g"),
    component_mass: float = typer.Option(
        0.0, "--component-mass", help="Mass of mounted components, g"
    ),
    area: float = typer.Option(..., "--area", help="Panel area, mm²"),
    thickness: float = typer.Option(..., "--thickness", help="Simplified skin thickness, mm"),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="Report format"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report to a file"),
):
    """Dummy density of a simplified panel carrying the real + component mass"""
    ctx = AnalysisContext()
    run = ctx.run_config(output_format=fmt, out=out)
    equivalent = panel_equivalent(
        real_mass * 1e-3, component_mass * 1e-3, area * 1e-6, thickness * 1e-3
    )
    ctx.emit(run, simplify_table(equivalent).render(run.fmt))


@handle_errors
def thickness(
    deck: Path = typer.Option(..., "--deck", "-d", help="Panel template deck (shell skin)"),
    target_f1: float = typer.Option(
        ..., "--target-f1", help="Measured local first frequency to match, Hz"
    ),
    bounds: Tuple[float, float] = typer.Option(
        (0.5, 10.0), "--bounds", help="Thickness search bracket: LOW HIGH in mm"
    ),
    tol: float = typer.Option(0.1, "--tol", help="Frequency tolerance, Hz"),
    constraint: Optional[str] = typer.Option(
        None, "--constraint", "-c", help="Constraint set [default: first set in the deck]"
    ),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="Report format"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report to a file"),
):
    """Skin thickness whose f1 matches a measured panel frequency, mass held constant"""
    ctx = AnalysisContext()
    run = ctx.run_config(deck=deck, output_format=fmt, out=out)
    if tol <= 0 or target_f1 <= 0:
        raise InputError("--target-f1 and --tol must be positive")
    assert run.deck is not None
    template = ctx.load_model(run.deck)
    if not template.shells:
        raise InputError(f"{run.deck}: a panel template needs shell elements")
    name = constraint or (template.constraints[0].name if template.constraints else None)
    if name is None:
        raise InputError(f"{run.deck}: deck defines no constraint set")

    lo, hi = bounds[0] * 1e-3, bounds[1] * 1e-3
    t = match_equivalent_thickness(
        target_f1, template, (lo, hi), tol, constraint=name, max_iter=run.solver.thickness_max_iter
    )
    shell_mass, shell_area = shell_mass_and_area(template)
    f1 = panel_first_frequency(template, t, constraint=name, shell_mass=shell_mass)
    density = shell_mass / (shell_area * t)

    if run.fmt == "csv":
        text = scalar_csv(
            {"thickness_m": t, "density_kg_m3": density, "f1_hz": f1, "target_f1_hz": target_f1}
        )
    else:
        text = (
            f"Equivalent thickness under '{name}' = {t * 1e3:.4f} mm "
            f"(density {density * 1e-3:.4f} g/cc, f1 = {f1:.2f} Hz, "
            f"target {target_f1:.2f} ± {tol:g} Hz)\n"
        )
    ctx.emit(run, text)
