# vibrakit/cli/commands/modal.py

from pathlib import Path
from typing import List, Optional

import typer

from ...analysis.jig import jig_study
from ...analysis.modal import check_min_frequency, normal_modes
from ...errors import InputError
from ...reports.tables import jig_table, modal_table
from ..context import AnalysisContext, OutputFormat, fail, handle_errors


@handle_errors
def modal(
    deck: Path = typer.Option(..., "--deck", "-d", help="Model deck"),
    constraint: List[str] = typer.Option(
        ...,
        "--constraint",
        "-c",
        help="Constraint set; give two (e.g. A and C) for a per-mode delta column",
    ),
    modes: int = typer.Option(10, "--modes", "-n", min=1, help="Number of lowest modes to solve"),
    floor_hz: Optional[float] = typer.Option(
        None,
        "--floor-hz",
        help="Minimum first natural frequency [default 60 Hz: launch-vehicle rule]",
    ),
    mass_floor: Optional[float] = typer.Option(
        None,
        "--mass-floor",
        help="List only modes whose largest effective mass exceeds this many kg [default 0: all]",
    ),
    drop_group: Optional[List[str]] = typer.Option(
        None,
        "--drop-group",
        help="Remove the bolt connectors of this group before solving (repeatable)",
    ),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="Report format"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report to a file"),
):
    """Normal modes with effective mass and the first-frequency requirement"""
    ctx = AnalysisContext()
    run = ctx.run_config(
        thresholds={'floor_hz': floor_hz, 'effective_mass_floor_kg': mass_floor},
        deck=deck,
        constraints=constraint,
        modes=modes,
        output_format=fmt,
        out=out,
    )
    if len(run.constraints) > 2:
        raise InputError("at most two constraint sets can be compared")

    assert run.deck is not None
    model = ctx.load_model(run.deck)
    if drop_group:
        removed = [eid for label in drop_group for eid in model.group(label).members]
        model = model.without_elements(removed)

    th = run.thresholds
    results = [
        normal_modes(
            model,
            name,
            n_modes=run.modes,
            dominance_ratio=th.dominance_ratio,
            drilling_factor=run.solver.drilling_factor,
            max_dof=ctx.max_dof,
        )
        for name in run.constraints
    ]
    checks = [check_min_frequency(result, th.floor_hz) for result in results]
    ctx.emit(run, modal_table(results, checks, th.effective_mass_floor_kg).render(run.fmt))

    failed = [(r, c) for r, c in zip(results, checks) if not c.passed]
    if failed:
        result, check = failed[0]
        fail(
            f"first natural frequency {check.value:.2f} Hz under '{result.constraint}' "
            f"is below the {check.limit:g} Hz floor"
        )


@handle_errors
def jig(
    deck: List[Path] = typer.Option(
        ..., "--deck", "-d", help="Jig deck with the article mass (repeatable)"
    ),
    article_f1: float = typer.Option(
        ..., "--article-f1", help="First natural frequency of the test article, Hz"
    ),
    constraint: Optional[str] = typer.Option(
        None, "--constraint", "-c", help="Constraint set [default: first set in each deck]"
    ),
    axis: str = typer.Option("Z", "--axis", help="Excitation axis used to pick the governing mode"),
    separation: Optional[float] = typer.Option(
        None,
        "--separation",
        help="Minimum jig/article frequency ratio [default 2: jig f1 twice the article f1]",
    ),
    handling_limit: Optional[float] = typer.Option(
        None,
        "--handling-limit",
        help="Largest jig mass for one-person handling, kg [default 22.5: 90% of a 25 kg lift]",
    ),
    modes: int = typer.Option(10, "--modes", "-n", min=1, help="Number of lowest modes to solve"),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="Report format"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report to a file"),
):
    """Jig design check: f1, governing mode, frequency separation, handling mass"""
    ctx = AnalysisContext()
    run = ctx.run_config(
        thresholds={'separation_ratio': separation, 'handling_mass_kg': handling_limit},
        inputs={f"deck {i + 1}": path for i, path in enumerate(deck)},
        modes=modes,
        output_format=fmt,
        out=out,
    )
    th = run.thresholds
    studies = []
    for path in deck:
        model = ctx.load_model(path)
        if not model.constraints:
            raise InputError(f"{path}: deck defines no constraint set")
        studies.append(
            jig_study(
                model,
                constraint or model.constraints[0].name,
                article_f1,
                axis=axis,
                n_modes=run.modes,
                min_ratio=th.separation_ratio,
                handling_limit_kg=th.handling_mass_kg,
                drilling_factor=run.solver.drilling_factor,
            )
        )
    ctx.emit(run, jig_table(studies).render(run.fmt))

    failed = [s for s in studies if not s.passed]
    if failed:
        s = failed[0]
        reasons = []
        if not s.separation.passed:
            reasons.append(f"frequency ratio {s.separation.ratio:.2f} < {s.separation.min_ratio:g}")
        if not s.handling.passed:
            reasons.append(f"mass {s.handling.mass:.2f} kg > {s.handling.limit:g} kg")
        fail(f"jig under '{s.constraint}' fails: {', '.join(reasons)}")
