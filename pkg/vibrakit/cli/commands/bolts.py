# vibrakit/cli/commands/bolts.py

from importlib import resources
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import typer

from ...analysis.bolts import (
    BoltGroupReport,
    BoltShearRecord,
    bolt_shear_records,
    group_max_shear,
    miles_scaled_case,
    records_from_rows,
    records_to_punch,
    stackup_check,
)
from ...analysis.static import SafetyFactors, run_static_cases
from ...core.model.types import BoltGroupDef, Model
from ...errors import InputError
from ...io.inputs import load_annotations_file, load_groups_file, load_psd_profile, load_stackups
from ...io.punch import (
    FormatDescriptor,
    extract_beam_forces,
    load_descriptor,
    parse_descriptor,
    read_punch_file,
    write_punch,
)
from ...reports.tables import bolt_group_table, stackup_table
from ...utils.logging import get_logger
from ..context import AnalysisContext, OutputFormat, RunConfig, err_console, fail, handle_errors

logger = get_logger('cli.bolts')

CaseRecords = Tuple[str, List[BoltShearRecord]]


def default_descriptor() -> FormatDescriptor:
    """Beam-force layout shipped with the package"""
    text = resources.files("vibrakit.data").joinpath("descriptors/beam_force.desc").read_text()
    return parse_descriptor(text)


def _groups(run: RunConfig, model: Optional[Model]) -> List[BoltGroupDef]:
    path = run.inputs.get("groups file")
    if path is not None:
        groups = load_groups_file(path, model)
    elif model is not None:
        groups = list(model.groups)
    else:
        groups = []
    if not groups:
        raise InputError("no bolt groups: give --groups or a deck with GROUP cards")
    return groups


def _from_punch(
    run: RunConfig, descriptor: FormatDescriptor, subcases: Sequence[int]
) -> List[CaseRecords]:
    doc = read_punch_file(run.inputs["punch file"], descriptor)
    wanted = list(subcases) or [b.subcase for b in doc.blocks if b.subcase is not None]
    if not wanted:
        raise InputError("punch file has no SUBCASE blocks")
    cases = []
    for subcase in wanted:
        extraction = extract_beam_forces(doc, subcase, descriptor)
        for warning in extraction.warnings:
            err_console.print(f"[yellow]![/yellow] {warning}")
        name = doc.block(subcase).label or f"SC{subcase}"
        cases.append((name, records_from_rows(extraction.forces, name)))
    return cases


def _from_deck(
    ctx: AnalysisContext,
    run: RunConfig,
    model: Model,
    miles: Optional[Tuple[float, float]],
) -> List[CaseRecords]:
    if not run.constraints:
        raise InputError("--constraint is required when solving a deck")
    names = run.cases or [c.name for c in model.load_cases]
    if not names:
        raise InputError(f"{run.deck}: deck defines no load cases")
    cases = [model.load_case(name) for name in names]
    if miles is not None:
        f_n, q = miles
        profile = load_psd_profile(run.inputs["PSD profile"])
        cases = [miles_scaled_case(c, f_n, q, profile) for c in cases]
        logger.info(f"Cases scaled to 3-sigma Miles level at {f_n:g} Hz, Q = {q:g}")
    results = run_static_cases(
        model,
        run.constraints[0],
        cases,
        SafetyFactors.from_thresholds(run.thresholds),
        workers=run.solver.workers,
        drilling_factor=run.solver.drilling_factor,
        max_dof=ctx.max_dof,
    )
    return [(r.case.name, bolt_shear_records(r)) for r in results]


@handle_errors
def boltshear(
    deck: Optional[Path] = typer.Option(None, "--deck", "-d", help="Model deck to solve"),
    constraint: Optional[str] = typer.Option(
        None, "--constraint", "-c", help="Constraint set for the deck solve"
    ),
    case: Optional[List[str]] = typer.Option(
        None, "--case", help="Load case (repeatable) [default: every case in the deck]"
    ),
    punch: Optional[Path] = typer.Option(
        None, "--punch", help="Read solved beam forces from a punch file instead of solving"
    ),
    descriptor: Optional[Path] = typer.Option(
        None, "--descriptor", help="Punch record layout (required with --punch)"
    ),
    subcase: Optional[List[int]] = typer.Option(
        None, "--subcase", help="Punch subcase to read (repeatable) [default: all]"
    ),
    groups: Optional[Path] = typer.Option(
        None, "--groups", help="GROUP cards naming the bolt rows [default: the deck's groups]"
    ),
    annotations: Optional[Path] = typer.Option(
        None, "--annotations", help="Observed loosening, one LOOSE,<group>,<case> line each"
    ),
    fn: Optional[float] = typer.Option(
        None,
        "--fn",
        help="Scale each case to the 3-sigma Miles level at this natural frequency, Hz",
    ),
    q: Optional[float] = typer.Option(
        None, "--q", help="Resonance amplification for --fn [default 10]"
    ),
    psd: Optional[Path] = typer.Option(None, "--psd", help="Input PSD profile for --fn"),
    write_punch_to: Optional[Path] = typer.Option(
        None, "--write-punch", help="Also export the solved bolt forces as a punch file"
    ),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="Report format"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report to a file"),
):
    """Maximum SRSS bolt shear per group and loosening-risk ranking"""
    ctx = AnalysisContext()
    run = ctx.run_config(
        thresholds={'q': q},
        inputs={
            "punch file": punch,
            "descriptor": descriptor,
            "groups file": groups,
            "annotations file": annotations,
            "PSD profile": psd,
        },
        deck=deck,
        constraints=[constraint] if constraint else [],
        cases=case or [],
        output_format=fmt,
        out=out,
    )

    model = ctx.load_model(run.deck) if run.deck is not None else None
    layout = load_descriptor(run.inputs["descriptor"]) if descriptor else None

    if punch is not None:
        if layout is None:
            raise InputError("--punch needs --descriptor to name the force columns")
        if fn is not None:
            raise InputError("--fn scales deck load cases and cannot be combined with --punch")
        cases = _from_punch(run, layout, subcase or [])
    else:
        if model is None:
            raise InputError("give --deck (solve) or --punch with --descriptor")
        miles = None
        if fn is not None:
            if psd is None:
                raise InputError("--fn needs --psd")
            miles = (fn, run.thresholds.q)
        cases = _from_deck(ctx, run, model, miles)
        if write_punch_to is not None:
            export = layout or default_descriptor()
            numbered = [(i + 1, records) for i, (_, records) in enumerate(cases)]
            doc = records_to_punch(numbered, export)
            write_punch_to.write_text(write_punch(doc, export), encoding="ascii")
            err_console.print(f"[green]✓[/green] Bolt forces written to {write_punch_to}")

    bolt_groups = _groups(run, model)
    reports: List[BoltGroupReport] = [
        group_max_shear(records, bolt_groups, name) for name, records in cases
    ]
    observed = load_annotations_file(run.inputs["annotations file"]) if annotations else frozenset()
    ctx.emit(run, bolt_group_table(reports, observed).render(run.fmt))


@handle_errors
def boltcheck(
    stackup: Path = typer.Option(
        ..., "--stackup", "-s", help="Stack-up YAML with one entry per position"
    ),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="Report format"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report to a file"),
):
    """Bolt length rule: engagement beyond the helicoil plus 4 mm, within the tapped depth"""
    ctx = AnalysisContext()
    run = ctx.run_config(inputs={"stack-up file": stackup}, output_format=fmt, out=out)
    results = [stackup_check(s) for s in load_stackups(run.inputs["stack-up file"])]
    ctx.emit(run, stackup_table(results).render(run.fmt))

    failed = [r for r in results if not r.passed]
    if failed:
        names = ", ".join(r.name for r in failed)
        fail(f"{len(failed)} bolt position(s) fail the stack-up rule: {names}")
