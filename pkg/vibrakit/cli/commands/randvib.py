# vibrakit/cli/commands/randvib.py

from pathlib import Path
from typing import List, Optional, Tuple

import typer

from ...errors import InputError
from ...io.inputs import load_psd_curve, load_psd_profile
from ...reports.tables import magnification_table, scalar_csv
from ...vibration.psd import (
    grms,
    magnification_row,
    miles_acceleration,
    scale_to_grms,
    slope_db_per_octave,
    three_sigma,
)
from ..context import AnalysisContext, OutputFormat, handle_errors

app = typer.Typer()


@app.command(name="grms")
@handle_errors
def grms_command(
    psd: Path = typer.Option(..., "--psd", help="PSD profile: frequency Hz, G²/Hz breakpoints"),
    target_grms: Optional[float] = typer.Option(
        None, "--target-grms", help="Rescale the profile shape to this overall level (e.g. 4.42)"
    ),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="Report format"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report to a file"),
):
    """Overall Grms of a PSD profile"""
    ctx = AnalysisContext()
    run = ctx.run_config(inputs={"PSD profile": psd}, output_format=fmt, out=out)
    profile = load_psd_profile(run.inputs["PSD profile"])
    level = grms(profile)
    values = {"grms": level}

    lines = [f"Grms = {level:.4f}"]
    for f1, p1, f2, p2, _ in profile.segments():
        slope = slope_db_per_octave(f1, p1, f2, p2)
        lines.append(f"  {f1:g}-{f2:g} Hz: {slope:+.2f} dB/oct")
    if target_grms is not None:
        scaled = scale_to_grms(profile, target_grms)
        factor = scaled.psd[0] / profile.psd[0]
        values["target_grms"] = target_grms
        values["scale_factor"] = factor
        lines.append(f"Scaled to {target_grms:.4f} Grms (PSD x {factor:.6g}):")
        for f, p in zip(scaled.frequencies, scaled.psd):
            lines.append(f"  {f:10.1f} Hz  {p:.6e} G2/Hz")

    ctx.emit(run, scalar_csv(values) if run.fmt == "csv" else "\n".join(lines) + "\n")


@app.command()
@handle_errors
def miles(
    psd: Path = typer.Option(..., "--psd", help="Input PSD profile"),
    fn: float = typer.Option(..., "--fn", help="Natural frequency, Hz"),
    q: Optional[float] = typer.Option(
        None, "--q", help="Resonance amplification [default 10: typical for bolted structures]"
    ),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="Report format"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report to a file"),
):
    """Miles rms response of a single-DOF oscillator and its 3-sigma level"""
    ctx = AnalysisContext()
    run = ctx.run_config(
        thresholds={'q': q}, inputs={"PSD profile": psd}, output_format=fmt, out=out
    )
    profile = load_psd_profile(run.inputs["PSD profile"])
    q_value = run.thresholds.q
    rms = miles_acceleration(fn, q_value, profile)
    if run.fmt == "csv":
        peak = three_sigma(rms)
        text = scalar_csv({"fn_hz": fn, "q": q_value, "grms": rms, "three_sigma_g": peak})
    else:
        shown = round(rms, 3)
        text = (
            f"Miles (fn = {fn:g} Hz, Q = {q_value:g}) = {shown:.3f} Grms, "
            f"3σ = {three_sigma(shown):.3f} G\n"
        )
    ctx.emit(run, text)


@app.command()
@handle_errors
def mag(
    sensor: List[Path] = typer.Option(
        ..., "--sensor", help="Response PSD curve (repeatable, one per axis)"
    ),
    reference: List[Path] = typer.Option(
        ..., "--reference", help="Control/reference PSD curve, paired with --sensor in order"
    ),
    band: Tuple[float, float] = typer.Option(
        ..., "--band", help="Peak search band: LOW HIGH in Hz"
    ),
    axis: Optional[List[str]] = typer.Option(
        None, "--axis", help="Axis label per sensor [default X, Y, Z]"
    ),
    low_level: Optional[List[Path]] = typer.Option(
        None, "--low-level", help="Low-level (modal survey) sensor curve per axis"
    ),
    amplitude: bool = typer.Option(
        False,
        "--amplitude",
        help="Report the acceleration (square-root) ratio instead of the PSD ratio",
    ),
    min_reference: Optional[float] = typer.Option(
        None,
        "--min-reference",
        help="Reject reference levels at or below this, G²/Hz [default 1e-12]",
    ),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="Report format"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report to a file"),
):
    """Peak frequencies and response magnification per axis"""
    if len(sensor) != len(reference):
        raise InputError(
            f"{len(sensor)} --sensor curve(s) but {len(reference)} --reference curve(s)"
        )
    labels = list(axis) if axis else ["X", "Y", "Z"][: len(sensor)]
    if len(labels) != len(sensor):
        raise InputError(f"{len(labels)} --axis label(s) for {len(sensor)} sensor curve(s)")
    lows = list(low_level) if low_level else []
    if lows and len(lows) != len(sensor):
        raise InputError(f"{len(lows)} --low-level curve(s) for {len(sensor)} sensor curve(s)")

    inputs = {}
    for i in range(len(sensor)):
        inputs[f"sensor {i + 1}"] = sensor[i]
        inputs[f"reference {i + 1}"] = reference[i]
        if lows:
            inputs[f"low-level {i + 1}"] = lows[i]

    ctx = AnalysisContext()
    run = ctx.run_config(
        thresholds={'min_reference_psd': min_reference},
        inputs=inputs,
        band=band,
        output_format=fmt,
        out=out,
    )
    assert run.band is not None
    rows = [
        magnification_row(
            labels[i],
            load_psd_curve(sensor[i], f"{labels[i]} sensor"),
            load_psd_curve(reference[i], f"{labels[i]} reference"),
            run.band,
            low_level=load_psd_curve(lows[i], f"{labels[i]} low-level") if lows else None,
            min_reference=run.thresholds.min_reference_psd,
            amplitude=amplitude,
        )
        for i in range(len(sensor))
    ]
    ctx.emit(run, magnification_table(rows).render(run.fmt))
