# tests/test_cli.py
import csv
import io

import pytest

from vibrakit.cli.context import EXIT_INPUT, EXIT_OK, EXIT_REQUIREMENT, EXIT_SOLVER
from vibrakit.cli.main import app
from vibrakit.core.model import load_deck
from vibrakit.core.panels import panel_first_frequency
from vibrakit.io.inputs import load_psd_profile
from vibrakit.reports.tables import Table
from vibrakit.vibration.psd import miles_acceleration


def _csv(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


def _invoke(runner, *args):
    return runner.invoke(app, [str(a) for a in args])


@pytest.fixture
def decks(data_dir):
    return data_dir / "decks"


def test_help(runner):
    result = _invoke(runner, "--help")
    assert result.exit_code == EXIT_OK
    for command in ("validate", "modal", "static", "boltshear", "boltcheck", "jig", "randvib"):
        assert command in result.output


@pytest.mark.parametrize("name", ["sdof.deck", "cantilever.deck", "frame_12bolt.deck"])
def test_validate_shipped_decks(runner, decks, name):
    result = _invoke(runner, "validate", "--deck", decks / name)
    assert result.exit_code == EXIT_OK, result.output
    assert "0 error(s)" in result.output


def test_validate_reports_errors(runner, tmp_path):
    deck = tmp_path / "bad.deck"
    deck.write_text(
        "MAT,1,70,0.3,2.7,200,300\nNODE,1,0,0,0\nNODE,2,0,0,0\nBEAM,1,1,1,2,1,1,1,1,0,1,0\n"
    )
    result = _invoke(runner, "validate", "--deck", deck)
    assert result.exit_code == EXIT_INPUT
    assert "error" in result.output


def test_unparseable_and_missing_decks(runner, tmp_path):
    deck = tmp_path / "broken.deck"
    deck.write_text("NODE,1,0,0\n")
    assert _invoke(runner, "validate", "--deck", deck).exit_code == EXIT_INPUT
    missing = tmp_path / "missing.deck"
    assert _invoke(runner, "modal", "--deck", missing, "-c", "A").exit_code == EXIT_INPUT


def test_modal_pass_and_csv(runner, decks, tmp_path):
    out = tmp_path / "sdof.csv"
    result = _invoke(
        runner, "modal", "-d", decks / "sdof.deck", "-c", "GROUND", "-n", "1",
        "--floor-hz", "0.5", "--format", "csv", "--out", out,
    )
    assert result.exit_code == EXIT_OK, result.output
    rows = _csv(out)
    assert rows[0]["mode"] == "1"
    assert float(rows[0]["f_GROUND_hz"]) == pytest.approx(1.0, rel=1e-6)
    assert float(rows[0]["meff_x_kg"]) == pytest.approx(1.0, rel=1e-9)
    assert rows[0]["axis"] == "X"


def test_modal_below_floor(runner, decks, tmp_path):
    out = tmp_path / "cantilever.txt"
    result = _invoke(runner, "modal", "-d", decks / "cantilever.deck", "-c", "CLAMP", "--out", out)
    assert result.exit_code == EXIT_REQUIREMENT
    text = out.read_text()
    assert "FAIL" in text
    assert "60.00 Hz floor" in text


def test_modal_is_deterministic(runner, decks, tmp_path):
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    deck = decks / "cantilever.deck"
    for out in (first, second):
        _invoke(runner, "modal", "-d", deck, "-c", "CLAMP", "-n", "4", "--out", out)
    assert first.read_text() == second.read_text()


def test_modal_rejects_three_conditions(runner, decks):
    args = ["modal", "-d", decks / "cantilever.deck"] + ["-c", "CLAMP"] * 3
    assert _invoke(runner, *args).exit_code == EXIT_INPUT


def test_solver_error_exit_code(runner, tmp_path):
    deck = tmp_path / "pinned.deck"
    deck.write_text(
        "UNITS,m,kg,N\n"
        "MAT,1,70,0.3,2.7,200,300\n"
        "NODE,1,0,0,0\nNODE,2,1,0,0\n"
        "BEAM,1,1,1,2,1e-4,1e-9,1e-9,2e-9,0,1,0\n"
        "SPCSET,PIN\nSPC,PIN,1,123\n"
        "ACCEL,Z1G,0,0,1\n"
    )
    result = _invoke(runner, "static", "-d", deck, "-c", "PIN")
    assert result.exit_code == EXIT_SOLVER


def test_static_override_rows(runner, tmp_path):
    out = tmp_path / "margins.csv"
    args = ["static", "--smax", "68.8", "--smax", "37.8", "--smax", "41.0"]
    args += ["--case", "X", "--case", "Y", "--case", "Z", "--format", "csv", "--out", out]
    result = _invoke(runner, *args)
    assert result.exit_code == EXIT_OK, result.output
    rows = _csv(out)
    assert [r["case"] for r in rows] == ["X", "Y", "Z"]
    assert [round(float(r["ms_yield"]), 2) for r in rows] == [2.73, 5.79, 5.26]
    assert [round(float(r["ms_ultimate"]), 2) for r in rows] == [2.34, 5.08, 4.61]
    assert [round(100 * float(r["ratio"]), 1) for r in rows] == [15.0, 8.2, 8.9]
    assert {r["result"] for r in rows} == {"PASS"}


def test_static_override_failure(runner):
    result = _invoke(runner, "static", "--smax", "150")
    assert result.exit_code == EXIT_REQUIREMENT
    assert _invoke(runner, "static", "--smax", "10", "--case", "A", "--case", "B").exit_code == (
        EXIT_INPUT
    )
    assert _invoke(runner, "static").exit_code == EXIT_INPUT


def test_static_deck_cases(runner, decks, tmp_path):
    out = tmp_path / "cantilever.txt"
    result = _invoke(runner, "static", "-d", decks / "cantilever.deck", "-c", "CLAMP", "--out", out)
    assert result.exit_code == EXIT_OK, result.output
    lines = out.read_text().splitlines()
    cases = [line.split()[0] for line in lines[3:6]]
    assert cases == ["ZERO", "Z1G", "Y7G"]
    assert "unbounded" in lines[3]


def test_randvib_grms(runner, data_dir, tmp_path):
    result = _invoke(runner, "randvib", "grms", "--psd", data_dir / "profiles" / "flat_0p01.csv")
    assert result.exit_code == EXIT_OK
    assert "Grms = 4.4497" in result.output

    out = tmp_path / "scaled.csv"
    profile = data_dir / "profiles" / "at_placeholder.csv"
    args = ["randvib", "grms", "--psd", profile, "--target-grms", "4.42", "--format", "csv"]
    result = _invoke(runner, *args, "--out", out)
    assert result.exit_code == EXIT_OK
    values = {r["quantity"]: float(r["value"]) for r in _csv(out)}
    assert values["target_grms"] == 4.42
    assert values["scale_factor"] == pytest.approx((4.42 / values["grms"]) ** 2, rel=1e-12)


def test_randvib_miles(runner, data_dir, tmp_path):
    out = tmp_path / "miles.txt"
    profile = data_dir / "profiles" / "flat_0p01.csv"
    result = _invoke(runner, "randvib", "miles", "--psd", profile, "--fn", "100", "--out", out)
    assert result.exit_code == EXIT_OK
    text = out.read_text()
    assert "3.963 Grms" in text
    assert "3σ = 11.889" in text
    assert _invoke(runner, "randvib", "miles", "--psd", profile, "--fn", "10").exit_code == (
        EXIT_INPUT
    )


def test_randvib_magnification(runner, data_dir, tmp_path):
    curves = data_dir / "curves"
    out = tmp_path / "mag.csv"
    args = ["randvib", "mag", "--band", "20", "2000", "--format", "csv", "--out", out]
    for axis in ("x", "z"):
        args += ["--sensor", curves / f"sensor_{axis}.csv"]
        args += ["--reference", curves / f"reference_{axis}.csv"]
        args += ["--low-level", curves / f"lowlevel_{axis}.csv", "--axis", axis.upper()]
    result = _invoke(runner, *args)
    assert result.exit_code == EXIT_OK, result.output
    rows = _csv(out)
    assert [(r["axis"], float(r["test_hz"])) for r in rows] == [("X", 75.0), ("Z", 84.4)]
    assert [round(float(r["magnification"]), 1) for r in rows] == [2.6, 2.2]
    assert [float(r["modal_hz"]) for r in rows] == [106.0, 131.0]


def test_randvib_mismatched_curves(runner, data_dir):
    curves = data_dir / "curves"
    result = _invoke(
        runner, "randvib", "mag", "--band", "20", "2000",
        "--sensor", curves / "sensor_x.csv", "--sensor", curves / "sensor_z.csv",
        "--reference", curves / "reference_x.csv",
    )
    assert result.exit_code == EXIT_INPUT
    result = _invoke(
        runner, "randvib", "mag", "--band", "2000", "20",
        "--sensor", curves / "sensor_x.csv", "--reference", curves / "reference_x.csv",
    )
    assert result.exit_code == EXIT_INPUT


def _fixture_args(data_dir):
    return [
        "--punch", data_dir / "punch" / "frame_fixture.pch",
        "--descriptor", data_dir / "descriptors" / "beam_force.desc",
        "--groups", data_dir / "groups" / "frame_groups.txt",
    ]


def test_boltshear_from_fixture(runner, data_dir, tmp_path):
    out = tmp_path / "bolts.csv"
    args = ["boltshear", *_fixture_args(data_dir), "--format", "csv", "--out", out]
    args += ["--annotations", data_dir / "annotations" / "frame_loose.txt"]
    result = _invoke(runner, *args)
    assert result.exit_code == EXIT_OK, result.output
    rows = {r["group"]: r for r in _csv(out)}
    assert float(rows["XM-YM"]["X_max_shear_n"]) == 41.0
    assert float(rows["XM-YP"]["Y_max_shear_n"]) == 65.0
    assert rows["XM-YM"]["X_loose"] == "L"
    assert rows["XM-YM"]["Y_loose"] == ""
    assert rows["XP-YM"]["bolts"] == "3"


def test_boltshear_subcase_selection(runner, data_dir, tmp_path):
    out = tmp_path / "bolts.txt"
    result = _invoke(runner, "boltshear", *_fixture_args(data_dir), "--subcase", "2", "--out", out)
    assert result.exit_code == EXIT_OK
    text = out.read_text()
    assert "Y max (N)" in text and "X max (N)" not in text
    assert "XM-YP (65.0 N), XM-YM (61.0 N), XP-YP (53.0 N), XP-YM (50.0 N)" in text

    missing = _invoke(runner, "boltshear", *_fixture_args(data_dir), "--subcase", "9")
    assert missing.exit_code == EXIT_INPUT


def test_boltshear_argument_errors(runner, data_dir):
    punch = data_dir / "punch" / "frame_fixture.pch"
    assert _invoke(runner, "boltshear", "--punch", punch).exit_code == EXIT_INPUT
    assert _invoke(runner, "boltshear").exit_code == EXIT_INPUT
    args = [*_fixture_args(data_dir), "--fn", "100"]
    assert _invoke(runner, "boltshear", *args).exit_code == EXIT_INPUT


@pytest.mark.slow
def test_boltshear_deck_and_punch_reports_match(runner, data_dir, tmp_path):
    punch, direct, replay = tmp_path / "frame.pch", tmp_path / "direct.txt", tmp_path / "replay.txt"
    deck = data_dir / "decks" / "frame_12bolt.deck"
    result = _invoke(
        runner, "boltshear", "-d", deck, "-c", "A", "--case", "X", "--case", "Y",
        "--write-punch", punch, "--out", direct,
    )
    assert result.exit_code == EXIT_OK, result.output
    result = _invoke(
        runner, "boltshear", "--punch", punch,
        "--descriptor", data_dir / "descriptors" / "beam_force.desc",
        "--groups", data_dir / "groups" / "frame_groups.txt", "--out", replay,
    )
    assert result.exit_code == EXIT_OK, result.output
    assert replay.read_text() == direct.read_text()


def test_boltcheck(runner, data_dir, tmp_path):
    out = tmp_path / "stack.csv"
    stackups = data_dir / "stackups" / "rail_bolts.yaml"
    result = _invoke(runner, "boltcheck", "-s", stackups, "--format", "csv", "--out", out)
    assert result.exit_code == EXIT_OK
    assert [r["result"] for r in _csv(out)] == ["PASS", "PASS"]

    short = tmp_path / "short.yaml"
    short.write_text(
        "positions:\n  - name: short\n    bolt_length: 12\n    items: []\n    tapped_depth: 16\n"
    )
    assert _invoke(runner, "boltcheck", "-s", short).exit_code == EXIT_REQUIREMENT
    short.write_text("positions: []\n")
    assert _invoke(runner, "boltcheck", "-s", short).exit_code == EXIT_INPUT


def test_simplify(runner, tmp_path):
    out = tmp_path / "panel.txt"
    args = ["simplify", "--real-mass", "1329", "--component-mass", "415"]
    args += ["--area", "257900", "--thickness", "4.2", "--out", out]
    result = _invoke(runner, *args)
    assert result.exit_code == EXIT_OK
    row = out.read_text().splitlines()[3].split()
    assert row[:3] == ["1329.0", "415.0", "1744.0"]
    assert row[3] == "1.610"
    bad = ["simplify", "--real-mass", "0", "--area", "1", "--thickness", "1"]
    assert _invoke(runner, *bad).exit_code == EXIT_INPUT


@pytest.mark.slow
def test_thickness_matching(runner, decks, tmp_path):
    deck = decks / "panel_yp.deck"
    target = panel_first_frequency(load_deck(deck), 0.0025)
    out = tmp_path / "thickness.csv"
    args = ["thickness", "-d", deck, "--target-f1", f"{target:.6f}", "--bounds", "1", "4"]
    result = _invoke(runner, *args, "--tol", "0.05", "--format", "csv", "--out", out)
    assert result.exit_code == EXIT_OK, result.output
    values = {r["quantity"]: float(r["value"]) for r in _csv(out)}
    assert values["thickness_m"] == pytest.approx(0.0025, rel=0.02)
    assert abs(values["f1_hz"] - target) <= 0.05


@pytest.mark.slow
def test_jig_study(runner, decks, tmp_path):
    out = tmp_path / "jig.csv"
    args = ["jig", "-d", decks / "jig_ribbed.deck", "--article-f1", "97"]
    result = _invoke(runner, *args, "--format", "csv", "--out", out)
    assert result.exit_code == EXIT_OK, result.output
    row = _csv(out)[0]
    assert row["constraint"] == "SHAKER"
    assert float(row["separation_ratio"]) >= 2.0
    assert float(row["jig_mass_kg"]) == pytest.approx(
        load_deck(decks / "jig_ribbed.deck").structural_mass()
    )
    assert float(row["jig_mass_kg"]) < 22.5

    failing = _invoke(runner, "jig", "-d", decks / "jig_ribbed.deck", "--article-f1", "1000")
    assert failing.exit_code == EXIT_REQUIREMENT


@pytest.mark.slow
def test_boltshear_miles_scaling(runner, data_dir, tmp_path):
    deck = data_dir / "decks" / "frame_12bolt.deck"
    flat = data_dir / "profiles" / "flat_0p01.csv"
    base, scaled = tmp_path / "base.csv", tmp_path / "scaled.csv"
    args = ["boltshear", "-d", deck, "-c", "A", "--case", "X", "--format", "csv"]
    assert _invoke(runner, *args, "--out", base).exit_code == EXIT_OK
    result = _invoke(runner, *args, "--fn", "100", "--psd", flat, "--out", scaled)
    assert result.exit_code == EXIT_OK, result.output

    factor = 3.0 * miles_acceleration(100.0, 10.0, load_psd_profile(flat)) / 7.0
    for before, after in zip(_csv(base), _csv(scaled)):
        assert before["group"] == after["group"]
        expected = factor * float(before["X_max_shear_n"])
        assert float(after["X_max_shear_n"]) == pytest.approx(expected, rel=1e-9)


def test_consecutive_runs_in_one_process(runner, decks):
    deck = decks / "sdof.deck"
    for flags in ([], ["--verbose"], ["--verbose"], []):
        result = _invoke(runner, *flags, "validate", "--deck", deck)
        assert result.exit_code == EXIT_OK, result.output


def _cell(text):
    if text == "":
        return None
    if text in ("PASS", "FAIL"):
        return text == "PASS"
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def _text_from_csv(table, csv_text):
    rows = list(csv.reader(io.StringIO(csv_text)))
    assert rows[0] == [c.csv_key for c in table.columns]
    rebuilt = Table(table.title, table.columns, notes=list(table.notes))
    for row in rows[1:]:
        rebuilt.add_row(*(_cell(v) for v in row))
    return rebuilt.render_text()


def _report_args(name, data_dir):
    decks, curves = data_dir / "decks", data_dir / "curves"
    if name == "modal":
        return ["modal", "-d", decks / "sdof.deck", "-c", "GROUND", "-n", "1", "--floor-hz", "0.5"]
    if name == "static":
        return ["static", "-d", decks / "cantilever.deck", "-c", "CLAMP"]
    if name == "mag":
        args = ["randvib", "mag", "--band", "20", "2000"]
        for axis in ("x", "z"):
            args += ["--sensor", curves / f"sensor_{axis}.csv"]
            args += ["--reference", curves / f"reference_{axis}.csv"]
            args += ["--low-level", curves / f"lowlevel_{axis}.csv"]
        return args + ["--axis", "X", "--axis", "Z"]
    if name == "boltshear":
        annotations = data_dir / "annotations" / "frame_loose.txt"
        return ["boltshear", *_fixture_args(data_dir), "--annotations", annotations]
    if name == "boltcheck":
        return ["boltcheck", "-s", data_dir / "stackups" / "rail_bolts.yaml"]
    if name == "simplify":
        args = ["simplify", "--real-mass", "1329", "--component-mass", "415"]
        return args + ["--area", "257900", "--thickness", "4.2"]
    return ["jig", "-d", decks / "jig_ribbed.deck", "--article-f1", "97"]


@pytest.mark.parametrize(
    "name",
    [
        "modal",
        "static",
        "mag",
        "boltshear",
        "boltcheck",
        "simplify",
        pytest.param("jig", marks=pytest.mark.slow),
    ],
)
def test_csv_report_matches_text_report(runner, data_dir, tmp_path, monkeypatch, name):
    rendered = []
    render = Table.render

    def recording_render(table, fmt):
        rendered.append(table)
        return render(table, fmt)

    monkeypatch.setattr(Table, "render", recording_render)
    text_out, csv_out = tmp_path / "report.txt", tmp_path / "report.csv"
    args = _report_args(name, data_dir)
    assert _invoke(runner, *args, "--out", text_out).exit_code == EXIT_OK
    result = _invoke(runner, *args, "--format", "csv", "--out", csv_out)
    assert result.exit_code == EXIT_OK, result.output

    assert len(rendered) == 2
    assert _text_from_csv(rendered[-1], csv_out.read_text()) == text_out.read_text()


def test_scalar_csv_reports_match_text(runner, data_dir, tmp_path):
    profile = data_dir / "profiles" / "flat_0p01.csv"
    text_out, csv_out = tmp_path / "report.txt", tmp_path / "report.csv"

    args = ["randvib", "grms", "--psd", profile, "--target-grms", "4.42"]
    assert _invoke(runner, *args, "--out", text_out).exit_code == EXIT_OK
    assert _invoke(runner, *args, "--format", "csv", "--out", csv_out).exit_code == EXIT_OK
    values = {r["quantity"]: float(r["value"]) for r in _csv(csv_out)}
    text = text_out.read_text()
    assert f"Grms = {values['grms']:.4f}" in text
    assert f"PSD x {values['scale_factor']:.6g}" in text

    args = ["randvib", "miles", "--psd", profile, "--fn", "100"]
    assert _invoke(runner, *args, "--out", text_out).exit_code == EXIT_OK
    assert _invoke(runner, *args, "--format", "csv", "--out", csv_out).exit_code == EXIT_OK
    values = {r["quantity"]: float(r["value"]) for r in _csv(csv_out)}
    text = text_out.read_text()
    assert f"= {values['grms']:.3f} Grms" in text
    assert values["three_sigma_g"] == pytest.approx(3.0 * values["grms"], rel=1e-15)
    assert "Q = 10)" in text and values["q"] == 10.0
