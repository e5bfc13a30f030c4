# tests/test_static.py
import math

import pytest

from vibrakit.analysis.static import (
    SafetyFactors,
    StressLocation,
    margin_of_safety,
    max_von_mises,
    run_static_case,
    run_static_cases,
    stress_ratio_check,
)
from vibrakit.config.settings import Thresholds
from vibrakit.core.model import LoadCase
from vibrakit.core.model.builders import cantilever_beam
from vibrakit.errors import InputError

G = 9.80665


@pytest.mark.parametrize(
    "s_max_mpa, ms_ty, ms_tu, percent",
    [(68.8, 2.73, 2.34, 15.0), (37.8, 5.79, 5.08, 8.2), (41.0, 5.26, 4.61, 8.9)],
)
def test_margins_of_safety(aluminium, s_max_mpa, ms_ty, ms_tu, percent):
    margins = margin_of_safety(s_max_mpa * 1e6, aluminium)
    assert round(margins.ms_ty, 2) == ms_ty
    assert round(margins.ms_tu, 2) == ms_tu
    assert margins.passed
    ratio = stress_ratio_check(s_max_mpa * 1e6, aluminium.F_tu)
    assert round(ratio.percent, 1) == percent
    assert ratio.passed


def test_zero_stress_is_unbounded(aluminium):
    margins = margin_of_safety(0.0, aluminium)
    assert margins.unbounded
    assert margins.ms_ty is None and margins.ms_tu is None
    assert margins.passed


def test_negative_margin_fails(aluminium):
    margins = margin_of_safety(300e6, aluminium)
    assert margins.ms_ty < 0
    assert not margins.passed


def test_ratio_limit_is_strict():
    assert not stress_ratio_check(30.0, 100.0, limit=0.30).passed
    assert stress_ratio_check(29.999, 100.0, limit=0.30).passed
    with pytest.raises(InputError):
        stress_ratio_check(1.0, 0.0)


def test_safety_factors():
    factors = SafetyFactors.from_thresholds(Thresholds(fs_yield=1.25, ratio_limit=0.25))
    assert factors == SafetyFactors(fs_yield=1.25, fs_ultimate=2.0, ratio_limit=0.25)
    with pytest.raises(InputError):
        SafetyFactors(fs_yield=0.0)


def test_max_von_mises_ties_go_to_lowest_element():
    location = max_von_mises([(7, "top", 5.0), (3, "bottom", 5.0), (9, "top", 4.0)])
    assert location == StressLocation(s_max=5.0, element_id=3, surface="bottom")
    with pytest.raises(InputError):
        max_von_mises([])


@pytest.fixture
def bar(aluminium, square_bar):
    cases = [LoadCase("Z1G", (0.0, 0.0, 1.0)), LoadCase("Y7G", (0.0, 7.0, 0.0))]
    return cantilever_beam(0.25, 8, square_bar, aluminium, load_cases=cases)


def test_cantilever_root_stress(bar, aluminium, square_bar):
    result = run_static_case(bar, "CLAMP", "Y7G")
    moment = aluminium.rho * square_bar.A * 7.0 * G * 0.25**2 / 2.0
    c = 2.0 * math.sqrt(square_bar.Iz / square_bar.A)
    assert result.s_max == pytest.approx(moment * c / square_bar.Iz, rel=1e-9)
    assert result.location.element_id == 1
    assert result.location.surface == "end-A"
    assert result.material == aluminium
    assert result.passed
    assert set(result.beam_forces) == {b.id for b in bar.beams}


def test_cases_keep_their_order(bar):
    serial = run_static_cases(bar, "CLAMP", ["Y7G", "Z1G"])
    threaded = run_static_cases(bar, "CLAMP", ["Y7G", "Z1G"], workers=2)
    assert [r.case.name for r in serial] == ["Y7G", "Z1G"]
    assert [r.s_max for r in threaded] == [r.s_max for r in serial]
    assert serial[0].s_max == pytest.approx(7.0 * serial[1].s_max, rel=1e-9)


def test_unknown_or_missing_cases(bar):
    with pytest.raises(InputError):
        run_static_cases(bar, "CLAMP", [])
    with pytest.raises(InputError):
        run_static_case(bar, "CLAMP", "NOPE")


@pytest.mark.slow
def test_frame_shell_and_bolt_stresses(frame):
    result = run_static_case(frame, "A", "X")
    assert result.s_max > 0
    assert len(result.shell_stresses) == len(frame.shells)
    assert result.location.surface in ("top", "bottom", "end-A", "end-B")
    candidates = [s.von_mises for s in result.shell_stresses.values()]
    assert result.s_max >= max(candidates)
