# tests/test_panels.py
import pytest

from vibrakit.core.model import load_deck
from vibrakit.core.model.builders import panel_template
from vibrakit.core.panels import (
    equivalent_density,
    match_equivalent_thickness,
    panel_equivalent,
    panel_first_frequency,
    shell_mass_and_area,
)
from vibrakit.errors import BracketError, InputError


def test_simplified_panel_density():
    panel = panel_equivalent(1.329, 0.415, 0.2579, 0.0042)
    assert panel.density / 1000.0 == pytest.approx(1.61, abs=0.005)
    assert panel.total_mass == pytest.approx(1.744)
    assert panel.reconstructed_mass == pytest.approx(panel.total_mass, rel=1e-12)
    assert panel.mass_error() <= 1e-12


def test_panel_without_components():
    panel = panel_equivalent(1.0, 0.0, 0.5, 0.002)
    assert panel.density == pytest.approx(1000.0)


@pytest.mark.parametrize(
    "args",
    [
        (0.0, 0.4, 0.25, 0.004),
        (1.3, -0.1, 0.25, 0.004),
        (1.3, 0.4, 0.0, 0.004),
        (1.3, 0.4, 0.25, 0.0),
    ],
)
def test_panel_inputs_must_be_positive(args):
    with pytest.raises(InputError):
        panel_equivalent(*args)


def test_equivalent_density_rejects_zero_volume():
    with pytest.raises(InputError):
        equivalent_density(1.0, 0.0)


@pytest.fixture
def template(aluminium):
    return panel_template(0.24, 4, 0.002, aluminium, component_mass=0.4)


def test_frequency_rises_with_thickness_at_fixed_mass(template):
    mass, _ = shell_mass_and_area(template)
    thin = panel_first_frequency(template, 0.0015, shell_mass=mass)
    thick = panel_first_frequency(template, 0.003, shell_mass=mass)
    assert thick > thin
    assert panel_first_frequency(template, 0.002) == pytest.approx(
        panel_first_frequency(template, 0.002, shell_mass=mass), rel=1e-12
    )


def test_thickness_matching(template):
    target = panel_first_frequency(template, 0.0025)
    found = match_equivalent_thickness(target, template, (0.001, 0.006), tolerance=0.01)
    assert abs(panel_first_frequency(template, found) - target) <= 0.01
    assert found == pytest.approx(0.0025, rel=0.01)


def test_thickness_target_not_bracketed(template):
    high = panel_first_frequency(template, 0.006) * 2.0
    with pytest.raises(BracketError):
        match_equivalent_thickness(high, template, (0.001, 0.006), tolerance=0.01)


@pytest.mark.parametrize(
    "bounds, tolerance, target",
    [((0.006, 0.001), 0.01, 50.0), ((0.001, 0.006), 0.0, 50.0), ((0.001, 0.006), 0.01, -1.0)],
)
def test_thickness_matching_rejects_bad_arguments(template, bounds, tolerance, target):
    with pytest.raises(InputError):
        match_equivalent_thickness(target, template, bounds, tolerance)


@pytest.mark.slow
def test_shipped_panel_deck_matches_itself(data_dir):
    model = load_deck(data_dir / "decks" / "panel_yp.deck")
    target = panel_first_frequency(model, 0.002)
    found = match_equivalent_thickness(target, model, (0.001, 0.004), tolerance=0.05)
    assert found == pytest.approx(0.002, rel=0.02)
