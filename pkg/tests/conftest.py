# tests/conftest.py
from importlib import resources
from pathlib import Path

import pytest
from typer.testing import CliRunner

from vibrakit.core.model import BeamSection, Material
from vibrakit.core.model.builders import a7075, two_panel_frame

DATA_DIR = Path(str(resources.files("vibrakit.data")))


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Keep config.yaml and logs of every test inside its own tmp dir"""
    home = tmp_path / "vibrakit-home"
    monkeypatch.setenv("VIBRAKIT_HOME", str(home))
    return home


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def aluminium() -> Material:
    return a7075(1)


@pytest.fixture
def square_bar() -> BeamSection:
    """10 mm solid square bar"""
    inertia = 0.01**4 / 12.0
    return BeamSection(A=1e-4, Iy=inertia, Iz=inertia, J=0.1406 * 0.01**4)


@pytest.fixture(scope="session")
def frame():
    return two_panel_frame()
