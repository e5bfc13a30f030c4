# tests/test_assembly.py
import numpy as np
import pytest

from vibrakit.core.model import ConstraintSet, SpcEntry
from vibrakit.core.model.builders import cantilever_beam, panel_template
from vibrakit.errors import AssemblyError, InputError, ModelTooLargeError
from vibrakit.fea.assembly import CONSTRAINED, assemble


@pytest.fixture
def cantilever(aluminium, square_bar):
    return cantilever_beam(0.5, 4, square_bar, aluminium)


@pytest.fixture
def panel(aluminium):
    return panel_template(0.24, 6, 0.002, aluminium, component_mass=0.4)


def test_dof_map_of_a_clamped_beam(cantilever):
    system = assemble(cantilever, "CLAMP")
    assert system.dof_map.n_full == 30
    assert system.n_free == 24
    assert system.K.shape == system.M.shape == (24, 24)
    assert all(system.dof_map.equation(1, d) == CONSTRAINED for d in range(6))
    assert [system.dof_map.equation(2, d) for d in range(6)] == list(range(6))
    assert system.dof_map.free_dofs()[:2] == [(2, 0), (2, 1)]
    assert len(system.dof_map.fixed_columns) == 6
    with pytest.raises(InputError):
        system.dof_map.equation(99, 0)


def test_reduced_matrices_are_symmetric(panel):
    system = assemble(panel, "PANEL")
    np.testing.assert_array_equal(system.K, system.K.T)
    np.testing.assert_array_equal(system.M, system.M.T)


def test_total_mass_matches_model(cantilever, panel):
    system = assemble(cantilever, "CLAMP")
    np.testing.assert_allclose(system.total_mass(), cantilever.total_mass(), rtol=1e-12)
    system = assemble(panel, "PANEL")
    np.testing.assert_allclose(system.total_mass(), panel.total_mass(), rtol=1e-12)


def test_rigid_link_slaves_follow_the_master(panel):
    system = assemble(panel, "PANEL")
    link = panel.rigid_links[0]
    for slave in link.slaves:
        assert all(system.dof_map.equation(slave, d) == CONSTRAINED for d in range(6))

    u_free = np.zeros(system.n_free)
    theta = 1e-3
    u_free[system.dof_map.equation(link.master, 3)] = theta
    u_free[system.dof_map.equation(link.master, 2)] = 2e-4
    u = np.asarray(system.expand(u_free)).ravel()
    master = panel.node(link.master).xyz
    index = panel.node_index
    for slave in link.slaves:
        r = panel.node(slave).xyz - master
        expected = np.array([0.0, 0.0, 2e-4]) + np.cross([theta, 0.0, 0.0], r)
        base = 6 * index[slave]
        np.testing.assert_allclose(u[base : base + 3], expected, atol=1e-15)
        np.testing.assert_allclose(u[base + 3 : base + 6], [theta, 0.0, 0.0], atol=1e-15)


def test_spc_on_a_slave_is_over_constrained(panel):
    slave = panel.rigid_links[0].slaves[0]
    model = panel.with_constraint(ConstraintSet("BAD", spcs=(SpcEntry(slave, (2,)),)))
    with pytest.raises(AssemblyError, match="over-constrained"):
        assemble(model, "BAD")


def test_fully_fixed_model_is_rejected(cantilever):
    everything = tuple(SpcEntry(n.id, (0, 1, 2, 3, 4, 5)) for n in cantilever.nodes)
    model = cantilever.with_constraint(ConstraintSet("ALL", spcs=everything))
    with pytest.raises(AssemblyError, match="no free DOF"):
        assemble(model, "ALL")


def test_dof_limit(cantilever, monkeypatch):
    with pytest.raises(ModelTooLargeError):
        assemble(cantilever, "CLAMP", max_dof=10)
    monkeypatch.setenv("VIBRAKIT_MAX_DOF", "12")
    with pytest.raises(ModelTooLargeError):
        assemble(cantilever, "CLAMP")


def test_unknown_constraint_set(cantilever):
    with pytest.raises(InputError):
        assemble(cantilever, "NOPE")
