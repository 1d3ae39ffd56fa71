"""Shared fixtures: stock models, diagrams, and the scoring pipeline."""

import numpy as np
import pytest

from cascadesim import cascade, lindblad, metrics
from cascadesim.experiments import bell_model, ghz_model
from cascadesim.spectrum import build_hamiltonian, diagonalize


@pytest.fixture(scope="session")
def bell():
    return bell_model()


@pytest.fixture(scope="session")
def bell_diagram(bell):
    return diagonalize(build_hamiltonian(bell), bell)


@pytest.fixture(scope="session")
def bell_rates(bell, bell_diagram):
    return cascade.build_rate_matrix(bell_diagram, bell)


@pytest.fixture(scope="session")
def bell_liouvillian(bell, bell_diagram, bell_rates):
    return lindblad.build_liouvillian(bell_diagram, bell, bell_rates)


def score_model(model, n_codewords=2, n_photons=None):
    """Run the full pipeline on a model; returns (eta, f_opt, de_min, merged)."""
    diagram = diagonalize(build_hamiltonian(model), model)
    return score_diagram(diagram, model, n_codewords, n_photons)


def score_diagram(diagram, model, n_codewords=2, n_photons=None):
    """Pipeline from a prebuilt diagram (lets tests rotate eigenvectors)."""
    rates = cascade.build_rate_matrix(diagram, model)
    liou = lindblad.build_liouvillian(diagram, model, rates)
    p0 = np.zeros(diagram.dim)
    p0[-1] = 1.0
    grid = cascade.default_time_grid(rates, p0, diagram.ground_index)
    traj = cascade.integrate_rate_equations(rates, p0, grid)
    fractions = cascade.flux_fractions(rates, traj, grid, diagram.ground_index)
    paths = cascade.path_weights(
        cascade.enumerate_decay_paths(diagram, rates), fractions)
    merged = cascade.merge_paths_by_frequency(paths, liou.bins)
    target = metrics.default_logical_target(merged, n_codewords, n_photons)
    eta, _ = metrics.efficiency(merged, target)
    block, _ = lindblad.converged_photon_block(
        liou, lindblad.initial_state(diagram), list(target.sequences), grid[-1])
    _, f_opt, _ = metrics.fidelity(block, target)
    return eta, f_opt, metrics.delta_e_min(target), merged
