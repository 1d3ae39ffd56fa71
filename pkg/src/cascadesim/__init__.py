"""Composite-emitter cascade simulator.

Models N two-level emitters coupled by dipole-dipole interaction and
carrier hybridization, computes the collective level diagram, the
radiative cascade through it, the density-matrix block of the emitted
photons in the frequency-bin basis, and entanglement scores (efficiency
eta, fidelity F against Bell/GHZ-type targets, and the minimum spectral
separation used for bin distinguishability).
"""

from .cascade import (ConvergenceError, DecayPath, PathOverflowError,
                      build_rate_matrix, default_time_grid,
                      enumerate_decay_paths, flux_fractions,
                      integrate_rate_equations, merge_paths_by_frequency,
                      path_weights)
from .coupling import (HARTREE_EV, CouplingSpec, EmitterConfig,
                       SingularGeometryError, dipole_coupling,
                       radiative_correction_factor)
from .experiments import (NAMED_EXPERIMENTS, EvaluationResult, SweepConfig,
                          SweepRow, UsageError, apply_parameter, bell_model,
                          evaluate_model, ghz_model, load_config,
                          population_comparison, run_named_experiment,
                          run_sweep)
from .lindblad import (AccuracyError, FrequencyBin, JumpChannel, Liouvillian,
                       build_frequency_bins, build_liouvillian,
                       converged_photon_block, initial_state, photon_block,
                       population_trajectories, propagate)
from .manybody import FockBasis, OrbitalKind, enumerate_basis
from .metrics import (EntanglementReport, LogicalTarget,
                      default_logical_target, delta_e_min, efficiency,
                      fidelity)
from .spectrum import (CompositeModel, LevelDiagram, build_hamiltonian,
                       classify_levels, diagonalize, level_diagram_record,
                       total_dipole_operator)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
