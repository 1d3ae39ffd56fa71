"""Decay-path enumeration and the classical rate-equation engine.

Populations relax through the level diagram with rate constants
k_lm = C |d_lm|^2 restricted to downhill transitions.  Integrating the
rate equations and the per-state outward fluxes gives the relative
population transfer through every cascade path, i.e. the diagonal of the
emitted-photon density matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from .spectrum import BRIGHTNESS_THRESHOLD, CompositeModel, LevelDiagram

#: Transitions with energy gaps below this (eV) are treated as
#: zero-frequency and excluded from the decay network.
FREQUENCY_FLOOR = 1e-9

DEFAULT_PATH_CAP = 10 ** 7


class PathOverflowError(RuntimeError):
    """More decay paths than the configured cap."""


class ConvergenceError(RuntimeError):
    """Trajectories or integrals failed their accuracy contract."""


@dataclass(frozen=True)
class DecayPath:
    """An ordered eigenstate sequence ending at the ground state."""

    states: tuple
    frequencies: tuple
    weight: float = 0.0

    @property
    def n_photons(self) -> int:
        return len(self.frequencies)


def build_rate_matrix(diagram: LevelDiagram, model: CompositeModel,
                      threshold: float = BRIGHTNESS_THRESHOLD) -> np.ndarray:
    """Downhill radiative rates k[l, m] = C |d_lm|^2 for E_l > E_m."""
    c = model.effective_rate_constant()
    d2 = diagram.dipole_sq
    cut = threshold * d2.max() if d2.max() > 0 else 0.0
    e = diagram.energies
    downhill = (e[:, None] - e[None, :]) > FREQUENCY_FLOOR
    k = np.where(downhill & (d2 > cut), c * d2, 0.0)
    return k


def enumerate_decay_paths(diagram: LevelDiagram, rates: np.ndarray,
                          initial_state: int = None,
                          cap: int = DEFAULT_PATH_CAP) -> list:
    """Depth-first enumeration of all downhill cascades reaching the ground state.

    Dead branches (states with no outgoing transition other than the
    ground state itself) are dropped; population parked there never emits
    a complete photon sequence.
    """
    dim = diagram.dim
    if initial_state is None:
        initial_state = dim - 1
    if not 0 <= initial_state < dim:
        raise ValueError(f"initial state {initial_state} out of range")
    gnd = diagram.ground_index
    successors = [np.nonzero(rates[l])[0].tolist() for l in range(dim)]

    paths = []
    stack = [(initial_state,)]
    while stack:
        seq = stack.pop()
        last = seq[-1]
        if last == gnd:
            paths.append(seq)
            if len(paths) > cap:
                raise PathOverflowError(f"more than {cap} decay paths")
            continue
        for nxt in successors[last]:
            stack.append(seq + (nxt,))

    e = diagram.energies
    out = []
    for seq in sorted(paths):
        freqs = tuple(float(e[a] - e[b]) for a, b in zip(seq, seq[1:]))
        out.append(DecayPath(states=seq, frequencies=freqs))
    return out


def rate_generator(rates: np.ndarray) -> np.ndarray:
    """Linear generator M with dp/dt = M p (columns sum to zero)."""
    m = rates.T.copy()
    np.fill_diagonal(m, m.diagonal() - rates.sum(axis=1))
    return m


def integrate_rate_equations(rates: np.ndarray, p0: np.ndarray,
                             t_grid: np.ndarray) -> np.ndarray:
    """Classical RK4 propagation of the populations on the given time grid.

    Returns an array of shape (len(t_grid), dim).  Probability is
    conserved exactly by the linear RK4 step; a 1e-9 guard catches grids
    coarse enough to go unstable.
    """
    p0 = np.asarray(p0, dtype=float)
    if np.any(p0 < 0):
        raise ValueError("initial populations must be nonnegative")
    if abs(p0.sum() - 1.0) > 1e-9:
        raise ValueError("initial populations must sum to 1")
    t_grid = np.asarray(t_grid, dtype=float)
    m = rate_generator(rates)
    traj = np.empty((len(t_grid), len(p0)))
    traj[0] = p0
    p = p0.copy()
    for i in range(1, len(t_grid)):
        h = t_grid[i] - t_grid[i - 1]
        k1 = m @ p
        k2 = m @ (p + 0.5 * h * k1)
        k3 = m @ (p + 0.5 * h * k2)
        k4 = m @ (p + h * k3)
        p = p + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        traj[i] = p
    if np.any(np.abs(traj.sum(axis=1) - 1.0) > 1e-9):
        raise ConvergenceError("probability not conserved; time step too large")
    return traj


def default_time_grid(rates: np.ndarray, p0: np.ndarray,
                      ground_index: int = 0,
                      ground_target: float = 1.0 - 1e-6,
                      max_steps: int = 5_000_000) -> np.ndarray:
    """Uniform grid from 0 to the decay horizon.

    The horizon is the first time the ground population reaches the
    target, capped at 50 over the smallest nonzero rate.  Step size is
    0.01 over the largest rate.
    """
    nonzero = rates[rates > 0]
    if nonzero.size == 0:
        return np.array([0.0, 1.0])
    h = 0.01 / nonzero.max()
    t_cap = 50.0 / nonzero.min()
    m = rate_generator(rates)
    p = np.asarray(p0, dtype=float).copy()
    n = 0
    while p[ground_index] < ground_target and n < max_steps:
        k1 = m @ p
        k2 = m @ (p + 0.5 * h * k1)
        k3 = m @ (p + 0.5 * h * k2)
        k4 = m @ (p + h * k3)
        p = p + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        n += 1
        if n * h > t_cap:
            break
    if p[ground_index] < ground_target and n >= max_steps:
        raise ConvergenceError("decay horizon not reached within step budget")
    n = max(n, 2)
    return np.linspace(0.0, n * h, n + 1)


def flux_fractions(rates: np.ndarray, trajectories: np.ndarray,
                   t_grid: np.ndarray, ground_index: int = 0,
                   ground_target: float = 1.0 - 1e-6) -> np.ndarray:
    """Relative outward flux w[l, m] from each state, rows summing to 1.

    Computed from the trapezoid time integral of k_lm p_l(t); states that
    never acquire population fall back to the bare branching ratios,
    which the integral reduces to anyway for time-independent rates.
    """
    if trajectories[-1, ground_index] < ground_target:
        raise ConvergenceError(
            f"trajectories unconverged: ground population "
            f"{trajectories[-1, ground_index]:.9f} < {ground_target}")
    occupancy = trapezoid(trajectories, t_grid, axis=0)
    flux = rates * occupancy[:, None]
    totals = flux.sum(axis=1)
    w = np.zeros_like(rates)
    for l in range(rates.shape[0]):
        if totals[l] > 0:
            w[l] = flux[l] / totals[l]
        else:
            out = rates[l].sum()
            if out > 0:
                w[l] = rates[l] / out
    return w


def path_weights(paths: list, fractions: np.ndarray) -> list:
    """Attach the product of per-hop flux fractions to every path.

    Returned in deterministic order: descending weight, ties broken by
    the state sequence.
    """
    weighted = []
    for p in paths:
        w = 1.0
        for a, b in zip(p.states, p.states[1:]):
            w *= fractions[a, b]
        weighted.append(DecayPath(states=p.states, frequencies=p.frequencies,
                                  weight=w))
    weighted.sort(key=lambda p: (-p.weight, p.states))
    return weighted


def merge_paths_by_frequency(paths: list, bins: list) -> list:
    """Merge paths emitting identical frequency sequences, summing weights.

    Each hop frequency is snapped to its frequency-bin center so that
    degenerate transitions share a sequence.  The photon state is defined
    by its frequencies, so merged paths are the physical objects scored
    downstream.
    """
    centers = np.array([b.center for b in bins])

    def snap(freq):
        i = int(np.argmin(np.abs(centers - freq)))
        return float(centers[i])

    merged = {}
    for p in paths:
        key = tuple(snap(f) for f in p.frequencies)
        if key in merged:
            merged[key] = DecayPath(states=merged[key].states, frequencies=key,
                                    weight=merged[key].weight + p.weight)
        else:
            merged[key] = DecayPath(states=p.states, frequencies=key,
                                    weight=p.weight)
    out = list(merged.values())
    out.sort(key=lambda p: (-p.weight, p.frequencies))
    return out
