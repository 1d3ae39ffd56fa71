"""Liouvillian assembly, master-equation propagation, and the emitted
photon density-matrix block via the quantum regression theorem.

The electronic system decays radiatively through its downhill transitions
plus constant-rate pure dephasing.  Transitions that emit at the same
frequency from degenerate upper states form one collective jump operator
per dipole component (the secular form of the radiative dissipator);
this keeps the generator — and every observable — invariant under the
arbitrary basis an eigensolver returns inside degenerate subspaces.  For
a non-degenerate spectrum it reduces to independent per-transition jump
channels.

Multi-time emission correlators are evaluated by alternating Liouvillian
propagation over the inter-emission intervals with sandwich applications
of the frequency-binned emission operators; the photon density-matrix
block is the simplex integral of those correlators over ordered emission
times.  Emission operators carry scalar amplitudes of magnitude
sqrt(gamma_r^{lm}), matching the scalar-field treatment of the emitted
modes (photon polarization is not a which-path label here); this makes
the block diagonal agree with the classical path weights.  Within a
frequency bin the amplitudes are signed by projecting each transition
dipole onto the bin's principal dipole direction, again invariant under
degenerate re-mixing.

Because the Hamiltonian is diagonal in the eigenbasis and the secular
dissipator only connects density-matrix components oscillating at the
same frequency E_i - E_j, the Liouvillian is block diagonal over groups
of equal-frequency components; most groups are single coherences and the
zero-frequency group holds the populations.  propagate() uses the
generic matrix exponential of the full generator; the correlator
machinery exponentiates the same generator group by group, which is what
makes the long simplex integrals of the three-photon systems affordable.

Energies (eV) and rates (units of the bare-emitter rate) live on very
different scales; the coherent part carries an explicit energy-per-rate
conversion.  Phase accumulation of the inter-path coherences at the
emitted bin frequencies is compensated analytically during the interval
propagation (the photon-mode phases of the frequency-bin basis), so the
block does not depend on that conversion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.integrate import trapezoid

from .spectrum import CompositeModel, LevelDiagram

#: Transitions closer in energy than this (eV) share a frequency bin.
FREQUENCY_MERGE_TOL = 1e-9

#: Default energy (eV) corresponding to one unit of rate; physically
#: hbar*gamma_0 for the bare emitter.  Observables are insensitive to it.
DEFAULT_COHERENT_SCALE_EV = 1e-6

DEFAULT_GRID_POINTS = 200
GRID_CONVERGENCE_TOL = 1e-4


class AccuracyError(RuntimeError):
    """A requested tolerance could not be met."""


@dataclass(frozen=True)
class JumpChannel:
    upper: int
    lower: int
    rate: float
    frequency: float


@dataclass(frozen=True)
class FrequencyBin:
    """A group of transitions with indistinguishable photon energies."""

    center: float
    transitions: tuple
    tolerance: float = FREQUENCY_MERGE_TOL


@dataclass(frozen=True)
class Liouvillian:
    """Lindblad generator in the eigenbasis, d rho / dt = L[rho].

    matrix is the dense superoperator over row-major vectorized density
    matrices.  energies, decay (total radiative outflux per state), the
    downhill rate matrix, and the jump catalog expose the structure used
    by the cascade and correlator code.
    """

    matrix: np.ndarray = field(repr=False)
    dim: int
    energies: np.ndarray
    decay: np.ndarray
    rates: np.ndarray = field(repr=False)
    jumps: tuple
    dephasing: float
    bins: tuple
    #: per-bin emission operator entries: center -> list of (m, l, amplitude)
    #: with |amplitude| <= sqrt(rate) and equality for single-transition bins
    emission: dict = field(repr=False, default=None)
    coherent_scale: float = DEFAULT_COHERENT_SCALE_EV
    rate_constant: float = 1.0

    def emission_entries(self, frequency: float) -> list:
        for center, entries in self.emission.items():
            if abs(center - frequency) <= FREQUENCY_MERGE_TOL:
                return entries
        raise KeyError(f"no frequency bin at {frequency} eV")


def _cluster(values, tol: float) -> list:
    """Partition sorted (value, payload) items into clusters within tol."""
    groups = []
    current, start = [], None
    for val, payload in sorted(values, key=lambda x: x[0]):
        if start is None or val - start <= tol:
            current.append(payload)
            if start is None:
                start = val
        else:
            groups.append(current)
            current, start = [payload], val
    if current:
        groups.append(current)
    return groups


def build_frequency_bins(diagram: LevelDiagram, rates: np.ndarray,
                         tol: float = FREQUENCY_MERGE_TOL) -> tuple:
    """Group all active transitions by photon energy within tol."""
    items = []
    for l in range(diagram.dim):
        for m in range(diagram.dim):
            if rates[l, m] > 0:
                items.append((float(diagram.energies[l] - diagram.energies[m]),
                              (l, m)))
    e = diagram.energies
    return tuple(
        FrequencyBin(center=float(np.mean([e[l] - e[m] for (l, m) in g])),
                     transitions=tuple(g), tolerance=tol)
        for g in _cluster(items, tol))


def _bin_amplitudes(b: FrequencyBin, diagram: LevelDiagram, c: float) -> list:
    """Signed scalar emission amplitudes sqrt(C) d_lm . e_bin per transition.

    e_bin is the principal direction of the bin's transition-dipole
    vectors (dominant right-singular vector), with its sign fixed so the
    strongest transition projects positively.  Both the direction and the
    resulting operator are invariant under unitary re-mixing within
    degenerate eigensubspaces, and for a single-transition bin the
    amplitude is exactly sqrt(gamma_r^{lm}).
    """
    dips = np.array([diagram.dipoles[m, l] for (l, m) in b.transitions])
    _, _, vt = np.linalg.svd(dips, full_matrices=False)
    e_bin = vt[0]
    lead = int(np.argmax(np.linalg.norm(dips, axis=1)))
    if np.dot(dips[lead], e_bin) < 0:
        e_bin = -e_bin
    return [(m, l, float(np.sqrt(c) * np.dot(diagram.dipoles[m, l], e_bin)))
            for (l, m) in b.transitions]


def _sandwich_super(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    # rho -> left @ rho @ right^dag on row-major vec
    return np.kron(left, right.conj())


def _dissipator(op: np.ndarray) -> np.ndarray:
    d = op.shape[0]
    eye = np.eye(d)
    anti = op.conj().T @ op
    return (_sandwich_super(op, op)
            - 0.5 * np.kron(anti, eye)
            - 0.5 * np.kron(eye, anti.T))


def build_liouvillian(diagram: LevelDiagram, model: CompositeModel,
                      rates: np.ndarray,
                      coherent_scale: float = DEFAULT_COHERENT_SCALE_EV) -> Liouvillian:
    """Assemble the Lindblad generator for the diagonalized system.

    rates is the downhill radiative rate matrix from the cascade module.
    Transitions sharing a frequency bin and a common (degenerate) upper
    energy decay through one collective operator per dipole component;
    every other transition keeps its own jump channel.  One dephasing
    channel per eigenstate is added when the model's dephasing rate is
    nonzero.
    """
    d = diagram.dim
    eye = np.eye(d)
    h_scaled = np.diag(diagram.energies / coherent_scale)
    liou = -1j * (np.kron(h_scaled, eye) - np.kron(eye, h_scaled)).astype(complex)

    sqrt_c = np.sqrt(model.effective_rate_constant())
    bins = build_frequency_bins(diagram, rates)
    jumps = []
    for b in bins:
        uppers = [(float(diagram.energies[l]), (l, m)) for (l, m) in b.transitions]
        for cluster in _cluster(uppers, b.tolerance):
            ops = np.zeros((3, d, d))
            for (l, m) in cluster:
                ops[:, m, l] = sqrt_c * diagram.dipoles[m, l]
                jumps.append(JumpChannel(
                    upper=l, lower=m, rate=float(rates[l, m]),
                    frequency=float(diagram.energies[l] - diagram.energies[m])))
            for c in range(3):
                if np.any(ops[c]):
                    liou += _dissipator(ops[c])
    if model.dephasing > 0:
        for l in range(d):
            op = np.zeros((d, d))
            op[l, l] = np.sqrt(model.dephasing)
            liou += _dissipator(op)

    c = model.effective_rate_constant()
    emission = {b.center: _bin_amplitudes(b, diagram, c) for b in bins}
    return Liouvillian(matrix=liou, dim=d, energies=diagram.energies.copy(),
                       decay=rates.sum(axis=1), rates=rates.copy(),
                       jumps=tuple(jumps), dephasing=model.dephasing,
                       bins=bins, emission=emission,
                       coherent_scale=coherent_scale, rate_constant=c)


def propagate(liou: Liouvillian, rho0: np.ndarray, t: float) -> np.ndarray:
    """rho(t) from the matrix exponential of the Liouvillian."""
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    rho0 = np.asarray(rho0, dtype=complex)
    if abs(np.trace(rho0) - 1.0) > 1e-9:
        raise ValueError("initial state must have unit trace")
    if t == 0:
        return rho0.copy()
    prop = scipy.linalg.expm(liou.matrix * t)
    return (prop @ rho0.reshape(-1)).reshape(rho0.shape)


def initial_state(diagram: LevelDiagram, index: int = None) -> np.ndarray:
    """Pure density matrix of one eigenstate; defaults to the top of the ladder."""
    if index is None:
        index = diagram.dim - 1
    rho = np.zeros((diagram.dim, diagram.dim), dtype=complex)
    rho[index, index] = 1.0
    return rho


def component_groups(liou: Liouvillian,
                     tol: float = FREQUENCY_MERGE_TOL) -> list:
    """Partition density-matrix components (i, j) by frequency E_i - E_j.

    The secular Liouvillian never couples components across groups, so
    each group evolves under its own closed sub-generator.  The
    zero-frequency group contains all populations (plus coherences within
    degenerate subspaces); for a non-degenerate spectrum every other
    group is a single coherence.
    """
    e = liou.energies
    items = [(float(e[i] - e[j]), (i, j))
             for i in range(liou.dim) for j in range(liou.dim)]
    return _cluster(items, tol)


class _GroupPropagator:
    """Per-group matrix exponentials of the Liouvillian for one time step."""

    def __init__(self, liou: Liouvillian, h: float, groups: list):
        d = liou.dim
        self.groups = groups
        self.group_of = {}
        self.mats = []
        for gid, comps in enumerate(groups):
            idx = [i * d + j for (i, j) in comps]
            sub = liou.matrix[np.ix_(idx, idx)]
            self.mats.append(scipy.linalg.expm(sub * h))
            for comp in comps:
                self.group_of[comp] = gid


class _CorrelatorState:
    """Correlator object sampled on the time grid, sparse over components.

    Tracks only the density-matrix components reachable from the emission
    sandwiches, always activating whole frequency groups so propagation
    stays closed.  data has shape (n_samples, n_active_components).
    """

    def __init__(self, n_samples: int, prop: _GroupPropagator):
        self.n = n_samples
        self.prop = prop
        self.comps = []
        self.index = {}
        self.active_groups = []
        self.data = np.zeros((n_samples, 0), dtype=complex)

    def activate(self, comp) -> int:
        """Ensure comp's whole frequency group is tracked; return its column."""
        col = self.index.get(comp)
        if col is not None:
            return col
        gid = self.prop.group_of[comp]
        start = len(self.comps)
        members = self.prop.groups[gid]
        for member in members:
            self.index[member] = len(self.comps)
            self.comps.append(member)
        self.active_groups.append((gid, start))
        self.data = np.hstack(
            [self.data, np.zeros((self.n, len(members)), dtype=complex)])
        return self.index[comp]

    def column(self, comp):
        col = self.index.get(comp)
        return None if col is None else self.data[:, col]

    def step_matrix(self) -> np.ndarray:
        """Block-diagonal one-step propagator over the active columns."""
        k = len(self.comps)
        out = np.zeros((k, k), dtype=complex)
        for gid, start in self.active_groups:
            size = len(self.prop.groups[gid])
            out[start:start + size, start:start + size] = self.prop.mats[gid]
        return out

    def traces(self) -> np.ndarray:
        total = np.zeros(self.n, dtype=complex)
        for comp, col in self.index.items():
            if comp[0] == comp[1]:
                total += self.data[:, col]
        return total


def _apply_sandwich(state: _CorrelatorState, entries_b: list,
                    entries_a: list) -> _CorrelatorState:
    """B rho A^dag with the scalar emission amplitudes of two bins.

    entries are (lower, upper, amplitude) triples of one frequency bin.
    """
    out = _CorrelatorState(state.n, state.prop)
    for (mb, lb, wb) in entries_b:
        for (ma, la, wa) in entries_a:
            coeff = wb * wa
            if coeff == 0.0:
                continue
            src = state.column((lb, la))
            if src is None:
                continue
            col = out.activate((mb, ma))
            out.data[:, col] += coeff * src
    return out


def _trapezoid_convolution(state: _CorrelatorState, phase: complex,
                           h: float) -> _CorrelatorState:
    """J(t_k) = int_0^{t_k} U(t_k - s) w(s) ds by trapezoid, streamed in k."""
    out = _CorrelatorState(state.n, state.prop)
    for comp in state.comps:
        out.activate(comp)
    cols = [out.index[c] for c in state.comps]
    step = phase * out.step_matrix()
    w = np.zeros((state.n, len(out.comps)), dtype=complex)
    w[:, cols] = state.data
    stepped = w @ step.T
    run = np.zeros(len(out.comps), dtype=complex)
    half_h = 0.5 * h
    step_t = step.T
    for k in range(1, state.n):
        run = run @ step_t + half_h * (stepped[k - 1] + w[k])
        out.data[k] = run
    return out


def photon_block(liou: Liouvillian, rho0: np.ndarray, sequences: list,
                 t_max: float, n_grid: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """K x K photon density-matrix block over the given frequency sequences.

    Every sequence is a tuple of frequency-bin centers of equal length P.
    The (a, b) entry is the iterated-trapezoid simplex integral of the
    regression correlator over ordered emission times on a uniform grid;
    the block is normalized to unit trace.  rho0 must be diagonal in the
    eigenbasis (the cascade always starts from an eigenstate population).
    """
    k = len(sequences)
    lengths = {len(s) for s in sequences}
    if len(lengths) != 1:
        raise ValueError("all frequency sequences must have equal length")
    p_photons = lengths.pop()
    if p_photons < 1:
        raise ValueError("sequences must contain at least one photon")
    if t_max <= 0 or n_grid < 2:
        raise ValueError("need positive horizon and at least 2 grid points")
    rho0 = np.asarray(rho0, dtype=complex)
    if np.abs(rho0 - np.diag(rho0.diagonal())).max() > 1e-12:
        raise ValueError("initial state must be diagonal in the eigenbasis")

    d = liou.dim
    h = t_max / n_grid
    n = n_grid + 1
    prop = _GroupPropagator(liou, h, component_groups(liou))

    # level 0: free decay of the initial state, sampled on the grid
    base = _CorrelatorState(n, prop)
    for i in range(d):
        if rho0[i, i] != 0:
            col = base.activate((i, i))
            base.data[0, col] = rho0[i, i]
    step0_t = base.step_matrix().T
    for i in range(1, n):
        base.data[i] = base.data[i - 1] @ step0_t

    entries = {f: liou.emission_entries(f)
               for seq in sequences for f in seq}

    block = np.empty((k, k), dtype=complex)
    for a in range(k):
        for b in range(k):
            seq_a, seq_b = sequences[a], sequences[b]
            state = _apply_sandwich(base, entries[seq_b[0]], entries[seq_a[0]])
            for j in range(1, p_photons):
                psi = (sum(seq_b[:j]) - sum(seq_a[:j])) / liou.coherent_scale
                phase = np.exp(-1j * psi * h)
                conv = _trapezoid_convolution(state, phase, h)
                state = _apply_sandwich(conv, entries[seq_b[j]],
                                        entries[seq_a[j]])
            block[a, b] = trapezoid(state.traces(), dx=h)

    total = np.trace(block).real
    if total <= 0:
        raise AccuracyError("photon block has nonpositive trace")
    return block / total


def converged_photon_block(liou: Liouvillian, rho0: np.ndarray, sequences: list,
                           t_max: float, n_grid: int = DEFAULT_GRID_POINTS,
                           tol: float = GRID_CONVERGENCE_TOL,
                           max_doublings: int = 12):
    """Double the grid until every block entry moves by less than tol.

    Returns (block, info) where info records the final grid and the last
    change.  Raises AccuracyError if the doubling budget is exhausted.
    """
    block = photon_block(liou, rho0, sequences, t_max, n_grid)
    for _ in range(max_doublings):
        n_grid *= 2
        finer = photon_block(liou, rho0, sequences, t_max, n_grid)
        delta = np.abs(finer - block).max()
        block = finer
        if delta < tol:
            return block, {"n_grid": n_grid, "max_change": float(delta)}
    raise AccuracyError(f"photon block not converged at {n_grid} grid points")


def population_trajectories(liou: Liouvillian, rho0: np.ndarray,
                            t_grid: np.ndarray) -> np.ndarray:
    """Diagonal of rho(t) on a uniform grid, shape (len(t_grid), D)."""
    t_grid = np.asarray(t_grid, dtype=float)
    steps = np.diff(t_grid)
    if steps.size and not np.allclose(steps, steps[0]):
        raise ValueError("time grid must be uniform")
    d = liou.dim
    out = np.empty((len(t_grid), d))
    v = np.asarray(rho0, dtype=complex).reshape(-1)
    prop = scipy.linalg.expm(liou.matrix * steps[0]) if steps.size else None
    for i in range(len(t_grid)):
        out[i] = v.reshape(d, d).diagonal().real
        if i + 1 < len(t_grid):
            v = prop @ v
    return out
