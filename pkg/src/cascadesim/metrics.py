"""Entanglement scoring of emitted photon states.

Efficiency is the fraction of emitted population landing in the target
codeword paths; fidelity is the overlap of the subspace-normalized photon
block with a pure target state; the minimum pairwise energy difference
among the logical frequencies bounds the linewidth tolerable for
frequency-resolved detection.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PSD_TOLERANCE = 1e-9
HERMITICITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class LogicalTarget:
    """K codeword frequency sequences with target amplitudes."""

    sequences: tuple
    amplitudes: tuple = None
    codewords: tuple = None

    def __post_init__(self):
        seqs = tuple(tuple(float(f) for f in s) for s in self.sequences)
        object.__setattr__(self, "sequences", seqs)
        lengths = {len(s) for s in seqs}
        if len(lengths) != 1:
            raise ValueError("all codeword sequences must have equal length")
        k = len(seqs)
        if self.amplitudes is None:
            object.__setattr__(self, "amplitudes",
                               tuple([1.0 / np.sqrt(k)] * k))
        amp = np.asarray(self.amplitudes, dtype=complex)
        norm = np.linalg.norm(amp)
        if not np.isclose(norm, 1.0):
            raise ValueError("target amplitudes must be normalized")
        if self.codewords is None:
            p = len(seqs[0])
            object.__setattr__(self, "codewords",
                               tuple(str(i) * p for i in range(k)))

    @property
    def n_codewords(self) -> int:
        return len(self.sequences)

    @property
    def n_photons(self) -> int:
        return len(self.sequences[0])


@dataclass(frozen=True)
class EntanglementReport:
    eta: float
    fidelity: float
    fidelity_phase_opt: float
    optimal_phase: float
    delta_e_min: float
    path_weights: tuple
    missing_codewords: tuple = ()
    metadata: dict = field(default_factory=dict)


def default_logical_target(paths: list, n_codewords: int,
                           n_photons: int = None) -> LogicalTarget:
    """Build the equal-amplitude target from the dominant decay paths.

    Takes the n_codewords highest-weight (frequency-merged) paths,
    optionally restricted to a photon count, orders them by first-photon
    energy descending, and assigns repeated-digit codewords.
    """
    candidates = [p for p in paths
                  if n_photons is None or p.n_photons == n_photons]
    if len(candidates) < n_codewords:
        raise ValueError(
            f"need {n_codewords} codeword paths, found {len(candidates)}")
    top = sorted(candidates, key=lambda p: (-p.weight, p.frequencies))[:n_codewords]
    lengths = {p.n_photons for p in top}
    if len(lengths) != 1:
        raise ValueError("dominant paths emit different photon counts; "
                         "pass n_photons to select a cascade depth")
    top.sort(key=lambda p: -p.frequencies[0])
    return LogicalTarget(sequences=tuple(p.frequencies for p in top))


def _sequences_match(a, b, tol=1e-9) -> bool:
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(a, b))


def efficiency(paths: list, target: LogicalTarget):
    """eta = summed weight of the codeword paths, plus any absent codewords.

    paths must carry normalized weights (the diagonal of the photon
    density matrix).  A codeword with no matching path contributes zero
    and is reported rather than raised.
    """
    eta = 0.0
    missing = []
    for code, seq in zip(target.codewords, target.sequences):
        match = next((p for p in paths if _sequences_match(p.frequencies, seq)), None)
        if match is None:
            missing.append(code)
        else:
            eta += match.weight
    return float(eta), tuple(missing)


def _validate_block(block: np.ndarray) -> np.ndarray:
    block = np.asarray(block, dtype=complex)
    if not np.allclose(block, block.conj().T, atol=HERMITICITY_TOLERANCE):
        raise ValueError("photon block is not Hermitian")
    eigvals = np.linalg.eigvalsh(block)
    if eigvals.min() < -PSD_TOLERANCE:
        raise ValueError(f"photon block not PSD: min eigenvalue {eigvals.min()}")
    trace = np.trace(block).real
    if trace <= 0:
        raise ValueError("photon block has nonpositive trace")
    return block / trace


def fidelity(block: np.ndarray, target: LogicalTarget):
    """Overlap with the pure target state, fixed-phase and phase-optimized.

    The block is renormalized over the target subspace, so for the pure
    target this equals the Uhlmann fidelity.  The optimized variant
    maximizes over a relative phase on the second codeword amplitude.

    Returns (fidelity, fidelity_phase_opt, optimal_phase).
    """
    rho = _validate_block(block)
    k = target.n_codewords
    if rho.shape != (k, k):
        raise ValueError(f"block shape {rho.shape} does not match {k} codewords")
    amp = np.asarray(target.amplitudes, dtype=complex)
    fixed = float(np.real(amp.conj() @ rho @ amp))

    # split F(phi) into constant and e^{i phi} cross terms on amplitude 1
    others = [q for q in range(k) if q != 1]
    const = float(np.real(amp[1].conj() * rho[1, 1] * amp[1]))
    const += float(np.real(sum(amp[p].conj() * rho[p, q] * amp[q]
                               for p in others for q in others)))
    z = sum(amp[1].conj() * rho[1, q] * amp[q] for q in others)
    best = const + 2.0 * abs(z)
    phase = float(-np.angle(z)) if abs(z) > 0 else 0.0
    return fixed, float(best), phase


def delta_e_min(target: LogicalTarget) -> float:
    """Minimum pairwise energy difference over all logical frequencies."""
    freqs = sorted(f for seq in target.sequences for f in seq)
    if len(freqs) < 2:
        return 0.0
    return float(min(b - a for a, b in zip(freqs, freqs[1:])))
