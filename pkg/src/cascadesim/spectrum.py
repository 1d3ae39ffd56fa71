"""Total Hamiltonian assembly, diagonalization, and level classification.

The total Hamiltonian is H0 + H_dip + H_hyb in the fixed-electron-number
Fock basis.  The dipole-dipole part retains all double (de-)excitation
products, i.e. no rotating-wave truncation.  Diagonalizing and rotating
the total dipole operator into the eigenbasis yields the level diagram:
eigenenergies, transition dipole vectors d_lm, and a bright/dark
classification of every state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coupling import CouplingSpec, EmitterConfig, dipole_coupling
from .manybody import (FockBasis, OrbitalKind, bilinear_matrix,
                       enumerate_basis, excited, ground, number_operator)

#: Relative threshold on |d_lm|^2 separating numerical zeros from
#: physically allowed transitions.
BRIGHTNESS_THRESHOLD = 1e-10

HERMITICITY_RTOL = 1e-12


@dataclass(frozen=True)
class CompositeModel:
    """Full physical specification of a composite emitter.

    rate_constant is the prefactor C in gamma_r^{lm} = C |d_lm|^2.  When
    None it is chosen so that the bare rate of the reference emitter
    (index 0) is exactly 1, i.e. all times are measured in units of
    1/gamma_0.  dephasing is the constant pure-dephasing rate in the same
    units.
    """

    emitters: tuple
    coupling: CouplingSpec
    rate_constant: float = None
    dephasing: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "emitters", tuple(self.emitters))
        if len(self.emitters) < 1:
            raise ValueError("need at least one emitter")
        if self.rate_constant is not None and self.rate_constant <= 0:
            raise ValueError("rate_constant must be positive")
        if self.dephasing < 0:
            raise ValueError("dephasing rate must be nonnegative")
        g = self.coupling.hybridization
        if g is not None and g.shape[0] != len(self.emitters):
            raise ValueError("hybridization matrix size does not match emitter count")

    @property
    def n_emitters(self) -> int:
        return len(self.emitters)

    def effective_rate_constant(self) -> float:
        if self.rate_constant is not None:
            return self.rate_constant
        d_ref = self.emitters[0].dipole_magnitude
        if d_ref == 0.0:
            raise ValueError("reference emitter has zero dipole; set rate_constant explicitly")
        return 1.0 / d_ref ** 2


@dataclass(frozen=True)
class LevelDiagram:
    """Eigenbasis of a composite emitter.

    dipoles[l, m, :] is the transition dipole vector between eigenstates l
    and m (e*Bohr), Hermitian componentwise.  labels classifies each state
    as ground / bright / dark / multiply-excited.
    """

    energies: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)
    dipoles: np.ndarray = field(repr=False)
    excitations: np.ndarray
    labels: tuple = ()
    basis: FockBasis = None

    @property
    def dim(self) -> int:
        return len(self.energies)

    @property
    def dipole_sq(self) -> np.ndarray:
        """|d_lm|^2 matrix."""
        return np.sum(np.abs(self.dipoles) ** 2, axis=2)

    @property
    def ground_index(self) -> int:
        return 0


def dipole_flip_operator(i: int, basis: FockBasis) -> np.ndarray:
    """a^dag_e a_g + a^dag_g a_e for emitter i (the unit-dipole raising+lowering part)."""
    up = bilinear_matrix(excited(i), ground(i), basis)
    return up + up.T


def build_hamiltonian(model: CompositeModel, basis: FockBasis = None) -> np.ndarray:
    """Assemble H = H0 + H_dip + H_hyb in the fixed-N Fock basis (eV)."""
    n = model.n_emitters
    if basis is None:
        basis = enumerate_basis(n)
    dim = basis.dim
    h = np.zeros((dim, dim), dtype=float)

    for i, em in enumerate(model.emitters):
        n_e = bilinear_matrix(excited(i), excited(i), basis)
        h += em.omega * n_e

    if model.coupling.dipole_coupling_enabled:
        flips = [dipole_flip_operator(i, basis) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                j_ij = dipole_coupling(model.emitters[i], model.emitters[j],
                                       model.coupling.epsilon_r)
                if j_ij != 0.0:
                    h += j_ij * (flips[i] @ flips[j])

    g_e = model.coupling.hybridization
    if g_e is not None:
        for i in range(n):
            for j in range(i + 1, n):
                if g_e[i, j] != 0.0:
                    hop = bilinear_matrix(excited(i), excited(j), basis)
                    h += g_e[i, j] * (hop + hop.T)
    g_g = model.coupling.ground_hybridization
    if g_g is not None:
        for i in range(n):
            for j in range(i + 1, n):
                if g_g[i, j] != 0.0:
                    hop = bilinear_matrix(ground(i), ground(j), basis)
                    h += g_g[i, j] * (hop + hop.T)
    return h


def total_dipole_operator(model: CompositeModel, basis: FockBasis) -> np.ndarray:
    """Cartesian components of the total dipole operator, shape (3, D, D)."""
    dim = basis.dim
    comps = np.zeros((3, dim, dim))
    for i, em in enumerate(model.emitters):
        flip = dipole_flip_operator(i, basis)
        for c in range(3):
            comps[c] += em.dipole[c] * flip
    return comps


def diagonalize(h: np.ndarray, model: CompositeModel,
                basis: FockBasis = None) -> LevelDiagram:
    """Diagonalize H and rotate the total dipole operator to the eigenbasis."""
    if basis is None:
        basis = enumerate_basis(model.n_emitters)
    scale = max(np.abs(h).max(), 1.0)
    if not np.allclose(h, h.conj().T, rtol=0, atol=HERMITICITY_RTOL * scale):
        raise RuntimeError("Hamiltonian is not Hermitian")
    energies, vecs = np.linalg.eigh(h)

    comps = total_dipole_operator(model, basis)
    dipoles = np.empty((basis.dim, basis.dim, 3))
    for c in range(3):
        dipoles[:, :, c] = vecs.T @ comps[c] @ vecs

    n_exc = number_operator(basis, OrbitalKind.EXCITED)
    excitations = np.rint(np.einsum("il,ij,jl->l", vecs, n_exc, vecs)).astype(int)

    diagram = LevelDiagram(energies=energies, eigenvectors=vecs, dipoles=dipoles,
                           excitations=excitations, basis=basis)
    return classify_levels(diagram)


def classify_levels(diagram: LevelDiagram,
                    threshold: float = BRIGHTNESS_THRESHOLD) -> LevelDiagram:
    """Tag every eigenstate.

    A state is bright iff at least one transition to a lower state carries
    |d_lm|^2 above threshold (relative to the largest |d|^2 anywhere in
    the diagram).
    """
    d2 = diagram.dipole_sq
    d2_max = d2.max()
    cut = threshold * d2_max if d2_max > 0 else 0.0
    labels = []
    for l in range(diagram.dim):
        if l == diagram.ground_index:
            labels.append("ground")
        elif diagram.excitations[l] >= 2:
            labels.append("multiply-excited")
        else:
            lower = diagram.energies < diagram.energies[l]
            bright = bool(np.any(d2[l, lower] > cut))
            labels.append("bright" if bright else "dark")
    return LevelDiagram(energies=diagram.energies,
                        eigenvectors=diagram.eigenvectors,
                        dipoles=diagram.dipoles,
                        excitations=diagram.excitations,
                        labels=tuple(labels),
                        basis=diagram.basis)


def level_diagram_record(diagram: LevelDiagram, model: CompositeModel,
                         threshold: float = BRIGHTNESS_THRESHOLD) -> str:
    """Structured text export: one state per line, then one transition per line."""
    c = model.effective_rate_constant()
    d2 = diagram.dipole_sq
    cut = threshold * d2.max() if d2.max() > 0 else 0.0
    lines = ["# state index  energy_eV  excitation  label"]
    for l in range(diagram.dim):
        lines.append(f"state {l} {diagram.energies[l]:.17g} "
                     f"{diagram.excitations[l]} {diagram.labels[l]}")
    lines.append("# transition l m |d_lm|^2_(e*Bohr)^2 gamma_r_lm")
    for l in range(diagram.dim):
        for m in range(diagram.dim):
            if diagram.energies[l] > diagram.energies[m] and d2[l, m] > cut:
                lines.append(f"transition {l} {m} {d2[l, m]:.17g} "
                             f"{c * d2[l, m]:.17g}")
    return "\n".join(lines) + "\n"
