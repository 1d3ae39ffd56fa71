"""Fixed-electron-number fermionic Fock basis over 2N orbitals.

Each emitter contributes a ground and an excited orbital, and one electron,
so the physical sector has N electrons distributed over 2N spinless
orbitals (dimension C(2N, N)).  Bilinear operators a^dag_p a_q are
represented as dense integer matrices in this sector with the standard
ordered-orbital (Jordan-Wigner) sign convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class OrbitalKind(Enum):
    GROUND = "ground"
    EXCITED = "excited"


@dataclass(frozen=True)
class OrbitalIndex:
    """A single orbital, addressed by emitter and ground/excited kind.

    The global orbital ordering is emitter-major with the ground orbital
    before the excited one: (g0, e0, g1, e1, ...).
    """

    emitter: int
    kind: OrbitalKind

    def __post_init__(self):
        if self.emitter < 0:
            raise ValueError(f"emitter index must be >= 0, got {self.emitter}")

    @property
    def position(self) -> int:
        """Position of this orbital in the global ordering."""
        return 2 * self.emitter + (1 if self.kind is OrbitalKind.EXCITED else 0)


def ground(emitter: int) -> OrbitalIndex:
    return OrbitalIndex(emitter, OrbitalKind.GROUND)


def excited(emitter: int) -> OrbitalIndex:
    return OrbitalIndex(emitter, OrbitalKind.EXCITED)


@dataclass(frozen=True)
class FockBasis:
    """All N-electron occupation states of 2N orbitals, lexicographically sorted."""

    n_emitters: int
    states: tuple = field(repr=False)

    @property
    def n_orbitals(self) -> int:
        return 2 * self.n_emitters

    @property
    def n_electrons(self) -> int:
        return self.n_emitters

    @property
    def dim(self) -> int:
        return len(self.states)

    def index(self, state) -> int:
        return self._lookup[tuple(state)]

    @property
    def _lookup(self):
        # cached lazily on first use; frozen dataclass, so go through __dict__
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = {s: i for i, s in enumerate(self.states)}
            self.__dict__["_lookup_cache"] = cache
        return cache


def enumerate_basis(n_emitters: int) -> FockBasis:
    """Enumerate the N-electron sector of 2N orbitals.

    Returns C(2N, N) occupation bitstrings (tuples of 0/1), sorted
    lexicographically.  For N=2 this is the 6-state basis of two coupled
    two-level emitters.
    """
    if n_emitters < 1:
        raise ValueError(f"n_emitters must be >= 1, got {n_emitters}")
    n_orb = 2 * n_emitters
    states = []
    for occupied in itertools.combinations(range(n_orb), n_emitters):
        bits = [0] * n_orb
        for o in occupied:
            bits[o] = 1
        states.append(tuple(bits))
    states.sort()
    return FockBasis(n_emitters=n_emitters, states=tuple(states))


def bilinear_matrix(create: OrbitalIndex, annihilate: OrbitalIndex,
                    basis: FockBasis) -> np.ndarray:
    """Matrix of a^dag_p a_q in the fixed-number basis.

    Entries are 0 or +-1; the sign is the fermionic parity of the occupied
    orbitals passed over by the two ladder operators.
    """
    p = create.position
    q = annihilate.position
    n_orb = basis.n_orbitals
    if p >= n_orb or q >= n_orb:
        raise ValueError(
            f"orbital positions ({p}, {q}) out of range for {n_orb} orbitals")
    dim = basis.dim
    mat = np.zeros((dim, dim), dtype=np.int64)
    for col, state in enumerate(basis.states):
        if state[q] == 0:
            continue
        sign = (-1) ** sum(state[:q])
        mid = list(state)
        mid[q] = 0
        if mid[p] == 1:
            continue
        sign *= (-1) ** sum(mid[:p])
        mid[p] = 1
        mat[basis.index(mid), col] = sign
    return mat


def annihilation_matrix(orbital: int, n_orbitals: int) -> np.ndarray:
    """Ladder operator a_orbital over the full 2^n_orbitals Fock space.

    Used by the anticommutation property tests; the sector-restricted
    bilinears above must agree with products of these projected onto the
    fixed-number sector.
    """
    dim = 2 ** n_orbitals
    mat = np.zeros((dim, dim), dtype=np.int64)
    states = list(itertools.product((0, 1), repeat=n_orbitals))
    lookup = {s: i for i, s in enumerate(states)}
    for col, state in enumerate(states):
        if state[orbital] == 0:
            continue
        sign = (-1) ** sum(state[:orbital])
        out = list(state)
        out[orbital] = 0
        mat[lookup[tuple(out)], col] = sign
    return mat


def sector_projector(basis: FockBasis) -> np.ndarray:
    """Rectangular map from the full Fock space onto the fixed-N sector."""
    full = list(itertools.product((0, 1), repeat=basis.n_orbitals))
    lookup = {s: i for i, s in enumerate(full)}
    proj = np.zeros((basis.dim, len(full)), dtype=np.int64)
    for row, state in enumerate(basis.states):
        proj[row, lookup[state]] = 1
    return proj


def number_operator(basis: FockBasis, kind: OrbitalKind | None = None) -> np.ndarray:
    """Total occupation of all orbitals (or of one kind) as a diagonal matrix."""
    diag = np.zeros(basis.dim, dtype=np.int64)
    for i, state in enumerate(basis.states):
        if kind is None:
            diag[i] = sum(state)
        else:
            offset = 1 if kind is OrbitalKind.EXCITED else 0
            diag[i] = sum(state[offset::2])
    return np.diag(diag)
