"""
Truncated Hilbert space of a Lambda atom in a two-mode cavity.

Basis states are product states |atom> |n_a> |n_b>.  The flat index is
ordered with the atomic level slowest, then n_a, then n_b fastest::

    index = (level * (n_max_a + 1) + n_a) * (n_max_b + 1) + n_b

with levels ordered g, e, f, k.  This ordering is frozen: reports and CSV
files depend on it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .errors import BoundsError, ContractError

HERMITIAN_TOL = 1e-12


class Level(enum.IntEnum):
    """Atomic levels. ``k`` is the auxiliary metastable level."""

    g = 0
    e = 1
    f = 2
    k = 3


LevelLike = Union[Level, str, int]


def as_level(level: LevelLike) -> Level:
    if isinstance(level, Level):
        return level
    if isinstance(level, str):
        try:
            return Level[level]
        except KeyError:
            raise ContractError(f"unknown atomic level {level!r}") from None
    try:
        return Level(level)
    except ValueError:
        raise ContractError(f"unknown atomic level {level!r}") from None


@dataclass(frozen=True)
class BasisIndex:
    """Label of a product basis state |atom, n_a, n_b>."""

    atom: Level
    n_a: int
    n_b: int

    def __post_init__(self):
        object.__setattr__(self, "atom", as_level(self.atom))

    def __str__(self):
        return f"{self.atom.name}{self.n_a}{self.n_b}"

    @classmethod
    def parse(cls, text: str) -> "BasisIndex":
        """Inverse of ``str``: ``'f01'`` -> |f, 0, 1>."""
        if len(text) != 3 or not text[1:].isdigit():
            raise ValueError(f"cannot parse basis label {text!r}")
        return cls(text[0], int(text[1]), int(text[2]))


def label(atom: LevelLike, n_a: int, n_b: int) -> BasisIndex:
    return BasisIndex(as_level(atom), n_a, n_b)


@dataclass(frozen=True)
class HilbertSpec:
    """Truncation of the atom + two-mode Fock space.

    ``n_levels`` is 3 for {g, e, f} or 4 when the auxiliary level k is
    included.  Each mode keeps photon numbers ``0..n_max``.
    """

    n_levels: int = 3
    n_max_a: int = 2
    n_max_b: int = 2

    def __post_init__(self):
        if self.n_levels not in (3, 4):
            raise BoundsError("n_levels", self.n_levels, "3 or 4")
        if self.n_max_a < 0:
            raise BoundsError("n_max_a", self.n_max_a, ">= 0")
        if self.n_max_b < 0:
            raise BoundsError("n_max_b", self.n_max_b, ">= 0")

    @property
    def dim(self) -> int:
        return self.n_levels * (self.n_max_a + 1) * (self.n_max_b + 1)

    @property
    def levels(self) -> tuple[Level, ...]:
        return tuple(Level(i) for i in range(self.n_levels))

    def labels(self) -> Iterator[BasisIndex]:
        """All basis labels in index order."""
        for lv, na, nb in itertools.product(
            self.levels, range(self.n_max_a + 1), range(self.n_max_b + 1)
        ):
            yield BasisIndex(lv, na, nb)

    def require_single_photons(self):
        """Gate scenarios need |1_a> and |1_b> to exist."""
        if self.n_max_a < 1 or self.n_max_b < 1:
            raise ContractError(
                "gate scenarios need n_max_a >= 1 and n_max_b >= 1 "
                f"(got {self.n_max_a}, {self.n_max_b})"
            )


def basis_index(spec: HilbertSpec, lab: BasisIndex) -> int:
    """Flat index of ``lab``; raises BoundsError naming the bad field."""
    if int(lab.atom) >= spec.n_levels:
        raise BoundsError("atom", lab.atom.name, [lv.name for lv in spec.levels])
    if not 0 <= lab.n_a <= spec.n_max_a:
        raise BoundsError("n_a", lab.n_a, f"0..{spec.n_max_a}")
    if not 0 <= lab.n_b <= spec.n_max_b:
        raise BoundsError("n_b", lab.n_b, f"0..{spec.n_max_b}")
    return (int(lab.atom) * (spec.n_max_a + 1) + lab.n_a) * (spec.n_max_b + 1) + lab.n_b


def basis_label(spec: HilbertSpec, index: int) -> BasisIndex:
    """Inverse of :func:`basis_index`."""
    if not 0 <= index < spec.dim:
        raise BoundsError("index", index, f"0..{spec.dim - 1}")
    rest, n_b = divmod(index, spec.n_max_b + 1)
    level, n_a = divmod(rest, spec.n_max_a + 1)
    return BasisIndex(Level(level), n_a, n_b)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StateVector:
    """Complex amplitudes over the basis of ``spec``."""

    amplitudes: np.ndarray
    spec: HilbertSpec

    def __post_init__(self):
        amps = _frozen(self.amplitudes)
        if amps.shape != (self.spec.dim,):
            raise ContractError(
                f"state has shape {amps.shape}, expected ({self.spec.dim},)"
            )
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, lab: BasisIndex) -> complex:
        return complex(self.amplitudes[basis_index(self.spec, lab)])

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def overlap(self, other: "StateVector") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense square matrix, optionally flagged Hermitian.

    Setting ``hermitian=True`` on a matrix that is not Hermitian to within
    1e-12 raises ContractError.
    """

    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        m = _frozen(self.entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ContractError(f"operator must be square, got shape {m.shape}")
        if self.hermitian:
            dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
            if dev > HERMITIAN_TOL:
                raise ContractError(f"matrix flagged Hermitian deviates by {dev:.3e}")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def dag(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, self.hermitian)

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries @ other.entries)
        if isinstance(other, StateVector):
            return StateVector(self.entries @ other.amplitudes, other.spec)
        return self.entries @ np.asarray(other)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(
            self.entries + other.entries, self.hermitian and other.hermitian
        )

    def scaled(self, factor: complex) -> "OperatorMatrix":
        herm = self.hermitian and complex(factor).imag == 0
        return OperatorMatrix(self.entries * factor, herm)

    def restrict(self, indices) -> np.ndarray:
        """Sub-block on the given basis indices."""
        idx = np.asarray(indices)
        return self.entries[np.ix_(idx, idx)]


def identity(spec: HilbertSpec) -> OperatorMatrix:
    return OperatorMatrix(np.eye(spec.dim), hermitian=True)


def _mode_annihilator(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), k=1)


def annihilation_matrix(spec: HilbertSpec, mode: str) -> OperatorMatrix:
    """Annihilation operator of mode ``'a'`` or ``'b'`` on the full space."""
    eye_atom = np.eye(spec.n_levels)
    if mode == "a":
        op = np.kron(eye_atom, np.kron(_mode_annihilator(spec.n_max_a), np.eye(spec.n_max_b + 1)))
    elif mode == "b":
        op = np.kron(eye_atom, np.kron(np.eye(spec.n_max_a + 1), _mode_annihilator(spec.n_max_b)))
    else:
        raise ContractError(f"unknown cavity mode {mode!r} (expected 'a' or 'b')")
    return OperatorMatrix(op)


def number_matrix(spec: HilbertSpec, mode: str) -> OperatorMatrix:
    a = annihilation_matrix(spec, mode).entries
    return OperatorMatrix(a.conj().T @ a, hermitian=True)


def atom_transition_matrix(spec: HilbertSpec, bra: LevelLike, ket: LevelLike) -> OperatorMatrix:
    """The dyadic |bra><ket| on the atom, identity on both modes."""
    bra, ket = as_level(bra), as_level(ket)
    for lv in (bra, ket):
        if int(lv) >= spec.n_levels:
            raise ContractError(f"level {lv.name} not present in a {spec.n_levels}-level space")
    dyad = np.zeros((spec.n_levels, spec.n_levels))
    dyad[int(bra), int(ket)] = 1.0
    photons = np.eye((spec.n_max_a + 1) * (spec.n_max_b + 1))
    return OperatorMatrix(np.kron(dyad, photons), hermitian=(bra == ket))


def make_basis_state(spec: HilbertSpec, lab: BasisIndex) -> StateVector:
    amps = np.zeros(spec.dim, dtype=complex)
    amps[basis_index(spec, lab)] = 1.0
    return StateVector(amps, spec)
