"""
Hamiltonians and amplitude equations of the cavity Raman model.

Units: hbar = 1 and the reference coupling g = 1, so every rate is in units
of g and every time in units of 1/g.

Couplings are complex, ``g1 = g1_mag * exp(i phi1)`` on the |e><g| a arm and
``g2 = g2_mag * exp(i phi2)`` on the |e><f| b arm.  The full model is written
in the rotating frame where it is time independent::

    H = delta1 |e><e| + (delta1 - delta2) |f><f|
        + (g1 |e><g| a + g2 |e><f| b + h.c.)

Adiabatic elimination of |e> gives the effective Raman Hamiltonian with
Stark shifts; its |g><f| a^dag b coefficient is -conj(g1) g2 / delta1, which
makes ``exp(i phi) = g1 conj(g2) / |g1 g2|`` the phase picked up on the
|g, 1_a> -> |f, 1_b> transfer.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, replace

import numpy as np

from .errors import AdiabaticValidityWarning, ContractError, SingularParameterError
from .hilbert import (
    HilbertSpec,
    Level,
    OperatorMatrix,
    annihilation_matrix,
    atom_transition_matrix,
    label,
)

#: |Delta1| / |g1| below this triggers an adiabatic-validity warning.
ADIABATIC_RATIO = 5.0
RESONANCE_TOL = 1e-12


@dataclass(frozen=True)
class SystemParams:
    """Physical parameters in units of the reference coupling g."""

    g1_mag: float = 1.0
    g2_mag: float = 1.0
    phi1: float = 0.0
    phi2: float = 0.0
    delta1: float = 10.0
    delta2: float = 10.0
    kappa: float = 0.0

    def __post_init__(self):
        for name in ("g1_mag", "g2_mag"):
            if not getattr(self, name) > 0:
                raise ContractError(f"{name} must be > 0, got {getattr(self, name)!r}")
        if not self.kappa >= 0:
            raise ContractError(f"kappa must be >= 0, got {self.kappa!r}")
        for name, value in asdict(self).items():
            if not math.isfinite(value):
                raise ContractError(f"{name} must be finite, got {value!r}")

    @property
    def g1(self) -> complex:
        return self.g1_mag * np.exp(1j * self.phi1)

    @property
    def g2(self) -> complex:
        return self.g2_mag * np.exp(1j * self.phi2)

    @property
    def phi(self) -> float:
        """Relative coupling phase, exp(i phi) = g1 conj(g2) / |g1 g2|."""
        return self.phi1 - self.phi2

    @property
    def g_sq(self) -> float:
        """Effective g^2 = |g1||g2| used by the equal-coupling formulas."""
        return self.g1_mag * self.g2_mag

    @property
    def two_photon_detuning(self) -> float:
        return self.delta1 - self.delta2

    @property
    def resonant(self) -> bool:
        return abs(self.delta1 - self.delta2) <= RESONANCE_TOL * max(1.0, abs(self.delta1))

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class ManifoldSpec:
    """Initial photon numbers (n, mu) of the closed three-state manifold

    |g, n, mu>, |e, n-1, mu>, |f, n-1, mu+1>.
    """

    n: int = 1
    mu: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ContractError(f"manifold needs n >= 1, got {self.n}")
        if self.mu < 0:
            raise ContractError(f"manifold needs mu >= 0, got {self.mu}")

    def labels(self):
        return (
            label("g", self.n, self.mu),
            label("e", self.n - 1, self.mu),
            label("f", self.n - 1, self.mu + 1),
        )


@dataclass(frozen=True)
class DerivedRates:
    omega_big: float
    nu: float
    theta: float


def derived_rates(params: SystemParams, t: float = 0.0) -> DerivedRates:
    """Generalized Raman frequency, global phase rate and pulse area at ``t``."""
    _require_delta1(params)
    coupling = 2.0 * params.g_sq / params.delta1
    det = params.two_photon_detuning
    return DerivedRates(
        omega_big=math.hypot(coupling, det),
        nu=coupling - det,
        theta=coupling * t,
    )


def _require_delta1(params: SystemParams):
    if params.delta1 == 0:
        raise SingularParameterError("delta1 = 0 is singular for the effective model")


def check_adiabatic(params: SystemParams):
    """Warn when outside the large-detuning, near-resonant regime."""
    if abs(params.delta1) < ADIABATIC_RATIO * params.g1_mag:
        warnings.warn(
            f"|delta1| = {abs(params.delta1):g} < {ADIABATIC_RATIO:g} g1: "
            "adiabatic elimination is unreliable",
            AdiabaticValidityWarning,
            stacklevel=3,
        )
    if abs(params.two_photon_detuning) > params.g1_mag:
        warnings.warn(
            f"|delta1 - delta2| = {abs(params.two_photon_detuning):g} > g1: "
            "two-photon detuning is not small",
            AdiabaticValidityWarning,
            stacklevel=3,
        )


def full_rotated_hamiltonian(params: SystemParams, spec: HilbertSpec) -> OperatorMatrix:
    """Three-level, two-mode Hamiltonian in the time-independent rotating frame."""
    a = annihilation_matrix(spec, "a").entries
    b = annihilation_matrix(spec, "b").entries
    s_eg = atom_transition_matrix(spec, "e", "g").entries
    s_ef = atom_transition_matrix(spec, "e", "f").entries
    p_e = atom_transition_matrix(spec, "e", "e").entries
    p_f = atom_transition_matrix(spec, "f", "f").entries

    coupling = params.g1 * s_eg @ a + params.g2 * s_ef @ b
    h = params.delta1 * p_e + params.two_photon_detuning * p_f + coupling + coupling.conj().T
    return OperatorMatrix(h, hermitian=True)


def excitation_number(spec: HilbertSpec) -> OperatorMatrix:
    """|e><e| + a^dag a + b^dag b, conserved by the full model.

    |f> carries no extra excitation: the Raman step |g, n, mu> -> |f, n-1, mu+1>
    moves one photon from mode a into mode b.
    """
    n = atom_transition_matrix(spec, Level.e, Level.e).entries
    for mode in "ab":
        op = annihilation_matrix(spec, mode).entries
        n = n + op.conj().T @ op
    return OperatorMatrix(n, hermitian=True)


def amplitude_generator(params: SystemParams, manifold: ManifoldSpec) -> np.ndarray:
    """3x3 Hermitian matrix K with d' = -i K d on the (n, mu) manifold."""
    sn = math.sqrt(manifold.n)
    sm = math.sqrt(manifold.mu + 1)
    g1, g2 = params.g1, params.g2
    return np.array(
        [
            [0.0, np.conj(g1) * sn, 0.0],
            [g1 * sn, params.delta1, g2 * sm],
            [0.0, np.conj(g2) * sm, params.two_photon_detuning],
        ],
        dtype=complex,
    )


def amplitude_rhs(params: SystemParams, manifold: ManifoldSpec, d) -> np.ndarray:
    """Time derivative of (d1, d2, d3) for the three-state manifold."""
    return -1j * (amplitude_generator(params, manifold) @ np.asarray(d, dtype=complex))


def adiabatic_generator(params: SystemParams, manifold: ManifoldSpec) -> np.ndarray:
    """2x2 Hermitian matrix K with (d1, d3)' = -i K (d1, d3) after eliminating d2."""
    _require_delta1(params)
    sn = math.sqrt(manifold.n)
    sm = math.sqrt(manifold.mu + 1)
    g1, g2 = params.g1, params.g2
    inv = 1.0 / params.delta1
    return np.array(
        [
            [-abs(g1) ** 2 * manifold.n * inv, -np.conj(g1) * g2 * sn * sm * inv],
            [
                -np.conj(g2) * g1 * sn * sm * inv,
                -abs(g2) ** 2 * (manifold.mu + 1) * inv + params.two_photon_detuning,
            ],
        ],
        dtype=complex,
    )


def adiabatic_rhs(params: SystemParams, manifold: ManifoldSpec, d13) -> np.ndarray:
    """Time derivative of (d1, d3) in the adiabatic (d2' = 0) limit."""
    return -1j * (adiabatic_generator(params, manifold) @ np.asarray(d13, dtype=complex))


def effective_hamiltonian(
    params: SystemParams, spec: HilbertSpec, include_stark: bool = True
) -> OperatorMatrix:
    """Raman Hamiltonian after eliminating |e>, on the full truncated space.

    With ``include_stark`` the ground-level Stark shifts
    -|g1|^2/delta1 |g><g| a^dag a and -|g2|^2/delta1 |f><f| b^dag b and the
    two-photon detuning on |f> are kept.  Without it only the Raman exchange
    remains, which is defined at two-photon resonance only.
    """
    _require_delta1(params)
    if not include_stark and not params.resonant:
        raise ContractError(
            "Stark-free effective Hamiltonian requires two-photon resonance "
            f"(delta1 = delta2), got delta1={params.delta1!r}, delta2={params.delta2!r}"
        )
    check_adiabatic(params)

    a = annihilation_matrix(spec, "a").entries
    b = annihilation_matrix(spec, "b").entries
    ad, bd = a.conj().T, b.conj().T
    inv = 1.0 / params.delta1
    g1, g2 = params.g1, params.g2

    s_minus = atom_transition_matrix(spec, "g", "f").entries
    raman = -np.conj(g1) * g2 * inv * (s_minus @ ad @ b)
    h = raman + raman.conj().T
    if include_stark:
        p_g = atom_transition_matrix(spec, "g", "g").entries
        p_f = atom_transition_matrix(spec, "f", "f").entries
        h = h - abs(g1) ** 2 * inv * (p_g @ ad @ a) - abs(g2) ** 2 * inv * (p_f @ bd @ b)
        h = h + params.two_photon_detuning * p_f
    return OperatorMatrix(h, hermitian=True)


# --- two-qubit (atom x photonic qubit) picture -------------------------------

#: Qubit-subspace order: |g>|g_R>, |g>|e_R>, |f>|g_R>, |f>|e_R>, where
#: |g_R> = |0_a, 1_b> and |e_R> = |1_a, 0_b>.
QUBIT_LABELS = (label("g", 0, 1), label("g", 1, 0), label("f", 0, 1), label("f", 1, 0))

_SP = np.array([[0, 0], [1, 0]], dtype=complex)  # lower state -> upper state
_SZ = np.diag([-0.5, 0.5]).astype(complex)
_I2 = np.eye(2, dtype=complex)


def spin_operators():
    """(S+, S-, Sz, R+, R-, Rz) on the 4-dim qubit space.

    S acts on the atom with |f> up; R acts on the photon with |e_R> up, so
    R+ = a^dag b and Rz = (a^dag a - b^dag b) / 2.
    """
    s_p = np.kron(_SP, _I2)
    s_z = np.kron(_SZ, _I2)
    r_p = np.kron(_I2, _SP)
    r_z = np.kron(_I2, _SZ)
    return s_p, s_p.conj().T, s_z, r_p, r_p.conj().T, r_z


def spin_vectors():
    """Cartesian components ((Sx, Sy, Sz), (Rx, Ry, Rz))."""
    s_p, s_m, s_z, r_p, r_m, r_z = spin_operators()
    s = ((s_p + s_m) / 2, (s_p - s_m) / 2j, s_z)
    r = ((r_p + r_m) / 2, (r_p - r_m) / 2j, r_z)
    return s, r


def spin_dot() -> np.ndarray:
    s, r = spin_vectors()
    return sum(si @ ri for si, ri in zip(s, r))


def exchange_operator(phi: float = 0.0) -> np.ndarray:
    """Sx Rx + Sy Ry - Sz Rz + 1/4, with the flip-flop terms carrying phase phi."""
    s_p, s_m, s_z, r_p, r_m, r_z = spin_operators()
    flip = 0.5 * (np.exp(1j * phi) * s_p @ r_m + np.exp(-1j * phi) * s_m @ r_p)
    return flip - s_z @ r_z + 0.25 * np.eye(4)


def _phase_is_pi(phi: float) -> bool:
    return abs(np.exp(1j * phi) + 1.0) <= 1e-12


def spin_form_hamiltonian(params: SystemParams, theta_mode: str = "exchange") -> OperatorMatrix:
    """Effective Hamiltonian on the qubit subspace written with spin operators.

    ``exchange``: -(g^2/delta1)[S+R- + S-R+ - 2 SzRz + 1/2] + (delta1-delta2)(Sz + 1/2),
    with the relative coupling phase on the flip-flop terms.
    ``dot_product``: (2 g^2/delta) [S.R - 1/4], valid for g2 = -g1 at resonance.
    """
    _require_delta1(params)
    if not math.isclose(params.g1_mag, params.g2_mag, rel_tol=1e-12):
        raise ContractError("spin-form Hamiltonian needs |g1| = |g2|")
    g_sq = params.g_sq
    if theta_mode == "exchange":
        m = exchange_operator(params.phi)
        s_z = spin_operators()[2]
        h = -(2 * g_sq / params.delta1) * m
        h = h + params.two_photon_detuning * (s_z + 0.5 * np.eye(4))
        return OperatorMatrix(h, hermitian=True)
    if theta_mode == "dot_product":
        if not params.resonant:
            raise ContractError("dot-product spin form requires two-photon resonance")
        if not _phase_is_pi(params.phi):
            raise ContractError(
                f"dot-product spin form requires g2 = -g1 (phi = pi), got phi={params.phi!r}"
            )
        h = (2 * g_sq / params.delta1) * (spin_dot() - 0.25 * np.eye(4))
        return OperatorMatrix(h, hermitian=True)
    raise ContractError(f"unknown spin form {theta_mode!r}")
