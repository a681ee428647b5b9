"""
Propagators: exact matrix exponentials, adaptive ODE integration of the
manifold amplitude equations, closed-form two-state solutions and
no-jump cavity decay.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.integrate
import scipy.linalg

from .errors import ContractError, IntegrationError
from .hilbert import HilbertSpec, OperatorMatrix, StateVector, number_matrix
from .models import (
    ManifoldSpec,
    SystemParams,
    adiabatic_generator,
    amplitude_generator,
    derived_rates,
    full_rotated_hamiltonian,
)

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12
DEFAULT_SAMPLES = 400


@dataclass(frozen=True)
class Trajectory:
    """Sampled evolution.

    ``states`` is a 2-D array with one row per time.  Rows are full-space
    amplitudes or manifold amplitudes; ``labels`` names the columns.
    """

    times: np.ndarray
    states: np.ndarray
    model_tag: str
    labels: tuple = ()

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        states = np.asarray(self.states, dtype=complex)
        if times.ndim != 1 or len(times) == 0:
            raise ContractError("trajectory needs a nonempty 1-D time array")
        if np.any(np.diff(times) <= 0):
            raise ContractError("trajectory times must be strictly increasing")
        if states.shape[0] != times.shape[0]:
            raise ContractError(
                f"{states.shape[0]} states for {times.shape[0]} times"
            )
        times.setflags(write=False)
        states.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.states, axis=1)

    def norm_drift(self) -> float:
        n0 = np.linalg.norm(self.states[0])
        return float(np.max(np.abs(self.norms() - n0)))

    def column(self, key) -> np.ndarray:
        if not isinstance(key, int):
            key = [str(lab) for lab in self.labels].index(str(key))
        return self.states[:, key]


# --- matrix exponentials ------------------------------------------------------


def propagator(h: OperatorMatrix, t: float) -> np.ndarray:
    """exp(-i H t).

    Hermitian matrices go through an eigendecomposition, anything else
    through scipy's scaling-and-squaring Pade exponential.
    """
    if t == 0:
        return np.eye(h.dim, dtype=complex)
    if h.hermitian:
        w, v = np.linalg.eigh(h.entries)
        return (v * np.exp(-1j * w * t)) @ v.conj().T
    return scipy.linalg.expm(-1j * t * h.entries)


def evolve_exact(h: OperatorMatrix, psi0: StateVector, t: float) -> StateVector:
    """psi(t) = exp(-i H t) psi0."""
    if h.dim != psi0.spec.dim:
        raise ContractError(f"operator dim {h.dim} != state dim {psi0.spec.dim}")
    if t == 0:
        return psi0
    return StateVector(propagator(h, t) @ psi0.amplitudes, psi0.spec)


def sample_exact(h: OperatorMatrix, psi0: StateVector, times, model_tag: str = "exact",
                 labels=None) -> Trajectory:
    """Exact propagation sampled on ``times`` (one eigendecomposition)."""
    times = np.asarray(times, dtype=float)
    if h.hermitian:
        w, v = np.linalg.eigh(h.entries)
        c0 = v.conj().T @ psi0.amplitudes
        states = (np.exp(-1j * np.outer(times, w)) * c0) @ v.T
    else:
        states = np.array([propagator(h, t) @ psi0.amplitudes for t in times])
    if labels is None:
        labels = tuple(psi0.spec.labels())
    return Trajectory(times, states, model_tag, tuple(labels))


# --- ODE integration ------------------------------------------------------------


def evolve_ode(
    generator: str,
    params: SystemParams,
    manifold: ManifoldSpec,
    d0: Sequence[complex],
    t_grid,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> Trajectory:
    """Integrate the manifold amplitude equations with adaptive Runge-Kutta.

    ``generator`` is ``"full_manifold"`` for the three amplitudes
    (d1, d2, d3) or ``"adiabatic"`` for (d1, d3) with d2 eliminated.  The
    solution is reported at every time in ``t_grid`` (DOP853, order 8).
    """
    if rtol < 1e-13:
        raise ContractError(f"rtol must be >= 1e-13, got {rtol!r}")
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) == 0 or np.any(np.diff(t_grid) <= 0):
        raise ContractError("t_grid must be a nonempty increasing sequence")

    if generator == "full_manifold":
        k = amplitude_generator(params, manifold)
        labels = manifold.labels()
    elif generator == "adiabatic":
        k = adiabatic_generator(params, manifold)
        labels = (manifold.labels()[0], manifold.labels()[2])
    else:
        raise ContractError(f"unknown generator {generator!r}")

    d0 = np.asarray(d0, dtype=complex)
    if d0.shape != (k.shape[0],):
        raise ContractError(f"initial amplitudes must have length {k.shape[0]}")
    minus_ik = -1j * k

    def rhs(_t, y):
        return minus_ik @ y

    if len(t_grid) == 1 and t_grid[0] == 0.0:
        return Trajectory(t_grid, d0[None, :], generator, labels)
    t_start = min(0.0, t_grid[0])
    sol = scipy.integrate.solve_ivp(
        rhs,
        (t_start, t_grid[-1]),
        d0,
        method="DOP853",
        t_eval=t_grid,
        rtol=rtol,
        atol=atol,
    )
    if sol.status != 0:
        t_fail = float(sol.t[-1]) if sol.t.size else t_start
        raise IntegrationError(sol.message, t_fail)
    return Trajectory(sol.t, sol.y.T, generator, labels)


# --- closed-form solutions on the (n=1, mu=0) manifold --------------------------


def _require_unit_manifold(manifold: ManifoldSpec):
    if (manifold.n, manifold.mu) != (1, 0):
        raise ContractError(
            f"closed-form solution holds for n=1, mu=0 only, got n={manifold.n}, mu={manifold.mu}"
        )


def _require_equal_magnitudes(params: SystemParams):
    if not math.isclose(params.g1_mag, params.g2_mag, rel_tol=1e-12):
        raise ContractError("closed-form solution assumes |g1| = |g2|")


def analytic_detuned(params: SystemParams, d1_0: complex, d3_0: complex, t: float,
                     manifold: ManifoldSpec = ManifoldSpec()) -> tuple[complex, complex]:
    """Closed-form adiabatic amplitudes for arbitrary two-photon detuning."""
    _require_unit_manifold(manifold)
    _require_equal_magnitudes(params)
    rates = derived_rates(params, t)
    det = params.two_photon_detuning
    half = rates.omega_big * t / 2
    c, s = math.cos(half), math.sin(half)
    # relative phase of the Raman coupling; 1 for in-phase couplings
    ph = cmath.exp(1j * params.phi)
    coup = 2j * params.g_sq / (params.delta1 * rates.omega_big) * s
    glob = cmath.exp(0.5j * rates.nu * t)
    d1 = glob * ((c + 1j * det / rates.omega_big * s) * d1_0 + coup / ph * d3_0)
    d3 = glob * ((c - 1j * det / rates.omega_big * s) * d3_0 + coup * ph * d1_0)
    return d1, d3


def analytic_resonant(params: SystemParams, d1_0: complex, d3_0: complex,
                      t: float) -> tuple[complex, complex]:
    """Closed-form amplitudes at two-photon resonance, Stark shifts included."""
    if not params.resonant:
        raise ContractError(
            f"resonant solution needs delta1 = delta2, got {params.delta1!r}, {params.delta2!r}"
        )
    _require_equal_magnitudes(params)
    theta = derived_rates(params, t).theta
    ph = cmath.exp(1j * params.phi)
    w = cmath.exp(1j * theta) - 1
    d1 = 0.5 * (d1_0 + d3_0 / ph) * w + d1_0
    d3 = 0.5 * (ph * d1_0 + d3_0) * w + d3_0
    return d1, d3


def analytic_no_stark(params: SystemParams, d1_0: complex, d3_0: complex,
                      t: float) -> tuple[complex, complex]:
    """Raman Rabi oscillation when the Stark terms are dropped (resonance only)."""
    if not params.resonant:
        raise ContractError(
            f"Stark-free solution needs delta1 = delta2, got {params.delta1!r}, {params.delta2!r}"
        )
    _require_equal_magnitudes(params)
    x = params.g_sq * t / params.delta1
    ph = cmath.exp(1j * params.phi)
    c, s = math.cos(x), math.sin(x)
    return c * d1_0 + 1j * s * d3_0 / ph, c * d3_0 + 1j * s * ph * d1_0


# --- cavity decay ---------------------------------------------------------------


def decay_hamiltonian(params: SystemParams, spec: HilbertSpec) -> OperatorMatrix:
    """H_full - i (kappa/2)(a^dag a + b^dag b)."""
    h = full_rotated_hamiltonian(params, spec).entries
    if params.kappa == 0:
        return OperatorMatrix(h, hermitian=True)
    loss = number_matrix(spec, "a").entries + number_matrix(spec, "b").entries
    return OperatorMatrix(h - 0.5j * params.kappa * loss)


def evolve_with_decay(params: SystemParams, spec: HilbertSpec, psi0: StateVector,
                      t: float) -> tuple[StateVector, float]:
    """No-jump evolution; returns the unnormalized state and its squared norm."""
    psi = evolve_exact(decay_hamiltonian(params, spec), psi0, t)
    return psi, psi.norm() ** 2


def time_grid(t_end: float, n_samples: int = DEFAULT_SAMPLES) -> np.ndarray:
    if n_samples < 2:
        raise ContractError(f"need at least 2 samples, got {n_samples}")
    if not t_end > 0:
        raise ContractError(f"t_end must be > 0, got {t_end!r}")
    return np.linspace(0.0, t_end, n_samples)

