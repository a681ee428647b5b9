"""Fast numerical self-checks behind ``ramangate verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gates
from .dynamics import analytic_detuned, analytic_resonant, evolve_ode, propagator
from .hilbert import HilbertSpec, OperatorMatrix, annihilation_matrix, basis_index
from .models import (
    ManifoldSpec,
    QUBIT_LABELS,
    SystemParams,
    amplitude_generator,
    effective_hamiltonian,
    excitation_number,
    full_rotated_hamiltonian,
    spin_form_hamiltonian,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.value:.3e} (tol {self.tolerance:.0e})"


def _check(name, value, tol):
    return CheckResult(name, bool(value <= tol), float(value), tol)


def _random_params(rng, resonant=False):
    d1 = rng.uniform(8.0, 40.0)
    d2 = d1 if resonant else d1 - rng.uniform(-0.5, 0.5)
    return SystemParams(delta1=d1, delta2=d2, phi1=rng.uniform(0, 2 * np.pi),
                        phi2=rng.uniform(0, 2 * np.pi))


def run_checks(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    spec = HilbertSpec()
    out = []

    p = _random_params(rng)
    h_full = full_rotated_hamiltonian(p, spec).entries
    out.append(_check("full Hamiltonian Hermitian", np.max(np.abs(h_full - h_full.conj().T)), 1e-12))
    n_op = excitation_number(spec).entries
    out.append(_check("excitation number conserved", np.max(np.abs(h_full @ n_op - n_op @ h_full)), 1e-12))

    a = annihilation_matrix(spec, "a").entries
    b = annihilation_matrix(spec, "b").entries
    out.append(_check("[a, b] = 0", np.max(np.abs(a @ b - b @ a)), 1e-14))

    worst = 0.0
    for n in (1, 2):
        for mu in (0, 1):
            m = ManifoldSpec(n, mu)
            idx = [basis_index(spec, lab) for lab in m.labels()]
            worst = max(worst, np.max(np.abs(h_full[np.ix_(idx, idx)] - amplitude_generator(p, m))))
    out.append(_check("manifold restriction = amplitude equations", worst, 1e-12))

    pr = _random_params(rng, resonant=True).replace(phi1=0.0, phi2=0.0)
    idx = [basis_index(spec, lab) for lab in QUBIT_LABELS]
    h_eff = effective_hamiltonian(pr, spec).entries[np.ix_(idx, idx)]
    h_spin = spin_form_hamiltonian(pr, "exchange").entries
    out.append(_check("spin form = effective Hamiltonian", np.max(np.abs(h_eff - h_spin)), 1e-12))

    t1, t2 = rng.uniform(0, 20, size=2)
    h = full_rotated_hamiltonian(p, spec)
    comp = propagator(h, t2) @ propagator(h, t1) - propagator(h, t1 + t2)
    out.append(_check("propagator composition", np.max(np.abs(comp)), 1e-12))
    u = propagator(h, t1)
    out.append(_check("propagator unitary", np.max(np.abs(u.conj().T @ u - np.eye(spec.dim))), 1e-12))

    pe = SystemParams(delta1=p.delta1, delta2=p.delta2)
    ts = np.sort(rng.uniform(0.1, 50.0, size=20))
    traj = evolve_ode("adiabatic", pe, ManifoldSpec(), [1.0, 0.0], ts)
    dev = max(abs(traj.states[i, 0] - analytic_detuned(pe, 1, 0, t)[0]) for i, t in enumerate(ts))
    out.append(_check("closed form solves adiabatic equations", dev, 1e-8))

    pres = pe.replace(delta2=pe.delta1)
    dev = max(
        max(abs(x - y) for x, y in zip(analytic_detuned(pres, 0.3, 0.7j, t),
                                       analytic_resonant(pres, 0.3, 0.7j, t)))
        for t in ts
    )
    out.append(_check("detuned solution reduces at resonance", dev, 1e-12))

    proj = gates.projector_P().entries
    out.append(_check("projector idempotent", np.max(np.abs(proj @ proj - proj)), 1e-14))
    th1, th2 = rng.uniform(-np.pi, np.pi, size=2)
    grp = (gates.swap_unitary(th1).entries @ gates.swap_unitary(th2).entries
           - gates.swap_unitary(th1 + th2).entries)
    out.append(_check("SWAP one-parameter group", np.max(np.abs(grp)), 1e-12))
    th = rng.uniform(0, 2 * np.pi)
    diff = gates.swap_unitary(th, convention="dot_product").entries - gates.swap_unitary_closed_form(th).entries
    out.append(_check("projector closed form", np.max(np.abs(diff)), 1e-12))

    mismatches = 0
    for d1 in np.linspace(1.0, 100.0, 10):
        for kappa in np.linspace(0.001, 0.1, 10):
            _, feasible = gates.decay_feasibility(d1, kappa)
            mismatches += feasible != (gates.qpg_gate_time(d1) < 1.0 / kappa)
    out.append(_check("feasibility <=> T < 1/kappa", float(mismatches), 0.0))

    d1 = 10.0
    pq = SystemParams(delta1=d1, delta2=gates.qpg_detuning_for(d1))
    rep = gates.evaluate_truth_table(gates.GateSpec.at_design_point("qpg_photon_atom", "analytic", pq))
    out.append(_check("analytic QPG table", np.max(np.abs(rep.matrix - rep.target)), 1e-10))
    out.append(_check("QPG half-cycle", abs(math.sqrt(8) / d1 * gates.qpg_gate_time(d1) / 2 - math.pi), 1e-12))
    return out


def unitarity_defect(u) -> float:
    u = u.entries if isinstance(u, OperatorMatrix) else np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
