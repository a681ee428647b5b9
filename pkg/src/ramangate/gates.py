"""
Two-qubit gate protocols built on the cavity Raman model.

Computational bases (inputs and outputs use the same order):

* QPG and CNOT, photon qubit in mode b:  |g,0,0>, |f,0,0>, |g,0,1>, |f,0,1>
* auxiliary-level QPG, photonic qubit |g_R> = |0_a,1_b>, |e_R> = |1_a,0_b>:
  |k>|g_R>, |k>|e_R>, |g>|g_R>, |g>|e_R>
* SWAP variants: |g>|g_R>, |g>|e_R>, |f>|g_R>, |f>|e_R>

Truth tables are stored as matrices ``U[out, in]`` restricted to the
computational basis.

Frames.  Propagation happens in the rotating frame of the full model, in
which every |f> state carries the two-photon detuning delta1 - delta2.  For
|f> states with no b photon the atom cannot make a Raman transition, so the
detuning only winds their phase.  The default ``"manifold"`` frame removes
that winding from these uncoupled states, leaving the Raman manifold
amplitudes untouched; this is the frame in which the detuned phase gate acts
as diag(1, 1, 1, -1).  ``frame="rotating"`` reports raw rotating-frame
amplitudes.  The two frames differ by a non-local phase, so the local
invariant :func:`entangling_phase` differs between them (pi versus
pi * (1 + sqrt 2) for the detuned QPG).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ContractError, SingularParameterError
from .hilbert import (
    BasisIndex,
    HilbertSpec,
    Level,
    OperatorMatrix,
    StateVector,
    atom_transition_matrix,
    basis_index,
    label,
)
from .dynamics import (
    Trajectory,
    analytic_detuned,
    analytic_no_stark,
    analytic_resonant,
    propagator,
    sample_exact,
)
from .models import (
    QUBIT_LABELS,
    SystemParams,
    effective_hamiltonian,
    exchange_operator,
    full_rotated_hamiltonian,
    spin_dot,
)

KINDS = ("qpg_photon_atom", "qpg_aux_atom", "cnot", "swap", "swap_phase", "qpg_no_stark_2pi")
MODELS = ("full", "effective_stark", "effective_no_stark", "analytic")
FRAMES = ("manifold", "rotating")
CONDITION_RTOL = 1e-9

QPG_BASIS = (label("g", 0, 0), label("f", 0, 0), label("g", 0, 1), label("f", 0, 1))
AUX_BASIS = (label("k", 0, 1), label("k", 1, 0), label("g", 0, 1), label("g", 1, 0))
SWAP_BASIS = QUBIT_LABELS

# the (n=1, mu=0) Raman pair |g,1,0> <-> |f,0,1>
_RAMAN_G = label("g", 1, 0)
_RAMAN_F = label("f", 0, 1)


# --- timing and detuning conditions ------------------------------------------------


def qpg_detuning_for(delta1: float, g: float = 1.0) -> float:
    """Mode-b detuning that zeroes the global phase rate: delta1 - 2 g^2/delta1."""
    if delta1 == 0:
        raise SingularParameterError("delta1 = 0 is singular for the QPG detuning condition")
    return delta1 - 2.0 * g * g / delta1


def qpg_gate_time(delta1: float, g: float = 1.0) -> float:
    """Interaction time pi delta1 / (sqrt 2 g^2) giving half a generalized Raman cycle."""
    if not delta1 > 0:
        raise ContractError(f"QPG gate time needs delta1 > 0, got {delta1!r}")
    return math.pi * delta1 / (math.sqrt(2.0) * g * g)


def swap_gate_time(delta: float, g: float = 1.0) -> float:
    """Time at which theta = 2 g^2 t / delta reaches pi."""
    return math.pi * abs(delta) / (2.0 * g * g)


def no_stark_2pi_time(delta: float, g: float = 1.0) -> float:
    """Time at which 2 g^2 t / delta reaches 2 pi."""
    return math.pi * abs(delta) / (g * g)


def default_gate_time(kind: str, params: SystemParams) -> float:
    if kind in ("qpg_photon_atom", "qpg_aux_atom", "cnot"):
        return qpg_gate_time(params.delta1, math.sqrt(params.g_sq))
    if kind in ("swap", "swap_phase"):
        return swap_gate_time(params.delta1, math.sqrt(params.g_sq))
    if kind == "qpg_no_stark_2pi":
        return no_stark_2pi_time(params.delta1, math.sqrt(params.g_sq))
    raise ContractError(f"unknown gate kind {kind!r}")


def decay_feasibility(delta1: float, kappa: float, g: float = 1.0) -> tuple[float, bool]:
    """Cavity-lifetime figure pi delta1 kappa / (sqrt 2 g^2); feasible when < 1.

    Equivalent to requiring the QPG gate time to be shorter than 1/kappa.
    """
    if kappa < 0:
        raise ContractError(f"kappa must be >= 0, got {kappa!r}")
    if not delta1 > 0:
        raise ContractError(f"delta1 must be > 0, got {delta1!r}")
    value = math.pi * delta1 * kappa / (math.sqrt(2.0) * g * g)
    return value, value < 1.0


# --- gate specification ------------------------------------------------------------


@dataclass(frozen=True)
class GateSpec:
    """What to run: gate family, propagation model, parameters and duration.

    With ``enforce_conditions`` (the default) the physical conditions of the
    protocol are checked on construction: QPG kinds need the detuning and
    timing conditions, SWAP kinds and the Stark-free QPG need two-photon
    resonance and their pulse area.  Switch it off to evaluate a kind away
    from its design point, e.g. a QPG attempt at resonance.
    """

    kind: str
    model: str
    params: SystemParams
    gate_time: float
    enforce_conditions: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ContractError(f"unknown gate kind {self.kind!r}; expected one of {KINDS}")
        if self.model not in MODELS:
            raise ContractError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if not self.gate_time > 0:
            raise ContractError(f"gate_time must be > 0, got {self.gate_time!r}")
        if self.kind == "qpg_no_stark_2pi" and self.model in ("full", "effective_stark"):
            raise ContractError("qpg_no_stark_2pi runs without Stark shifts; use "
                                "model 'effective_no_stark' or 'analytic'")
        if self.enforce_conditions:
            self._check_conditions()

    @classmethod
    def at_design_point(cls, kind: str, model: str, params: SystemParams) -> "GateSpec":
        """Spec with the protocol's own gate time."""
        return cls(kind, model, params, default_gate_time(kind, params))

    def _check_conditions(self):
        p = self.params
        g = math.sqrt(p.g_sq)
        if self.kind in ("qpg_photon_atom", "qpg_aux_atom", "cnot"):
            if p.resonant:
                raise ContractError(
                    "QPG detuning condition violated: the phase gate needs "
                    "delta1 != delta2 (it fails at two-photon resonance)"
                )
            want = qpg_detuning_for(p.delta1, g)
            if not math.isclose(p.delta2, want, rel_tol=CONDITION_RTOL, abs_tol=1e-12):
                raise ContractError(
                    "QPG detuning condition violated: need delta1 - delta2 = 2 g^2/delta1, "
                    f"i.e. delta2 = {want!r}, got {p.delta2!r}"
                )
            want_t = qpg_gate_time(p.delta1, g)
            if not math.isclose(self.gate_time, want_t, rel_tol=CONDITION_RTOL):
                raise ContractError(
                    "QPG timing condition violated: need T = pi delta1/(sqrt 2 g^2) "
                    f"= {want_t!r}, got {self.gate_time!r}"
                )
        else:
            if not p.resonant:
                raise ContractError(
                    f"{self.kind} requires two-photon resonance (delta1 = delta2), "
                    f"got {p.delta1!r}, {p.delta2!r}"
                )
            want_t = default_gate_time(self.kind, p)
            if not math.isclose(self.gate_time, want_t, rel_tol=CONDITION_RTOL):
                area = "2 pi" if self.kind == "qpg_no_stark_2pi" else "pi"
                raise ContractError(
                    f"{self.kind} timing condition violated: need 2 g^2 T/delta = {area}, "
                    f"i.e. T = {want_t!r}, got {self.gate_time!r}"
                )
            if self.kind == "swap" and abs(np.exp(1j * p.phi) - 1) > 1e-12:
                raise ContractError("kind 'swap' assumes in-phase couplings; use 'swap_phase'")


@dataclass(frozen=True)
class GateReport:
    """Evaluated gate on its four-state computational basis."""

    kind: str
    model: str
    params: SystemParams
    gate_time: float
    basis: tuple
    matrix: np.ndarray  # U[out, in] on the computational basis
    target: np.ndarray
    fidelity: float
    leakage: float
    phase_errors: np.ndarray
    feasibility: tuple
    frame: str = "manifold"

    @property
    def truth_table(self) -> dict:
        """Input label -> output amplitude vector over the computational basis."""
        return {str(lab): self.matrix[:, i].copy() for i, lab in enumerate(self.basis)}

    def amplitude(self, out, inp) -> complex:
        names = [str(lab) for lab in self.basis]
        return complex(self.matrix[names.index(str(out)), names.index(str(inp))])

    def to_dict(self) -> dict:
        """JSON-ready dict; ``truth_table[i][j]`` is output j for input i."""
        value, feasible = self.feasibility
        return {
            "kind": self.kind,
            "model": self.model,
            "frame": self.frame,
            "params": {k: float(v) for k, v in vars(self.params).items()},
            "gate_time": float(self.gate_time),
            "basis": [str(lab) for lab in self.basis],
            "truth_table": [
                [{"re": float(z.real), "im": float(z.imag)} for z in self.matrix[:, i]]
                for i in range(len(self.basis))
            ],
            "fidelity": float(self.fidelity),
            "leakage": float(self.leakage),
            "phase_errors": [float(x) for x in self.phase_errors],
            "feasibility": {"value": float(value), "feasible": bool(feasible)},
        }


# --- metrics ---------------------------------------------------------------------------


def gate_fidelity(u_actual, u_ideal, computational_subspace=None) -> tuple[float, float]:
    """(fidelity, leakage) of ``u_actual`` against ``u_ideal`` on a d-dim subspace.

    fidelity = |Tr(U_ideal^dag P U_actual P)| / d, insensitive to global phase;
    leakage = 1 - Tr(P U^dag P U P) / d, the mean probability lost from the
    subspace.  ``computational_subspace`` lists the subspace indices of
    ``u_actual``; without it ``u_actual`` must already be d x d.
    """
    u_actual = np.asarray(u_actual, dtype=complex)
    u_ideal = np.asarray(u_ideal, dtype=complex)
    d = u_ideal.shape[0]
    if u_ideal.shape != (d, d):
        raise ContractError(f"ideal gate must be square, got {u_ideal.shape}")
    if computational_subspace is not None:
        idx = np.asarray(computational_subspace)
        if len(idx) != d:
            raise ContractError(f"subspace has {len(idx)} states, ideal gate has dim {d}")
        block = u_actual[np.ix_(idx, idx)]
    else:
        if u_actual.shape != (d, d):
            raise ContractError(f"dimension mismatch: {u_actual.shape} vs ideal {u_ideal.shape}")
        block = u_actual
    fid = abs(np.trace(u_ideal.conj().T @ block)) / d
    kept = np.real(np.trace(block.conj().T @ block)) / d
    return min(1.0, float(fid)), max(0.0, float(1.0 - kept))


def entangling_phase(matrix) -> float:
    """arg(U00 U33 / (U11 U22)) of a diagonal two-qubit table, in [0, 2 pi).

    Unchanged by single-qubit phase rotations; pi for a controlled-Z.
    """
    m = np.asarray(matrix)
    return float(np.angle(m[0, 0] * m[3, 3] / (m[1, 1] * m[2, 2])) % (2 * np.pi))


def _wrap(x):
    return (np.asarray(x) + np.pi) % (2 * np.pi) - np.pi


# --- target gates ------------------------------------------------------------------------


def target_matrix(kind: str, phi: float = 0.0) -> np.ndarray:
    if kind in ("qpg_photon_atom", "qpg_aux_atom", "qpg_no_stark_2pi"):
        return np.diag([1, 1, 1, -1]).astype(complex)
    if kind == "cnot":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    if kind in ("swap", "swap_phase"):
        u = np.zeros((4, 4), dtype=complex)
        u[0, 0] = u[3, 3] = 1
        u[2, 1] = -np.exp(1j * phi)
        u[1, 2] = -np.exp(-1j * phi)
        return u
    raise ContractError(f"unknown gate kind {kind!r}")


def basis_for(kind: str) -> tuple:
    if kind == "qpg_aux_atom":
        return AUX_BASIS
    if kind in ("swap", "swap_phase"):
        return SWAP_BASIS
    return QPG_BASIS


def default_spec(kind: str) -> HilbertSpec:
    return HilbertSpec(n_levels=4 if kind == "qpg_aux_atom" else 3)


# --- propagation ---------------------------------------------------------------------------


def model_hamiltonian(model: str, params: SystemParams, spec: HilbertSpec) -> OperatorMatrix:
    if model == "full":
        return full_rotated_hamiltonian(params, spec)
    if model == "effective_stark":
        return effective_hamiltonian(params, spec, include_stark=True)
    if model == "effective_no_stark":
        return effective_hamiltonian(params, spec, include_stark=False)
    raise ContractError(f"model {model!r} has no Hamiltonian matrix")


def manifold_frame(params: SystemParams, spec: HilbertSpec, t: float) -> np.ndarray:
    """Diagonal of the frame change that stops the detuning phase on uncoupled |f> states."""
    phases = np.ones(spec.dim, dtype=complex)
    wind = np.exp(1j * params.two_photon_detuning * t)
    for i, lab in enumerate(spec.labels()):
        if lab.atom == Level.f and lab.n_b == 0:
            phases[i] = wind
    return phases


def _is_uncoupled(lab: BasisIndex) -> bool:
    return (
        lab.atom == Level.k
        or (lab.atom == Level.g and lab.n_a == 0)
        or (lab.atom == Level.f and lab.n_b == 0)
    )


def _analytic_columns(params, spec, t, inputs, no_stark) -> np.ndarray:
    cols = np.zeros((spec.dim, len(inputs)), dtype=complex)
    ig, jf = basis_index(spec, _RAMAN_G), basis_index(spec, _RAMAN_F)
    for col, lab in enumerate(inputs):
        if lab in (_RAMAN_G, _RAMAN_F):
            d1_0, d3_0 = (1.0, 0.0) if lab == _RAMAN_G else (0.0, 1.0)
            if no_stark:
                d1, d3 = analytic_no_stark(params, d1_0, d3_0, t)
            elif params.resonant:
                d1, d3 = analytic_resonant(params, d1_0, d3_0, t)
            else:
                d1, d3 = analytic_detuned(params, d1_0, d3_0, t)
            cols[ig, col], cols[jf, col] = d1, d3
        elif _is_uncoupled(lab):
            energy = params.two_photon_detuning if lab.atom == Level.f and not no_stark else 0.0
            cols[basis_index(spec, lab), col] = np.exp(-1j * energy * t)
        else:
            raise ContractError(
                f"analytic model covers the n=1, mu=0 Raman pair and uncoupled states only, "
                f"not {lab}"
            )
    return cols


def propagate_columns(model: str, params: SystemParams, spec: HilbertSpec, t: float,
                      inputs, no_stark: bool = False, frame: str = "manifold") -> np.ndarray:
    """Full-space output state (one column each) for every input label."""
    if frame not in FRAMES:
        raise ContractError(f"unknown frame {frame!r}; expected one of {FRAMES}")
    idx = [basis_index(spec, lab) for lab in inputs]
    if model == "analytic":
        cols = _analytic_columns(params, spec, t, inputs, no_stark)
    else:
        u = propagator(model_hamiltonian(model, params, spec), t)
        cols = u[:, idx]
    if frame == "manifold":
        cols = manifold_frame(params, spec, t)[:, None] * cols
    return cols


def _aux_columns(gate: GateSpec, spec: HilbertSpec, frame: str) -> np.ndarray:
    # |k> has no couplings: its columns are the identity; only |g> inputs are propagated
    k_idx = [basis_index(spec, lab) for lab in spec.labels() if lab.atom == Level.k]
    if gate.model != "analytic":
        h = model_hamiltonian(gate.model, gate.params, spec).entries
        assert not np.any(h[k_idx, :]) and not np.any(h[:, k_idx]), "|k> must stay uncoupled"
    cols = np.zeros((spec.dim, 4), dtype=complex)
    for col, lab in enumerate(AUX_BASIS[:2]):
        cols[basis_index(spec, lab), col] = 1.0
    cols[:, 2:] = propagate_columns(gate.model, gate.params, spec, gate.gate_time,
                                    AUX_BASIS[2:], frame=frame)
    return cols


def hadamard_atom(spec: HilbertSpec) -> OperatorMatrix:
    """Ideal Hadamard on {|g>, |f>}; identity on photons and on |e>, |k>."""
    h = (
        atom_transition_matrix(spec, "g", "g").entries
        + atom_transition_matrix(spec, "g", "f").entries
        + atom_transition_matrix(spec, "f", "g").entries
        - atom_transition_matrix(spec, "f", "f").entries
    ) / math.sqrt(2.0)
    for lv in spec.levels:
        if lv not in (Level.g, Level.f):
            h = h + atom_transition_matrix(spec, lv, lv).entries
    return OperatorMatrix(h, hermitian=True)


def _report(gate: GateSpec, spec: HilbertSpec, basis, cols_full, frame) -> GateReport:
    idx = [basis_index(spec, lab) for lab in basis]
    block = cols_full[idx, :]
    target = target_matrix(gate.kind, gate.params.phi)
    fid, leak = gate_fidelity(block, target)
    out = np.argmax(np.abs(target), axis=0)
    errs = _wrap(np.angle(block[out, range(4)]) - np.angle(target[out, range(4)]))
    p = gate.params
    block.setflags(write=False)
    return GateReport(
        kind=gate.kind,
        model=gate.model,
        params=p,
        gate_time=gate.gate_time,
        basis=tuple(basis),
        matrix=block,
        target=target,
        fidelity=fid,
        leakage=leak,
        phase_errors=errs,
        feasibility=decay_feasibility(abs(p.delta1), p.kappa, math.sqrt(p.g_sq)),
        frame=frame,
    )


def _resolve_spec(kind: str, spec: Optional[HilbertSpec]) -> HilbertSpec:
    spec = spec or default_spec(kind)
    spec.require_single_photons()
    if kind == "qpg_aux_atom" and spec.n_levels < 4:
        raise ContractError("auxiliary-level QPG needs a 4-level space (with |k>)")
    return spec


def evaluate_truth_table(gate: GateSpec, spec: Optional[HilbertSpec] = None,
                         frame: str = "manifold") -> GateReport:
    """Propagate each computational input for ``gate.gate_time`` and score it."""
    spec = _resolve_spec(gate.kind, spec)
    if gate.kind == "cnot":
        return _cnot(gate, spec, frame)
    if gate.kind == "qpg_aux_atom":
        cols = _aux_columns(gate, spec, frame)
    else:
        cols = propagate_columns(
            gate.model, gate.params, spec, gate.gate_time, basis_for(gate.kind),
            no_stark=gate.kind == "qpg_no_stark_2pi", frame=frame,
        )
    return _report(gate, spec, basis_for(gate.kind), cols, frame)


def _cnot(gate: GateSpec, spec: HilbertSpec, frame: str) -> GateReport:
    had = hadamard_atom(spec).entries
    idx = [basis_index(spec, lab) for lab in QPG_BASIS]
    qpg_cols = propagate_columns(gate.model, gate.params, spec, gate.gate_time,
                                 QPG_BASIS, frame=frame)
    # the Hadamard keeps the computational span, so U H e_in = sum_k U e_k H[k, in]
    cols = had @ qpg_cols @ had[np.ix_(idx, idx)]
    return _report(gate, spec, QPG_BASIS, cols, frame)


def cnot_via_sandwich(params: SystemParams, spec: Optional[HilbertSpec] = None,
                      model: str = "analytic", frame: str = "manifold") -> GateReport:
    """CNOT with the b-mode photon as control: Hadamard, QPG, Hadamard on the atom."""
    gate = GateSpec.at_design_point("cnot", model, params)
    return evaluate_truth_table(gate, spec, frame)


# --- SWAP family ---------------------------------------------------------------------------


def projector_P() -> OperatorMatrix:
    """3/4 + S.R: projector onto the triplet of the atom x photon qubit pair."""
    return OperatorMatrix(0.75 * np.eye(4) + spin_dot(), hermitian=True)


def swap_unitary(theta: float, phase_phi: Optional[float] = None,
                 convention: str = "exchange") -> OperatorMatrix:
    """Qubit-space propagator after pulse area ``theta``.

    ``exchange``: exp(i theta M) with M = Sx Rx + Sy Ry - Sz Rz + 1/4 and the
    flip-flop terms phased by ``phase_phi`` (default 0).
    ``dot_product``: exp(-i theta (S.R - 1/4)), the g2 = -g1 case, which is
    the exchange form at phase pi; ``phase_phi`` must be None or pi.
    """
    if convention == "exchange":
        gen = exchange_operator(0.0 if phase_phi is None else phase_phi)
        return OperatorMatrix(propagator(OperatorMatrix(-gen, hermitian=True), theta))
    if convention == "dot_product":
        if phase_phi is not None and abs(np.exp(1j * phase_phi) + 1) > 1e-12:
            raise ContractError("dot_product convention is the phase-pi case")
        gen = spin_dot() - 0.25 * np.eye(4)
        return OperatorMatrix(propagator(OperatorMatrix(gen, hermitian=True), theta))
    raise ContractError(f"unknown SWAP convention {convention!r}")


def swap_unitary_closed_form(theta: float) -> OperatorMatrix:
    """[1 + (exp(-i theta) - 1) P] exp(i theta), equal to the dot_product propagator."""
    p = projector_P().entries
    return OperatorMatrix((np.eye(4) + (np.exp(-1j * theta) - 1) * p) * np.exp(1j * theta))


def swap_with_phase(phi: float, params: Optional[SystemParams] = None,
                    model: str = "effective_stark", spec: Optional[HilbertSpec] = None,
                    frame: str = "manifold") -> GateReport:
    """SWAP at pulse area pi with relative coupling phase ``phi``.

    ``params`` supplies magnitudes and the (resonant) detuning; its phases are
    replaced by phi1 = phi, phi2 = 0.
    """
    params = params or SystemParams(delta1=10.0, delta2=10.0)
    params = params.replace(phi1=phi, phi2=0.0)
    gate = GateSpec.at_design_point("swap_phase", model, params)
    return evaluate_truth_table(gate, spec, frame)


# --- Stark-shift comparison ----------------------------------------------------------------


def resonant_self_amplitudes(params: SystemParams, thetas, model: str = "effective_stark",
                             spec: Optional[HilbertSpec] = None) -> np.ndarray:
    """<f,0,1| U |f,0,1> at each pulse area theta = 2 g^2 t / delta, at resonance."""
    if not params.resonant:
        raise ContractError("resonant scan needs delta1 = delta2")
    spec = spec or HilbertSpec()
    jf = basis_index(spec, _RAMAN_F)
    out = []
    no_stark = model == "effective_no_stark"
    for theta in np.asarray(thetas, dtype=float):
        t = theta * params.delta1 / (2 * params.g_sq)
        if t == 0:
            out.append(1.0 + 0j)
            continue
        col = propagate_columns(model, params, spec, t, [_RAMAN_F], no_stark=no_stark)
        out.append(col[jf, 0])
    return np.array(out)


def gate_trajectory(model: str, params: SystemParams, spec: HilbertSpec, psi0, times,
                    tracked, no_stark: bool = False, frame: str = "manifold"):
    """Sampled evolution of a full-space initial vector, keeping ``tracked`` labels."""
    psi0 = np.asarray(psi0, dtype=complex)
    times = np.asarray(times, dtype=float)
    if model == "analytic":
        support = [lab for lab in spec.labels() if psi0[basis_index(spec, lab)] != 0]
        states = np.array([
            propagate_columns(model, params, spec, t, support, no_stark, "rotating")
            @ psi0[[basis_index(spec, lab) for lab in support]]
            if t > 0 else psi0
            for t in times
        ])
    else:
        h = model_hamiltonian(model, params, spec)
        states = sample_exact(h, StateVector(psi0, spec), times).states
    if frame == "manifold":
        states = np.array([manifold_frame(params, spec, t) * s for t, s in zip(times, states)])
    idx = [basis_index(spec, lab) for lab in tracked]
    return Trajectory(times, states[:, idx], model, tuple(tracked))
