"""Quantum gates from Stark-shifted Raman transitions in a two-mode cavity."""

from .dynamics import (
    Trajectory,
    analytic_detuned,
    analytic_no_stark,
    analytic_resonant,
    evolve_exact,
    evolve_ode,
    evolve_with_decay,
    propagator,
)
from .errors import (
    AdiabaticValidityWarning,
    BoundsError,
    ConfigError,
    ContractError,
    IntegrationError,
    RamanGateError,
    SingularParameterError,
)
from .gates import (
    GateReport,
    GateSpec,
    cnot_via_sandwich,
    decay_feasibility,
    evaluate_truth_table,
    gate_fidelity,
    qpg_detuning_for,
    qpg_gate_time,
    swap_unitary,
    swap_with_phase,
)
from .hilbert import BasisIndex, HilbertSpec, Level, OperatorMatrix, StateVector, basis_index, label
from .models import ManifoldSpec, SystemParams, effective_hamiltonian, full_rotated_hamiltonian

__version__ = "0.1.0"
