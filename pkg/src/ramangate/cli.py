"""
Command-line scenario runner.

Every scenario reproduces one gate result of the cavity Raman model and
writes deterministic files (CSV trajectories, JSON gate reports) into
``--output``.  Rates are in units of the coupling g, times in units of 1/g,
angles in radians.

Exit codes: 0 success, 1 configuration error, 2 physics-contract violation,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import configparser
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import gates
from .dynamics import (
    DEFAULT_SAMPLES,
    Trajectory,
    evolve_ode,
    evolve_with_decay,
    sample_exact,
    decay_hamiltonian,
    time_grid,
)
from .errors import ConfigError, ContractError, IntegrationError
from .hilbert import HilbertSpec, StateVector, basis_index, label, make_basis_state
from .models import ManifoldSpec, SystemParams
from .verify import run_checks

SCENARIOS = ("qpg", "qpg-aux", "cnot", "swap", "swap-phase", "no-stark-compare",
             "adiabatic-check", "decay-check", "sweep")
GATE_SCENARIOS = ("qpg", "qpg-aux", "cnot", "swap", "swap-phase")
MODEL_NAMES = {
    "full": "full",
    "eff": "effective_stark",
    "eff-nostark": "effective_no_stark",
    "analytic": "analytic",
}
SWEEP_AXES = tuple(f.name for f in fields(SystemParams)) + ("gate_time",)
RESONANT_SCENARIOS = ("swap", "swap-phase", "no-stark-compare")
ADIABATIC_DEFAULT = (20.0, 50.0, 100.0)

EXIT_OK, EXIT_CONFIG, EXIT_CONTRACT, EXIT_NUMERIC = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    """Parsed run configuration.

    ``delta2_mode`` is ``"auto"`` (phase-gate detuning from delta1),
    ``"resonant"`` (delta2 = delta1) or ``"value"`` (use ``params.delta2``).
    Left as None it follows the scenario: resonant for SWAP-type runs, auto
    otherwise.
    """

    scenario: str
    params: SystemParams = field(default_factory=SystemParams)
    delta2_mode: Optional[str] = None
    model: str = "eff"
    gate_time: Optional[float] = None
    t_end: Optional[float] = None
    n_samples: int = DEFAULT_SAMPLES
    sweep_scenario: Optional[str] = None
    sweep_axis: Optional[str] = None
    sweep_values: tuple = ()
    output: Optional[str] = None
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.scenario not in SCENARIOS + ("verify",):
            raise ConfigError("run.scenario", f"unknown scenario {self.scenario!r}")
        if self.delta2_mode is None:
            inner = self.sweep_scenario if self.scenario == "sweep" else self.scenario
            mode = "resonant" if inner in RESONANT_SCENARIOS else "auto"
            object.__setattr__(self, "delta2_mode", mode)
        if self.model not in MODEL_NAMES:
            raise ConfigError("run.model", f"unknown model {self.model!r}; choose from {list(MODEL_NAMES)}")
        if self.delta2_mode not in ("auto", "resonant", "value"):
            raise ConfigError("params.delta2", f"bad mode {self.delta2_mode!r}")
        if self.n_samples < 2:
            raise ConfigError("run.n_samples", f"must be >= 2, got {self.n_samples}")
        if self.workers < 1:
            raise ConfigError("run.workers", f"must be >= 1, got {self.workers}")
        if self.gate_time is not None and not self.gate_time > 0:
            raise ConfigError("run.gate_time", f"must be > 0, got {self.gate_time}")
        if self.t_end is not None and not self.t_end > 0:
            raise ConfigError("run.t_end", f"must be > 0, got {self.t_end}")
        if self.sweep_axis is not None and self.sweep_axis not in SWEEP_AXES:
            raise ConfigError("sweep.axis", f"{self.sweep_axis!r} is not one of {SWEEP_AXES}")
        if self.scenario == "sweep":
            if self.sweep_scenario not in GATE_SCENARIOS:
                raise ConfigError("sweep.scenario", f"must be one of {GATE_SCENARIOS}")
            if self.sweep_axis is None or not self.sweep_values:
                raise ConfigError("sweep.axis", "sweep needs an axis and at least one value")

    def resolved_params(self, scenario: Optional[str] = None) -> SystemParams:
        """Parameters with delta2 filled in according to ``delta2_mode``."""
        p = self.params
        if self.delta2_mode == "auto":
            return p.replace(delta2=gates.qpg_detuning_for(p.delta1, math.sqrt(p.g_sq)))
        if self.delta2_mode == "resonant":
            return p.replace(delta2=p.delta1)
        return p

    # --- key-value text form -------------------------------------------------------

    def to_ini(self) -> str:
        cp = configparser.ConfigParser()
        cp["run"] = {
            "scenario": self.scenario,
            "model": self.model,
            "gate_time": _opt(self.gate_time),
            "t_end": _opt(self.t_end),
            "n_samples": str(self.n_samples),
            "output": self.output or "",
            "seed": str(self.seed),
            "workers": str(self.workers),
        }
        params = {k: repr(float(v)) for k, v in asdict(self.params).items()}
        if self.delta2_mode != "value":
            params["delta2"] = self.delta2_mode
        cp["params"] = params
        cp["sweep"] = {
            "scenario": self.sweep_scenario or "",
            "axis": self.sweep_axis or "",
            "values": ", ".join(repr(float(v)) for v in self.sweep_values),
        }
        buf = io.StringIO()
        cp.write(buf)
        return buf.getvalue()

    @classmethod
    def from_ini(cls, text: str, overrides: Optional[dict] = None) -> "RunConfig":
        cp = configparser.ConfigParser()
        try:
            cp.read_string(text)
        except configparser.Error as exc:
            raise ConfigError("<config>", str(exc)) from None
        values = {}
        for section in cp.sections():
            for key, raw in cp[section].items():
                values[f"{section}.{key}"] = raw
        values.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return cls.from_flat(values)

    @classmethod
    def from_flat(cls, values: dict) -> "RunConfig":
        known = {f"params.{f.name}" for f in fields(SystemParams)} | {
            "run.scenario", "run.model", "run.gate_time", "run.t_end", "run.n_samples",
            "run.output", "run.seed", "run.workers",
            "sweep.scenario", "sweep.axis", "sweep.values",
        }
        for key in values:
            if key not in known:
                raise ConfigError(key, "unknown configuration key")
        if "run.scenario" not in values:
            raise ConfigError("run.scenario", "missing")
        scenario = values["run.scenario"]

        pkw = {}
        delta2_mode = None
        for f in fields(SystemParams):
            key = f"params.{f.name}"
            if key not in values or values[key] == "":
                continue
            raw = str(values[key]).strip()
            if f.name == "delta2" and raw in ("auto", "resonant"):
                delta2_mode = raw
                continue
            pkw[f.name] = _float(key, raw)
            if f.name == "delta2":
                delta2_mode = "value"
        try:
            params = SystemParams(**pkw)
        except ContractError as exc:
            raise ConfigError("params", str(exc)) from None

        sweep_values = ()
        if values.get("sweep.values"):
            sweep_values = tuple(
                _float("sweep.values", v) for v in str(values["sweep.values"]).split(",") if v.strip()
            )
        return cls(
            scenario=scenario,
            params=params,
            delta2_mode=delta2_mode,
            model=values.get("run.model") or "eff",
            gate_time=_opt_float("run.gate_time", values.get("run.gate_time")),
            t_end=_opt_float("run.t_end", values.get("run.t_end")),
            n_samples=_int("run.n_samples", values.get("run.n_samples", DEFAULT_SAMPLES)),
            sweep_scenario=values.get("sweep.scenario") or None,
            sweep_axis=values.get("sweep.axis") or None,
            sweep_values=sweep_values,
            output=values.get("run.output") or None,
            seed=_int("run.seed", values.get("run.seed", 0)),
            workers=_int("run.workers", values.get("run.workers", 1)),
        )


def _opt(x):
    return "auto" if x is None else repr(float(x))


def _float(path, raw) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(path, f"expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(path, f"expected a finite number, got {raw!r}")
    return value


def _opt_float(path, raw):
    if raw is None or str(raw).strip() in ("", "auto"):
        return None
    return _float(path, raw)


def _int(path, raw) -> int:
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise ConfigError(path, f"expected an integer, got {raw!r}") from None


# --- file emission ------------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def emit_trajectory_csv(traj: Trajectory, path) -> Path:
    """t, then re/im/population for each tracked label; 17 significant digits."""
    if len(traj.times) == 0:
        raise ContractError("cannot write an empty trajectory")
    path = Path(path)
    names = [str(lab) for lab in traj.labels] or [f"c{i}" for i in range(traj.states.shape[1])]
    header = ["t"] + [f"{p}_{n}" for n in names for p in ("re", "im", "pop")]
    lines = [",".join(header)]
    for t, row in zip(traj.times, traj.states):
        cells = [_fmt(t)]
        for z in row:
            cells += [_fmt(z.real), _fmt(z.imag), _fmt(abs(z) ** 2)]
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def _write_table(path, header, rows) -> Path:
    path = Path(path)
    lines = [",".join(header)] + [",".join(_fmt(x) for x in row) for row in rows]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def _write_json(path, obj) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
    return path


# --- scenarios ----------------------------------------------------------------------------

_KIND = {
    "qpg": "qpg_photon_atom",
    "qpg-aux": "qpg_aux_atom",
    "cnot": "cnot",
    "swap": "swap",
    "swap-phase": "swap_phase",
}
_FEASIBILITY_SCENARIOS = ("qpg", "qpg-aux", "cnot", "decay-check")


@dataclass
class Outcome:
    summary: list = field(default_factory=list)
    files: list = field(default_factory=list)


def _summary(name: str, rep: gates.GateReport, show_feasibility: bool) -> str:
    line = (f"{name}: kind={rep.kind} model={rep.model} T={rep.gate_time:.6g} "
            f"fidelity={rep.fidelity:.6f} leakage={rep.leakage:.3e}")
    if show_feasibility:
        value, ok = rep.feasibility
        line += f" {'feasible' if ok else 'infeasible'}: value={value:.4f}"
    return line


def _gate_spec(scenario: str, cfg: RunConfig, params: SystemParams) -> gates.GateSpec:
    kind = _KIND[scenario]
    model = MODEL_NAMES[cfg.model]
    if cfg.gate_time is None:
        return gates.GateSpec.at_design_point(kind, model, params)
    return gates.GateSpec(kind, model, params, cfg.gate_time, enforce_conditions=False)


def gate_report(scenario: str, cfg: RunConfig, params: SystemParams) -> gates.GateReport:
    return gates.evaluate_truth_table(_gate_spec(scenario, cfg, params))


def _trajectory_input(scenario: str, spec: HilbertSpec):
    """Initial full-space vector and tracked labels for a gate trajectory."""
    raman = (label("g", 1, 0), label("e", 0, 0), label("f", 0, 1))
    if scenario == "qpg":
        return make_basis_state(spec, label("f", 0, 1)).amplitudes, raman
    if scenario == "cnot":
        # photon present, atom after the first Hadamard: (|g> + |f>)|0_a,1_b>/sqrt 2
        psi = (make_basis_state(spec, label("g", 0, 1)).amplitudes
               + make_basis_state(spec, label("f", 0, 1)).amplitudes) / math.sqrt(2)
        return psi, (label("g", 0, 1), label("f", 0, 1)) + raman[:2]
    return make_basis_state(spec, label("g", 1, 0)).amplitudes, raman


def run_gate_scenario(scenario: str, cfg: RunConfig, out: Outcome, params=None):
    params = params or cfg.resolved_params()
    rep = gate_report(scenario, cfg, params)
    out.summary.append(_summary(scenario, rep, scenario in _FEASIBILITY_SCENARIOS))
    if cfg.output:
        stem = scenario.replace("-", "_")
        out.files.append(_write_json(Path(cfg.output) / f"{stem}_report.json", rep.to_dict()))
        spec = gates.default_spec(rep.kind)
        psi0, tracked = _trajectory_input(scenario, spec)
        times = time_grid(cfg.t_end or rep.gate_time, cfg.n_samples)
        traj = gates.gate_trajectory(rep.model, params, spec, psi0, times, tracked)
        out.files.append(emit_trajectory_csv(traj, Path(cfg.output) / f"{stem}_trajectory.csv"))
    return rep


def run_no_stark_compare(cfg: RunConfig, out: Outcome):
    params = cfg.resolved_params()
    if not params.resonant:
        raise ContractError("no-stark-compare runs at two-photon resonance (delta1 = delta2)")
    model = MODEL_NAMES[cfg.model]
    free_model = "analytic" if model == "analytic" else "effective_no_stark"
    stark_model = "analytic" if model == "analytic" else "effective_stark"
    t2pi = gates.no_stark_2pi_time(params.delta1, math.sqrt(params.g_sq))

    free = gates.evaluate_truth_table(gates.GateSpec("qpg_no_stark_2pi", free_model, params, t2pi))
    stark = gates.evaluate_truth_table(
        gates.GateSpec("qpg_photon_atom", stark_model, params, t2pi, enforce_conditions=False)
    )
    thetas = np.linspace(0.0, 2 * np.pi, 101)[1:]
    amps = gates.resonant_self_amplitudes(params, thetas, "effective_stark")
    gap = float(np.min(np.abs(amps + 1)))
    out.summary.append(_summary("no-stark 2pi", free, False))
    out.summary.append(_summary("stark resonant 2pi", stark, False))
    out.summary.append(f"stark resonant scan: min |<f01|U|f01> + 1| = {gap:.6f} over {len(thetas)} pulse areas")
    if cfg.output:
        d = Path(cfg.output)
        out.files.append(_write_json(d / "qpg_no_stark_2pi_report.json", free.to_dict()))
        out.files.append(_write_json(d / "qpg_resonant_stark_report.json", stark.to_dict()))
        rows = [(th, z.real, z.imag, abs(z) ** 2) for th, z in zip(thetas, amps)]
        out.files.append(_write_table(d / "stark_theta_scan.csv", ["theta", "re", "im", "pop"], rows))
        spec = HilbertSpec()
        psi0 = make_basis_state(spec, label("f", 0, 1)).amplitudes
        tracked = (label("g", 1, 0), label("f", 0, 1))
        times = time_grid(cfg.t_end or t2pi, cfg.n_samples)
        for name, m, ns in (("no_stark", free_model, True), ("stark", stark_model, False)):
            traj = gates.gate_trajectory(m, params, spec, psi0, times, tracked, no_stark=ns)
            out.files.append(emit_trajectory_csv(traj, d / f"{name}_trajectory.csv"))


def adiabatic_row(delta1: float, cfg: RunConfig):
    params = cfg.params.replace(delta1=delta1, delta2=gates.qpg_detuning_for(delta1))
    spec_gate = gates.GateSpec.at_design_point("qpg_photon_atom", "full", params)
    rep = gates.evaluate_truth_table(spec_gate)
    traj = evolve_ode("full_manifold", params, ManifoldSpec(1, 0), [0, 0, 1],
                      time_grid(rep.gate_time, max(cfg.n_samples, 2)))
    max_e = float(np.max(np.abs(traj.states[:, 1]) ** 2))
    phase_error = gates.entangling_phase(rep.matrix) - math.pi
    return (delta1, params.delta2, rep.gate_time, 1 - rep.fidelity, rep.leakage, phase_error, max_e)


def run_adiabatic_check(cfg: RunConfig, out: Outcome):
    deltas = cfg.sweep_values if cfg.sweep_axis == "delta1" else ADIABATIC_DEFAULT
    rows = [adiabatic_row(d, cfg) for d in deltas]
    header = ["delta1", "delta2", "gate_time", "infidelity", "leakage", "phase_error", "max_e_population"]
    for r in rows:
        out.summary.append(
            f"adiabatic-check: delta1={r[0]:g} infidelity={r[3]:.3e} leakage={r[4]:.3e} "
            f"phase_error={r[5]:+.3e} max_e_population={r[6]:.3e}"
        )
    infid = [r[3] for r in rows]
    monotone = all(b < a for a, b in zip(infid, infid[1:]))
    out.summary.append(f"adiabatic-check: infidelity strictly decreasing: {monotone}")
    if cfg.output:
        out.files.append(_write_table(Path(cfg.output) / "adiabatic_check.csv", header, rows))
    return rows


def run_decay_check(cfg: RunConfig, out: Outcome):
    params = cfg.resolved_params()
    g = math.sqrt(params.g_sq)
    t_gate = cfg.gate_time or gates.qpg_gate_time(params.delta1, g)
    spec = HilbertSpec()
    psi0 = make_basis_state(spec, label("f", 0, 1))
    _, survival = evolve_with_decay(params, spec, psi0, t_gate)
    value, feasible = gates.decay_feasibility(params.delta1, params.kappa, g)
    bound = math.exp(-params.kappa * t_gate)
    out.summary.append(
        f"decay-check: T={t_gate:.6g} survival={survival:.6f} exp(-kappa T)={bound:.6f} "
        f"{'feasible' if feasible else 'infeasible'}: value={value:.4f}"
    )
    if cfg.output:
        d = Path(cfg.output)
        out.files.append(_write_json(d / "decay_check.json", {
            "params": {k: float(v) for k, v in asdict(params).items()},
            "gate_time": float(t_gate),
            "survival": float(survival),
            "survival_bound": float(bound),
            "feasibility": {"value": float(value), "feasible": bool(feasible)},
        }))
        times = time_grid(cfg.t_end or t_gate, cfg.n_samples)
        tracked = (label("g", 1, 0), label("e", 0, 0), label("f", 0, 1))
        traj = sample_exact(decay_hamiltonian(params, spec), psi0, times, "decay")
        idx = [basis_index(spec, lab) for lab in tracked]
        traj = Trajectory(traj.times, traj.states[:, idx], "decay", tracked)
        out.files.append(emit_trajectory_csv(traj, d / "decay_trajectory.csv"))
    return survival


def _sweep_point(args):
    cfg, value = args
    inner = cfg.sweep_scenario
    if cfg.sweep_axis == "gate_time":
        params = cfg.resolved_params()
        cfg = replace(cfg, gate_time=value)
    else:
        cfg = replace(cfg, params=cfg.params.replace(**{cfg.sweep_axis: value}))
        params = cfg.resolved_params()
    rep = gate_report(inner, cfg, params)
    return rep.to_dict(), _summary(f"{inner} {cfg.sweep_axis}={value:g}", rep,
                                   inner in _FEASIBILITY_SCENARIOS)


def run_sweep(cfg: RunConfig, out: Outcome):
    jobs = [(cfg, v) for v in cfg.sweep_values]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_sweep_point, jobs))
    else:
        results = [_sweep_point(j) for j in jobs]
    stem = cfg.sweep_scenario.replace("-", "_")
    rows = []
    for i, (value, (report, line)) in enumerate(zip(cfg.sweep_values, results)):
        out.summary.append(line)
        rows.append((value, report["fidelity"], report["leakage"], report["feasibility"]["value"]))
        if cfg.output:
            path = Path(cfg.output) / f"{stem}_{cfg.sweep_axis}_{i:03d}.json"
            out.files.append(_write_json(path, report))
    if cfg.output:
        out.files.append(_write_table(Path(cfg.output) / "sweep_summary.csv",
                                      [cfg.sweep_axis, "fidelity", "leakage", "feasibility_value"], rows))
    return results


def run_scenario(cfg: RunConfig) -> Outcome:
    """Run one configured scenario; files go to ``cfg.output`` when set."""
    out = Outcome()
    if cfg.output:
        os.makedirs(cfg.output, exist_ok=True)
    if cfg.scenario in GATE_SCENARIOS:
        run_gate_scenario(cfg.scenario, cfg, out)
    elif cfg.scenario == "no-stark-compare":
        run_no_stark_compare(cfg, out)
    elif cfg.scenario == "adiabatic-check":
        run_adiabatic_check(cfg, out)
    elif cfg.scenario == "decay-check":
        run_decay_check(cfg, out)
    elif cfg.scenario == "sweep":
        run_sweep(cfg, out)
    elif cfg.scenario == "verify":
        results = run_checks(cfg.seed)
        out.summary.extend(r.line() for r in results)
        if not all(r.passed for r in results):
            exc = ArithmeticError("invariant check failed")
            exc.lines = out.summary
            raise exc
    return out


# --- argument parsing ----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError("<command line>", message)


_FLAG_KEYS = {
    "delta1": "params.delta1",
    "delta2": "params.delta2",
    "kappa": "params.kappa",
    "phi": "params.phi1",
    "model": "run.model",
    "gate_time": "run.gate_time",
    "t_end": "run.t_end",
    "samples": "run.n_samples",
    "output": "run.output",
    "workers": "run.workers",
    "seed": "run.seed",
    "scenario": "sweep.scenario",
    "axis": "sweep.axis",
    "values": "sweep.values",
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key-value config file ([run], [params], [sweep] sections)")
    common.add_argument("--delta1", help="one-photon detuning of mode a, units of g")
    common.add_argument("--delta2", help="detuning of mode b in units of g, 'auto' "
                        "(phase-gate condition) or 'resonant' (= delta1)")
    common.add_argument("--kappa", help="cavity decay rate, units of g")
    common.add_argument("--phi", help="relative coupling phase in radians (sets phi1, phi2 = 0)")
    common.add_argument("--model", choices=sorted(MODEL_NAMES), help="propagation model")
    common.add_argument("--gate-time", dest="gate_time",
                        help="override the protocol gate time (units of 1/g); disables condition checks")
    common.add_argument("--t-end", dest="t_end", help="trajectory end time, units of 1/g (default: gate time)")
    common.add_argument("--samples", help=f"trajectory samples (default {DEFAULT_SAMPLES})")
    common.add_argument("--output", help="directory for CSV/JSON output")
    common.add_argument("--workers", help="parallel sweep workers")
    common.add_argument("--seed", help="seed for randomized checks")

    parser = _Parser(
        prog="ramangate",
        description="Gates with Stark-shifted Raman transitions in a two-mode cavity. "
        "Rates in units of g, times in 1/g, angles in radians.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in SCENARIOS + ("verify",):
        p = sub.add_parser(name, parents=[common])
        if name in ("sweep", "adiabatic-check"):
            if name == "sweep":
                p.add_argument("--scenario", choices=GATE_SCENARIOS, help="scenario to sweep")
            p.add_argument("--axis", help=f"swept field, one of {', '.join(SWEEP_AXES)}")
            p.add_argument("--values", help="comma-separated axis values")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    text = ""
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError("--config", str(exc)) from None
    overrides = {"run.scenario": args.command}
    for attr, key in _FLAG_KEYS.items():
        value = getattr(args, attr, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "phi", None) is not None:
        overrides["params.phi2"] = "0"
    if args.command == "adiabatic-check" and getattr(args, "values", None) and not getattr(args, "axis", None):
        overrides["sweep.axis"] = "delta1"
    return RunConfig.from_ini(text, overrides)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
        outcome = run_scenario(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ContractError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (IntegrationError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        for line in getattr(exc, "lines", []):
            print(line)
        return EXIT_NUMERIC
    for line in outcome.summary:
        print(line)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
