"""Command-line entry point: ``saqec <command> --spec run.json [--out file] [--format json|csv]``.

Every command reads a schema-validated JSON run spec (schemas ship in
``saqec/schemas`` and ``docs/schemas``), is deterministic for a fixed
``--seed`` and writes a JSON document or CSV table.  Failures exit nonzero
and print ``{"error": {"type": ..., "message": ...}}`` on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import io as sio
from .channels import apply, iid
from .code_switch import SubsystemSwitchSpec, encoded_state, rm15_steane_spec, switch, transversal_gate_check
from .errors import ResourceError, SaqecError, ValidationError
from .information import maximize_capacity
from .numerics import density_matrix, fidelity
from .qec_core import dense_code_from_stabilizer, kl_check, pauli_errors, petz_map, sa_protect_cycle
from .sa_decoder import exact_failure_probability, paired_monte_carlo, standard_table
from .stabilizer.pauli import PauliOperator
from .stabilizer.tableau import expectation
from .threshold import find_threshold, sweep

COMMANDS = ("capacity", "petz", "klcheck", "sadecode", "switch", "threshold", "sweep")


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: dict
    seed: int = 0
    tol: float | None = None
    fmt: str = "json"
    out: str | None = None
    threads: int = 1


# each runner returns (json document, csv rows)
def run_capacity(cfg: RunConfig):
    s = cfg.spec
    ch = sio.channel_from_json(s["channel"], "spec/channel")
    letters = s.get("letters", 1)
    kw = {} if cfg.tol is None else {"rtol": cfg.tol}
    est = maximize_capacity(ch, s.get("functional", "mutual"), letters, restarts=s.get("restarts", 5),
                            seed=cfg.seed, **kw)
    doc = {"command": "capacity", "channel": ch.name, "seed": cfg.seed, **est.as_dict()}
    row = {k: doc[k] for k in ("channel", "functional", "letters", "value", "iterations", "converged",
                               "restarts_used", "restarts_agree", "seed")}
    return doc, [row]


def run_petz(cfg: RunConfig):
    s = cfg.spec
    ch = sio.channel_from_json(s["channel"], "spec/channel")
    rho = density_matrix(sio.state_from_json(s["state"], "spec/state"))
    if "code" in s:
        code = sio.code_from_json(s["code"], "spec/code")
        dense = dense_code_from_stabilizer(code)
        if ch.din == ch.dout == 2**code.n:
            phys = ch
        elif ch.din == ch.dout == 2:
            phys = iid(ch, code.n)
        else:
            raise ValidationError("spec/channel: need a qubit channel or one acting on all physical qubits")
        res = sa_protect_cycle(rho, dense, phys, s.get("decoder", "state"))
        doc = {"command": "petz", "channel": ch.name, "code": code.name, "decoder": res.decoder,
               "fidelity": res.fidelity, "leakage": res.leakage}
    else:
        if "decoder" in s:
            raise ValidationError("spec: field /decoder: only meaningful together with a code")
        rec = petz_map(rho, ch)
        out = apply(rec, apply(ch, rho))
        doc = {"command": "petz", "channel": ch.name, "code": None, "decoder": "state",
               "fidelity": fidelity(out, rho), "leakage": 0.0}
    return doc, [doc]


def _errors_from_spec(s: dict, n: int):
    errs = s.get("errors", {"max_weight": 1})
    if isinstance(errs, dict):
        return pauli_errors(n, errs["max_weight"])
    ops = [PauliOperator.from_str(e) for e in errs]
    if any(p.n != n for p in ops):
        raise ValidationError(f"spec: field /errors: Pauli strings must have length {n}")
    return ops


def run_klcheck(cfg: RunConfig):
    s = cfg.spec
    code = sio.code_from_json(s["code"], "spec/code")
    errors = _errors_from_spec(s, code.n)
    rep = kl_check(dense_code_from_stabilizer(code), errors, s.get("divide_by_trace", True))
    doc = {"command": "klcheck", "code": code.name, "errors": [str(e) for e in errors], **rep.as_dict()}
    row = {"code": code.name, "error_count": len(errors), "residual": rep.residual, "exact": rep.exact,
           "degeneracy_rank": rep.degeneracy_rank, "trace_rho_E": doc["trace_rho_E"]}
    return doc, [row]


def run_sadecode(cfg: RunConfig):
    s = cfg.spec
    code = sio.code_from_json(s["code"], "spec/code")
    q = s.get("q", 0.0)
    results = paired_monte_carlo(code, s["p"], q, s["trials"], cfg.seed, s.get("frame"), s.get("basis", "Z"))
    rows = [r.as_row() for r in results]
    doc = {"command": "sadecode", "code": code.name, "results": rows}
    if q == 0 and code.n <= 8:
        doc["exact_standard_failure"] = exact_failure_probability(standard_table(code), s["p"])
    return doc, rows


_DEFAULT_STATES = [{"basis": b, "sign": sg} for b in ("Z", "X") for sg in (1, -1)]
_DEFAULT_CHECKS = [{"code": "steane", "gate": g} for g in ("H", "S", "CNOT", "T")] + [
    {"code": "reed_muller_15", "gate": "T"}]


def run_switch(cfg: RunConfig):
    s = cfg.spec
    spec = SubsystemSwitchSpec.from_dict(s["switch_spec"]) if "switch_spec" in s else rm15_steane_spec()
    rng = np.random.default_rng(cfg.seed)
    logicals = {"X": spec.logical_x[0], "Z": spec.logical_z[0]}
    runs, rows = [], []
    for st in s.get("states", _DEFAULT_STATES):
        start = st.get("start", "a")
        state = encoded_state(spec.code(start), st["basis"], st.get("sign", 1))
        before = {k: expectation(state, p) for k, p in logicals.items()}
        steps = []
        for direction in s.get("directions", ["a_to_b", "b_to_a"]):
            state, rec = switch(state, spec, direction, rng=rng)
            after = {k: expectation(state, p) for k, p in logicals.items()}
            steps.append({**rec.as_dict(), "logical_expectations": after})
        final = steps[-1]["logical_expectations"]
        preserved = all(final[k] == before[k] for k in before if before[k] != 0)
        runs.append({"basis": st["basis"], "sign": st.get("sign", 1), "start": start,
                     "logical_expectations": before, "steps": steps, "preserved": preserved})
        rows.append({"kind": "switch", "name": f"{st['basis']}{'+' if st.get('sign', 1) == 1 else '-'}",
                     "result": "preserved" if preserved else "changed"})
    verdicts = []
    for chk in s.get("transversal", _DEFAULT_CHECKS):
        v = transversal_gate_check(chk["code"], chk["gate"])
        verdicts.append(v.as_dict())
        rows.append({"kind": "transversal", "name": f"{chk['code']}:{chk['gate']}", "result": v.verdict})
    doc = {"command": "switch", "seed": cfg.seed, "spec": spec.to_dict(), "runs": runs, "verdicts": verdicts}
    return doc, rows


def run_threshold(cfg: RunConfig):
    s = cfg.spec
    tol = cfg.tol if cfg.tol is not None else s.get("tol", 1e-5)
    res = find_threshold(s["family"], s["functional"], s.get("bracket"), tol, zero_tol=s.get("zero_tol", 1e-9),
                         letters=s.get("letters", 1), seed=cfg.seed, restarts=s.get("restarts", 5),
                         allow_boundary=s.get("allow_boundary", False))
    doc = {"command": "threshold", "seed": cfg.seed, **res.as_dict()}
    row = res.as_dict()
    row["bracket"] = f"{res.bracket[0]:.12g}:{res.bracket[1]:.12g}"
    return doc, [row]


def run_sweep(cfg: RunConfig):
    s = cfg.spec
    grid = s["grid"]
    if isinstance(grid, dict):
        grid = np.linspace(grid["start"], grid["stop"], grid["num"]).tolist()
    rows = [r.as_dict() for r in sweep(s["family"], s["functional"], grid, letters=s.get("letters", 1),
                                       seed=cfg.seed, restarts=s.get("restarts", 5), threads=cfg.threads)]
    return {"command": "sweep", "seed": cfg.seed, "rows": rows}, rows


RUNNERS: dict[str, Callable] = {
    "capacity": run_capacity,
    "petz": run_petz,
    "klcheck": run_klcheck,
    "sadecode": run_sadecode,
    "switch": run_switch,
    "threshold": run_threshold,
    "sweep": run_sweep,
}


def run_command(cfg: RunConfig) -> str:
    doc, rows = RUNNERS[cfg.command](cfg)
    return sio.write_results(doc if cfg.fmt == "json" else rows, cfg.fmt, cfg.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="saqec", description="State-adaptive QEC analysis toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    env_threads = int(os.environ.get("SAQEC_THREADS", "1"))
    for name in COMMANDS:
        p = sub.add_parser(name, help=RUNNERS[name].__name__.replace("run_", "") + " command")
        p.add_argument("--spec", help="JSON run spec (omit for an empty spec where allowed)")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=env_threads)
        p.add_argument("--tol", type=float, help="optimizer tolerance (capacity) or bisection width (threshold)")
    return parser


def _error(exc: BaseException) -> int:
    print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
    if isinstance(exc, ValidationError):
        return 2
    if isinstance(exc, ResourceError):
        return 3
    return 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.spec is None:
            if args.command != "switch":
                raise ValidationError(f"{args.command} needs --spec")
            spec = {}
        else:
            spec = sio.parse_spec(args.spec, args.command)
        if args.threads < 1:
            raise ValidationError("--threads must be at least 1")
        cfg = RunConfig(args.command, spec, args.seed, args.tol, args.format, args.out, args.threads)
        text = run_command(cfg)
    except (SaqecError, ArithmeticError) as exc:
        return _error(exc)
    if args.out is None:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
