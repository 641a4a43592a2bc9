"""Command-line driver: encode, decode, simulate, compare, qaoa-demo.

Logs go to stderr; stdout carries a single JSON summary per invocation.
Exit codes: 0 success, 1 parse/validation error, 2 failed internal
equivalence check during encoding, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
import time

from . import distributions
from .analysis import compare, make_baseline, report_to_json, reports_to_csv
from .bench import (
    QAOA_CASE_STUDY_START,
    QAOA_MODES,
    loss_trace_to_csv,
    ring_problem,
    run_qaoa_case_study,
)
from .circuit import gate_counts
from .netlsd import default_grid, netlsd_divergence
from .obfuscate import decode, key_from_json, key_to_json
from .pipeline import PipelineConfig, SynthesisEquivalenceError, encode
from .qasm import parse_qasm, serialize_qasm
from .simulator import sample

log = logging.getLogger("qcloak")


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qcloak-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _config_from_args(args) -> PipelineConfig:
    return PipelineConfig(
        seed=args.seed,
        k=args.k,
        shortlist=args.shortlist,
        rx_density=args.rx_density,
        shots=args.shots,
        sim_cap=args.sim_cap,
    )


def cmd_encode(args) -> int:
    circuit = parse_qasm(_read(args.input))
    cfg = _config_from_args(args)
    t0 = time.perf_counter()
    enc = encode(circuit, cfg)
    wall = time.perf_counter() - t0
    baseline = make_baseline(circuit)
    _write_atomic(args.output, serialize_qasm(enc.circuit))
    _write_atomic(args.key, key_to_json(enc.key))
    counts_enc = gate_counts(enc.circuit)
    counts_base = gate_counts(baseline)
    grid = default_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points)
    log.info("encoded %s -> %s (key %s)", args.input, args.output, args.key)
    _emit(
        {
            "num_qubits": circuit.num_qubits,
            "gates": {
                "encoded": counts_enc.total,
                "baseline": counts_base.total,
                "cx_encoded": counts_enc.cx,
                "cx_baseline": counts_base.cx,
                "sx_x_encoded": counts_enc.sx_plus_x,
                "sx_x_baseline": counts_base.sx_plus_x,
            },
            "netlsd_vs_baseline": netlsd_divergence(enc.circuit, baseline, grid),
            "encode_seconds": wall,
        }
    )
    return 0


def cmd_decode(args) -> int:
    dist = distributions.from_json(_read(args.distribution))
    key = key_from_json(_read(args.key))
    out = decode(dist, key)
    _write_atomic(args.output, distributions.to_json(out))
    log.info("decoded %s with %s -> %s", args.distribution, args.key, args.output)
    _emit({"num_bits": out.num_bits, "outcomes": len(out.outcomes), "top": out.top()})
    return 0


def cmd_simulate(args) -> int:
    circuit = parse_qasm(_read(args.input))
    if circuit.num_qubits > args.sim_cap:
        raise ValueError(
            f"{circuit.num_qubits} qubits exceeds simulation cap {args.sim_cap}"
        )
    dist = sample(circuit, args.shots, args.seed)
    _write_atomic(args.output, distributions.to_json(dist))
    log.info("sampled %d shots from %s -> %s", args.shots, args.input, args.output)
    _emit({"num_bits": dist.num_bits, "shots": args.shots, "top": dist.top()})
    return 0


def cmd_compare(args) -> int:
    circuit = parse_qasm(_read(args.input))
    cfg = _config_from_args(args)
    shots = None if args.analytic else args.shots
    report = compare(
        circuit,
        cfg,
        shots=shots,
        structural_only=args.structural_only,
        name=args.name or os.path.basename(args.input),
    )
    _write_atomic(args.json, report_to_json(report))
    if args.csv:
        _write_atomic(args.csv, reports_to_csv([report]))
    log.info("compared %s -> %s", args.input, args.json)
    print(report_to_json(report))
    return 0


def cmd_qaoa_demo(args) -> int:
    os.makedirs(args.outdir, exist_ok=True)
    prob = ring_problem(4, 1, (args.gamma, args.beta))
    summary = {}
    for mode in QAOA_MODES:
        result = run_qaoa_case_study(
            prob, mode, iterations=args.iterations, seed=args.seed, shots=args.shots
        )
        _write_atomic(
            os.path.join(args.outdir, f"loss_{mode}.csv"), loss_trace_to_csv(result)
        )
        _write_atomic(
            os.path.join(args.outdir, f"final_{mode}.json"),
            distributions.to_json(result.final_distribution),
        )
        ranked = sorted(
            result.final_distribution.normalized().outcomes.items(),
            key=lambda kv: (-kv[1], kv[0]),
        )
        summary[mode] = {
            "final_loss": result.final_loss,
            "evaluations": len(result.losses),
            "top2": [s for s, _ in ranked[:2]],
        }
        log.info("qaoa %s: final loss %.4f", mode, result.final_loss)
    _emit(summary)
    return 0


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="master pipeline seed")
    p.add_argument("--k", type=int, default=3, help="candidates per block")
    p.add_argument("--shortlist", type=int, default=2, help="gate-count shortlist size")
    p.add_argument("--rx-density", type=float, default=1.0, dest="rx_density")
    p.add_argument("--shots", type=int, default=100000)
    p.add_argument("--sim-cap", type=int, default=20, dest="sim_cap")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcloak", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="obfuscate a circuit and emit its key")
    p.add_argument("input", help="input QASM file")
    p.add_argument("output", help="obfuscated QASM file")
    p.add_argument("key", help="key JSON file")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="apply a key to a measured distribution")
    p.add_argument("distribution", help="distribution JSON file")
    p.add_argument("key", help="key JSON file")
    p.add_argument("output", help="decoded distribution JSON file")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="sample a circuit's output distribution")
    p.add_argument("input", help="input QASM file")
    p.add_argument("output", help="counts JSON file")
    p.add_argument("--shots", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sim-cap", type=int, default=20, dest="sim_cap")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="encode and report metrics vs baseline")
    p.add_argument("input", help="input QASM file")
    p.add_argument("--json", default="report.json", help="report JSON path")
    p.add_argument("--csv", default="", help="optional report CSV path")
    p.add_argument("--name", default="", help="benchmark name for the report")
    p.add_argument("--analytic", action="store_true", help="exact distributions")
    p.add_argument(
        "--structural-only",
        action="store_true",
        dest="structural_only",
        help="skip simulation metrics",
    )
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("qaoa-demo", help="ring-4 MaxCut case study, all three modes")
    p.add_argument("outdir", help="directory for loss CSVs and final distributions")
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--shots", type=int, default=8192)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gamma", type=float, default=QAOA_CASE_STUDY_START[0])
    p.add_argument("--beta", type=float, default=QAOA_CASE_STUDY_START[1])
    p.set_defaults(func=cmd_qaoa_demo)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s"
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SynthesisEquivalenceError as exc:
        log.error("equivalence check failed: %s", exc)
        return 2
    except ValueError as exc:
        log.error("%s", exc)
        return 1
    except OSError as exc:
        log.error("%s", exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
