"""Command-line entry point: ``dqcomm pipeline | bench | rho-sweep``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from .circuit import CircuitError, gen_qft, load_circuit
from .pipeline import BENCH_COLUMNS, SWEEP_COLUMNS, PipelineError, run_bench, run_pipeline, run_rho_sweep
from .qubo import DEFAULT_LAMBDA2, DEFAULT_PHI
from .solver import SaConfig

# flags whose values are reported as "(default)" when not given explicitly
TRACKED_DEFAULTS = ("rho", "lambda1", "lambda2", "phi", "seed")


def _add_circuit_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", type=Path, metavar="PATH", help="OpenQASM (.qasm) or gate-list file")
    src.add_argument("--qft", type=int, metavar="N", help="generate an N-qubit QFT")
    p.add_argument("--k", type=int, required=True, help="number of partitions")


def _add_qubo_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda1", type=float, default=None, help="one-hot penalty (default: derived from the graph)")
    p.add_argument("--lambda2", type=float, default=None, help=f"balance penalty (default {DEFAULT_LAMBDA2})")
    p.add_argument("--phi", type=float, default=None, help=f"dispersion weight in (-1, 0) (default {DEFAULT_PHI})")
    p.add_argument("--seed", type=int, default=None, help="annealer seed (default 0)")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--sweeps", type=int, default=500)
    p.add_argument("--t-initial", type=float, default=None, help="initial temperature (default lambda1)")
    p.add_argument("--t-final", type=float, default=0.01)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dqcomm", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    pipe = sub.add_parser("pipeline", help="partition one circuit and plan its transmissions")
    _add_circuit_args(pipe)
    pipe.add_argument("--rho", type=float, default=None, help="load-balance tolerance (default 1)")
    _add_qubo_args(pipe)
    part = pipe.add_mutually_exclusive_group()
    part.add_argument("--partition", metavar="IDS", help="comma-separated partition ids; skips the solver")
    part.add_argument("--partition-file", type=Path, metavar="PATH", help="file holding one line of partition ids")
    pipe.add_argument("--format", choices=("json", "text"), default="json")
    pipe.add_argument("--no-timings", action="store_true", help="emit an empty timings_ms object")
    pipe.add_argument("--dump-graph", type=Path, metavar="PATH", help="write the qubit graph as 'i j w' lines")
    pipe.add_argument("--dump-qubo", type=Path, metavar="PATH", help="write QUBO coefficients as 'u v c' lines")

    bench = sub.add_parser("bench", help="CSV table of naive vs lookahead cost")
    bench.add_argument("--suite", choices=("qft", "dir"), default="qft")
    bench.add_argument("--dir", type=Path, metavar="PATH", help="circuit directory for --suite dir")
    bench.add_argument("--k", type=int, nargs="+", default=[2, 3, 4])
    bench.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32, 64], help="QFT sizes")
    bench.add_argument("--rho", type=float, default=1.0)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--restarts", type=int, default=8)
    bench.add_argument("--sweeps", type=int, default=500)
    bench.add_argument("--output", type=Path, metavar="PATH", help="write CSV here instead of stdout")

    sweep = sub.add_parser("rho-sweep", help="CSV of lookahead cost across load-balance tolerances")
    _add_circuit_args(sweep)
    sweep.add_argument("--rho", type=float, nargs="*", default=[1.0, 3.0, 5.0, 7.0, 9.0])
    _add_qubo_args(sweep)
    sweep.add_argument("--output", type=Path, metavar="PATH")
    return parser


def _circuit(args):
    try:
        if args.qft is not None:
            return gen_qft(args.qft)
        return load_circuit(args.input)
    except (CircuitError, OSError) as exc:
        raise PipelineError("input", str(exc)) from exc


def _sa_config(args) -> SaConfig:
    try:
        return SaConfig(
            seed=args.seed if args.seed is not None else 0,
            restarts=args.restarts,
            sweeps=args.sweeps,
            t_initial=getattr(args, "t_initial", None),
            t_final=getattr(args, "t_final", 0.01),
        )
    except ValueError as exc:
        raise PipelineError("input", str(exc)) from exc


def _partition_ids(args) -> list[int] | None:
    text = args.partition
    if args.partition_file is not None:
        try:
            text = args.partition_file.read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise PipelineError("input", str(exc)) from exc
    if text is None:
        return None
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise PipelineError("input", f"malformed partition '{text}'") from exc


def _write_csv(rows, columns, path):
    out = open(path, "w", newline="", encoding="utf-8") if path else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if path:
            out.close()


def _cmd_pipeline(args) -> None:
    circuit = _circuit(args)
    defaulted = tuple(name for name in TRACKED_DEFAULTS if getattr(args, name) is None)
    report = run_pipeline(
        circuit,
        args.k,
        rho=args.rho if args.rho is not None else 1.0,
        lambda1=args.lambda1,
        lambda2=args.lambda2 if args.lambda2 is not None else DEFAULT_LAMBDA2,
        phi=args.phi if args.phi is not None else DEFAULT_PHI,
        sa=_sa_config(args),
        partition=_partition_ids(args),
        input_desc=f"qft:{args.qft}" if args.qft is not None else str(args.input),
        timings=not args.no_timings,
        defaulted=defaulted,
        dump_graph=args.dump_graph,
        dump_qubo=args.dump_qubo,
    )
    sys.stdout.write(report.to_json() + "\n" if args.format == "json" else report.to_text())


def _cmd_bench(args) -> None:
    sa = SaConfig(seed=args.seed, restarts=args.restarts, sweeps=args.sweeps)
    try:
        rows = run_bench(args.suite, ks=args.k, sizes=args.sizes, directory=args.dir, rho=args.rho, sa=sa)
    except (ValueError, OSError) as exc:
        raise PipelineError("input", str(exc)) from exc
    _write_csv(rows, BENCH_COLUMNS, args.output)


def _cmd_rho_sweep(args) -> None:
    circuit = _circuit(args)
    rows = run_rho_sweep(
        circuit,
        args.k,
        args.rho,
        sa=_sa_config(args),
        lambda1=args.lambda1,
        lambda2=args.lambda2 if args.lambda2 is not None else DEFAULT_LAMBDA2,
        phi=args.phi if args.phi is not None else DEFAULT_PHI,
    )
    _write_csv(rows, SWEEP_COLUMNS, args.output)


COMMANDS = {"pipeline": _cmd_pipeline, "bench": _cmd_bench, "rho-sweep": _cmd_rho_sweep}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        COMMANDS[args.command](args)
    except PipelineError as exc:
        print(json.dumps(exc.to_dict()), file=sys.stderr)
        return 1
    except Exception as exc:
        err = {"error": {"stage": args.command, "message": f"{type(exc).__name__}: {exc}"}}
        print(json.dumps(err), file=sys.stderr)
        return 1
    return 0
