"""End-to-end pipeline and the benchmark / rho-sweep harnesses."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .circuit import Circuit, gen_qft, load_circuit
from .graph import Partition, build_qubit_graph, dispersion_stats
from .qubo import DEFAULT_LAMBDA2, DEFAULT_PHI, QuboParams, build_qubo
from .report import Report
from .solver import SaConfig, solve_sa, validate_partition
from .transfer import naive_cost, optimize_la

log = logging.getLogger(__name__)

CIRCUIT_SUFFIXES = (".qasm", ".txt", ".gl")


class PipelineError(Exception):
    """A pipeline stage failed; ``stage`` names it for the error object."""

    def __init__(self, stage: str, message: str):
        super().__init__(message)
        self.stage = stage

    def to_dict(self) -> dict:
        return {"error": {"stage": self.stage, "message": str(self)}}


@dataclass
class Stage:
    name: str
    timings: dict

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.timings[self.name] = round((time.perf_counter() - self.t0) * 1e3, 3)
        if exc is not None and not isinstance(exc, PipelineError):
            raise PipelineError(self.name, f"{type(exc).__name__}: {exc}") from exc
        return False


def run_pipeline(
    circuit: Circuit,
    k: int,
    rho: float = 1.0,
    lambda1: float | None = None,
    lambda2: float = DEFAULT_LAMBDA2,
    phi: float = DEFAULT_PHI,
    sa: SaConfig = SaConfig(),
    partition: Partition | list[int] | None = None,
    input_desc: str | None = None,
    timings: bool = True,
    defaulted: tuple[str, ...] = (),
    dump_graph: Path | None = None,
    dump_qubo: Path | None = None,
) -> Report:
    """Graph -> QUBO -> partition (solver or given) -> lookahead plan -> report."""
    times: dict[str, float] = {}
    if k > circuit.n_qubits:
        raise PipelineError("partition", f"K={k} exceeds the qubit count N={circuit.n_qubits}")
    with Stage("graph", times):
        g = build_qubit_graph(circuit)
        if dump_graph is not None:
            Path(dump_graph).write_text(g.to_edgelist(), encoding="utf-8")
    with Stage("qubo", times):
        params = QuboParams(k, rho, lambda1, lambda2, phi).resolve(g)
        model = build_qubo(g, params)
        if dump_qubo is not None:
            Path(dump_qubo).write_text(model.to_text(), encoding="utf-8")
    with Stage("solve", times):
        if partition is None:
            p = solve_sa(model, sa).partition
        else:
            p = partition if isinstance(partition, Partition) else Partition(k, tuple(partition))
            if p.k != k or p.n != circuit.n_qubits:
                raise PipelineError(
                    "partition", f"partition has {p.n} qubits / K={p.k}, expected {circuit.n_qubits} / K={k}"
                )
            check = validate_partition(p, circuit.n_qubits, rho)
            if not check:
                log.warning("supplied partition breaks the balance bound: %s", check)
    with Stage("transfer", times):
        stats = dispersion_stats(g, p)
        plan = optimize_la(circuit, p)
        naive = naive_cost(circuit, p)
    return Report(
        version=__version__,
        input=input_desc or circuit.name,
        n_qubits=circuit.n_qubits,
        k=k,
        rho=float(rho),
        lambda1=float(params.lambda1),
        lambda2=float(lambda2),
        phi=float(phi),
        seed=sa.seed,
        assignment=list(p.assign),
        sizes=list(p.counts),
        global_gates=stats.sum_w,
        cut_edges=stats.n_e,
        f_gg=stats.f_gg_str,
        naive_tc=naive,
        la_tc=plan.tc,
        plan=list(plan.queues),
        timings_ms=times if timings else {},
        defaulted=defaulted,
    )


def improvement(naive: int, la: int) -> str:
    """Percent reduction of the lookahead cost relative to the naive cost."""
    if naive == 0:
        return ""
    return f"{100.0 * (naive - la) / naive:.2f}"


BENCH_COLUMNS = ("circuit", "n_qubits", "k", "global_gates", "naive_tc", "la_tc", "improvement", "error")


def run_bench(
    suite: str = "qft",
    ks=(2, 3, 4),
    sizes=(4, 8, 16, 32, 64),
    directory: Path | None = None,
    rho: float = 1.0,
    sa: SaConfig = SaConfig(),
) -> list[dict]:
    """One row per (circuit, K).

    The QFT suite uses contiguous balanced blocks with the smaller blocks first;
    directory circuits are partitioned by the annealer. A failing circuit yields an
    error row and the suite carries on.
    """
    rows = []
    if suite == "qft":
        jobs = [(f"{n}_QFT", lambda n=n: gen_qft(n), True) for n in sizes]
    elif suite == "dir":
        if directory is None:
            raise ValueError("the 'dir' suite needs a directory")
        files = sorted(p for p in Path(directory).iterdir() if p.suffix.lower() in CIRCUIT_SUFFIXES)
        jobs = [(f.stem, lambda f=f: load_circuit(f), False) for f in files]
    else:
        raise ValueError(f"unknown suite '{suite}'")
    for name, make, fixed_blocks in jobs:
        try:
            circuit = make()
        except Exception as exc:  # row-level failure
            for k in ks:
                rows.append(_error_row(name, k, exc))
            continue
        for k in ks:
            try:
                if fixed_blocks:
                    p = Partition.ascending_blocks(circuit.n_qubits, k)
                    naive, la = naive_cost(circuit, p), optimize_la(circuit, p).tc
                    gg = dispersion_stats(build_qubit_graph(circuit), p).sum_w
                else:
                    rep = run_pipeline(circuit, k, rho=rho, sa=sa, timings=False)
                    naive, la, gg = rep.naive_tc, rep.la_tc, rep.global_gates
            except Exception as exc:
                rows.append(_error_row(name, k, exc, circuit.n_qubits))
                continue
            rows.append({
                "circuit": name, "n_qubits": circuit.n_qubits, "k": k, "global_gates": gg,
                "naive_tc": naive, "la_tc": la, "improvement": improvement(naive, la), "error": "",
            })
    return rows


def _error_row(name, k, exc, n_qubits="") -> dict:
    log.error("%s (K=%s): %s", name, k, exc)
    row = dict.fromkeys(BENCH_COLUMNS, "")
    row.update(circuit=name, n_qubits=n_qubits, k=k, error=f"{type(exc).__name__}: {exc}")
    return row


SWEEP_COLUMNS = ("circuit", "k", "rho", "global_gates", "la_tc")


def run_rho_sweep(
    circuit: Circuit,
    k: int,
    rhos,
    sa: SaConfig = SaConfig(),
    lambda1: float | None = None,
    lambda2: float = DEFAULT_LAMBDA2,
    phi: float = DEFAULT_PHI,
) -> list[dict]:
    """Re-solve the partition at each tolerance and report the lookahead cost.

    Whether the cost falls as ``rho`` grows is reported, not enforced.
    """
    rhos = list(rhos)
    if not rhos:
        raise PipelineError("input", "empty rho list")
    rows = []
    for rho in rhos:
        rep = run_pipeline(circuit, k, rho=rho, lambda1=lambda1, lambda2=lambda2, phi=phi, sa=sa, timings=False)
        rows.append({"circuit": circuit.name, "k": k, "rho": rho, "global_gates": rep.global_gates, "la_tc": rep.la_tc})
    return rows
