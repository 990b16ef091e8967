"""Qubit partitioning and lookahead transmission planning for distributed circuits."""

__version__ = "0.1.0"

from .circuit import Circuit, CircuitError, Gate, gen_qft, parse_gatelist, parse_qasm, two_qubit_gates
from .graph import DispersionStats, Partition, QubitGraph, build_qubit_graph, cut_weight, dispersion_stats
from .qubo import QuboModel, QuboParams, build_qubo, decode, encode_partition, energy
from .solver import SaConfig, Solution, repair_partition, solve_exhaustive, solve_sa, validate_partition
from .transfer import (
    ImpactFactor,
    TransferPlan,
    TransferQueue,
    brute_force_optimal,
    build_queue,
    clad,
    classify_gate,
    impact_cost,
    impact_factor,
    naive_cost,
    optimize_la,
)

__all__ = [
    "Circuit", "CircuitError", "Gate", "gen_qft", "parse_gatelist", "parse_qasm", "two_qubit_gates",
    "DispersionStats", "Partition", "QubitGraph", "build_qubit_graph", "cut_weight", "dispersion_stats",
    "QuboModel", "QuboParams", "build_qubo", "decode", "encode_partition", "energy",
    "SaConfig", "Solution", "repair_partition", "solve_exhaustive", "solve_sa", "validate_partition",
    "ImpactFactor", "TransferPlan", "TransferQueue", "brute_force_optimal", "build_queue", "clad",
    "classify_gate", "impact_cost", "impact_factor", "naive_cost", "optimize_la",
]
