"""QUBO encoding of K-way qubit partitioning.

Binary variable ``x[i*K + k]`` is 1 when qubit ``i`` sits in partition ``k``. The
energy over one-hot assignments is, up to a constant,

    (1 + phi) * cut_weight - phi * cut_edges + lambda2 * sum_k (n_k - N/K)^2

and every qubit whose K bits are not exactly one-hot adds ``lambda1 * (sum_k x_ik - 1)^2``.
The load-balance tolerance ``rho`` is not encoded; the solver enforces it afterwards.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .graph import Partition, QubitGraph

DEFAULT_PHI = -0.5
DEFAULT_LAMBDA2 = 1.0


def default_lambda1(g: QubitGraph, k: int, phi: float = DEFAULT_PHI) -> float:
    """One-hot penalty large enough that breaking one-hot never pays off."""
    return 2.0 * (1.0 + abs(phi)) * g.total_weight + k * g.n


@dataclass(frozen=True)
class QuboParams:
    k: int
    rho: float = 1.0
    lambda1: float | None = None
    lambda2: float = DEFAULT_LAMBDA2
    phi: float = DEFAULT_PHI

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"need at least 2 partitions, got K={self.k}")
        if not self.rho >= 0:
            raise ValueError(f"rho must be >= 0, got {self.rho}")
        if self.lambda1 is not None and not self.lambda1 > 0:
            raise ValueError(f"lambda1 must be > 0, got {self.lambda1}")
        if not self.lambda2 >= 0:
            raise ValueError(f"lambda2 must be >= 0, got {self.lambda2}")
        if not -1.0 < self.phi < 0.0:
            raise ValueError(f"phi must lie in (-1, 0), got {self.phi}")

    def resolve(self, g: QubitGraph) -> "QuboParams":
        """Copy with ``lambda1`` filled in from the graph when left unset."""
        if self.lambda1 is not None:
            return self
        return QuboParams(self.k, self.rho, default_lambda1(g, self.k, self.phi), self.lambda2, self.phi)


@dataclass(frozen=True)
class Infeasible:
    """Decode result for a bit vector that is not one-hot; ``qubit`` is the first offender."""

    qubit: int
    bits: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class QuboModel:
    graph: QubitGraph
    params: QuboParams
    coeffs: dict[tuple[int, int], float]
    offset: float

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def n_vars(self) -> int:
        return self.n * self.params.k

    def var(self, i: int, k: int) -> int:
        return i * self.params.k + k

    def matrix(self) -> np.ndarray:
        """Upper-triangular Q with ``energy = x @ Q @ x + offset``."""
        q = np.zeros((self.n_vars, self.n_vars))
        for (u, v), c in self.coeffs.items():
            q[u, v] += c
        return q

    def to_text(self) -> str:
        lines = [f"{u} {v} {c!r}" for (u, v), c in sorted(self.coeffs.items())]
        lines.append(f"offset {self.offset!r}")
        return "\n".join(lines) + "\n"


def build_qubo(g: QubitGraph, params: QuboParams) -> QuboModel:
    params = params.resolve(g)
    n, k = g.n, params.k
    if k > n:
        raise ValueError(f"K={k} exceeds the qubit count N={n}")
    phi, lam1, lam2 = params.phi, params.lambda1, params.lambda2
    coeffs: dict[tuple[int, int], float] = defaultdict(float)
    offset = 0.0

    def var(i, p):
        return i * k + p

    # F1 + F2: for each edge, sum_k [(1+phi) W - phi] (1 - x_ik x_jk)
    for i, j, w in g.edges():
        per_pair = (1.0 + phi) * w - phi
        offset += k * per_pair
        for p in range(k):
            coeffs[(var(i, p), var(j, p))] -= per_pair

    # lambda1 * (sum_k x_ik - 1)^2 = lambda1 * (1 - sum_k x_ik + 2 sum_{k<l} x_ik x_il)
    for i in range(n):
        offset += lam1
        for p in range(k):
            coeffs[(var(i, p), var(i, p))] -= lam1
            for r in range(p + 1, k):
                coeffs[(var(i, p), var(i, r))] += 2.0 * lam1

    # lambda2 * sum_k (sum_i x_ik - N/K)^2
    if lam2:
        target = n / k
        for p in range(k):
            offset += lam2 * target * target
            for i in range(n):
                coeffs[(var(i, p), var(i, p))] += lam2 * (1.0 - 2.0 * target)
                for j in range(i + 1, n):
                    coeffs[(var(i, p), var(j, p))] += 2.0 * lam2

    clean = {key: c for key, c in coeffs.items() if c != 0.0}
    if not all(math.isfinite(c) for c in clean.values()) or not math.isfinite(offset):
        raise ValueError("non-finite QUBO coefficient")
    return QuboModel(g, params, clean, offset)


def energy(m: QuboModel, bits) -> float:
    bits = tuple(bits)
    if len(bits) != m.n_vars:
        raise ValueError(f"bit vector has length {len(bits)}, model has {m.n_vars} variables")
    total = m.offset
    for (u, v), c in m.coeffs.items():
        if bits[u] and bits[v]:
            total += c
    return total


def encode_partition(m: QuboModel, p: Partition) -> tuple[int, ...]:
    if p.k != m.k or p.n != m.n:
        raise ValueError(f"partition (N={p.n}, K={p.k}) does not match model (N={m.n}, K={m.k})")
    bits = [0] * m.n_vars
    for i, part in enumerate(p.assign):
        bits[m.var(i, part)] = 1
    return tuple(bits)


def decode(m: QuboModel, bits) -> Partition | Infeasible:
    bits = tuple(int(b) for b in bits)
    if len(bits) != m.n_vars:
        raise ValueError(f"bit vector has length {len(bits)}, model has {m.n_vars} variables")
    k = m.k
    assign = []
    for i in range(m.n):
        row = bits[i * k:(i + 1) * k]
        if sum(row) != 1:
            return Infeasible(i, bits)
        assign.append(row.index(1))
    return Partition(k, tuple(assign))

