"""Qubit interaction graph, partitions, and cut/dispersion statistics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .circuit import Circuit


@dataclass(frozen=True, eq=False)
class QubitGraph:
    """Symmetric integer weights ``w[i, j]`` = number of two-qubit gates on {i, j}."""

    n: int
    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=np.int64)
        if w.shape != (self.n, self.n):
            raise ValueError(f"weight matrix shape {w.shape} does not match n={self.n}")
        if not np.array_equal(w, w.T):
            raise ValueError("weight matrix must be symmetric")
        if np.any(np.diag(w) != 0) or np.any(w < 0):
            raise ValueError("weights must be non-negative with a zero diagonal")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    def __eq__(self, other):
        return isinstance(other, QubitGraph) and self.n == other.n and np.array_equal(self.w, other.w)

    @classmethod
    def from_edges(cls, n: int, edges) -> "QubitGraph":
        """Build from ``(i, j, weight)`` triples; repeated pairs accumulate."""
        w = np.zeros((n, n), dtype=np.int64)
        for i, j, weight in edges:
            if i == j:
                raise ValueError(f"self-loop on qubit {i}")
            w[i, j] += weight
            w[j, i] += weight
        return cls(n, w)

    def edges(self) -> list[tuple[int, int, int]]:
        """Nonzero ``(i, j, w)`` with ``i < j`` in row-major order."""
        iu, ju = np.triu_indices(self.n, k=1)
        return [(int(i), int(j), int(self.w[i, j])) for i, j in zip(iu, ju) if self.w[i, j] > 0]

    @property
    def total_weight(self) -> int:
        return int(np.triu(self.w, k=1).sum())

    @property
    def n_edges(self) -> int:
        return int(np.count_nonzero(np.triu(self.w, k=1)))

    def to_edgelist(self) -> str:
        return "".join(f"{i} {j} {w}\n" for i, j, w in self.edges())

    @classmethod
    def from_edgelist(cls, n: int, text: str) -> "QubitGraph":
        edges = []
        for line in text.splitlines():
            if line.strip():
                i, j, w = (int(t) for t in line.split())
                edges.append((i, j, w))
        return cls.from_edges(n, edges)


@dataclass(frozen=True)
class Partition:
    k: int
    assign: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assign", tuple(int(a) for a in self.assign))
        if self.k < 1:
            raise ValueError("partition count must be positive")
        for q, a in enumerate(self.assign):
            if not 0 <= a < self.k:
                raise ValueError(f"qubit {q} assigned to partition {a}, outside [0, {self.k})")

    @property
    def n(self) -> int:
        return len(self.assign)

    @property
    def counts(self) -> tuple[int, ...]:
        sizes = [0] * self.k
        for a in self.assign:
            sizes[a] += 1
        return tuple(sizes)

    def __getitem__(self, q: int) -> int:
        return self.assign[q]

    def members(self, part: int) -> list[int]:
        return [q for q, a in enumerate(self.assign) if a == part]

    @classmethod
    def contiguous(cls, sizes) -> "Partition":
        """Qubit blocks in index order, block ``k`` holding ``sizes[k]`` qubits."""
        assign = []
        for part, size in enumerate(sizes):
            assign.extend([part] * size)
        return cls(len(sizes), tuple(assign))

    @classmethod
    def ascending_blocks(cls, n: int, k: int) -> "Partition":
        """Balanced contiguous blocks with the smaller blocks first, e.g. 8 qubits, K=3 -> (2,3,3)."""
        if k > n:
            raise ValueError(f"cannot split {n} qubits into {k} non-empty blocks")
        base, extra = divmod(n, k)
        return cls.contiguous([base] * (k - extra) + [base + 1] * extra)


@dataclass(frozen=True)
class DispersionStats:
    sum_w: int
    n_e: int
    f_gg: Fraction | None

    @property
    def f_gg_str(self) -> str | None:
        """``"p/q"`` without reduction, so 6/6 stays 6/6."""
        if self.f_gg is None:
            return None
        return f"{self.sum_w}/{self.n_e}"


def build_qubit_graph(c: Circuit) -> QubitGraph:
    w = np.zeros((c.n_qubits, c.n_qubits), dtype=np.int64)
    for g in c.gates:
        if g.is_two_qubit:
            a, b = g.operands
            w[a, b] += 1
            w[b, a] += 1
    return QubitGraph(c.n_qubits, w)


def _check(g: QubitGraph, p: Partition) -> None:
    if p.n != g.n:
        raise ValueError(f"partition covers {p.n} qubits, graph has {g.n}")


def dispersion_stats(g: QubitGraph, p: Partition) -> DispersionStats:
    _check(g, p)
    sum_w = n_e = 0
    for i, j, w in g.edges():
        if p[i] != p[j]:
            sum_w += w
            n_e += 1
    f_gg = Fraction(sum_w, n_e) if n_e else None
    return DispersionStats(sum_w, n_e, f_gg)


def cut_weight(g: QubitGraph, p: Partition) -> int:
    return dispersion_stats(g, p).sum_w


def cut_edges(g: QubitGraph, p: Partition) -> int:
    return dispersion_stats(g, p).n_e


def intra_weight(g: QubitGraph, p: Partition) -> int:
    _check(g, p)
    return sum(w for i, j, w in g.edges() if p[i] == p[j])
