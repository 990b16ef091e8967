"""QUBO solvers: seeded simulated annealing and an exhaustive oracle.

Both return a :class:`Solution` whose partition also satisfies the load-balance
tolerance ``rho`` (``max_k |n_k - N/K| <= rho``). The annealer works on raw bit
flips, so one-hot feasibility comes from the penalty term; the balance bound is
restored afterwards by :func:`repair_partition`, followed by a balance-preserving
descent over qubit moves and swaps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import Partition, QubitGraph
from .qubo import Infeasible, QuboModel, decode, encode_partition, energy

EXHAUSTIVE_LIMIT = 10**6
ENERGY_TOL = 1e-9


class InfeasibleError(RuntimeError):
    """No restart produced a one-hot, balance-feasible assignment."""

    def __init__(self, message: str, bits=None, energy=None):
        super().__init__(message)
        self.bits = bits
        self.energy = energy


@dataclass(frozen=True)
class SaConfig:
    seed: int = 0
    restarts: int = 8
    sweeps: int = 500
    t_initial: float | None = None  # None -> lambda1 of the model
    t_final: float = 0.01

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.sweeps < 1:
            raise ValueError("sweeps must be >= 1")
        if not self.t_final > 0:
            raise ValueError("t_final must be > 0")
        if self.t_initial is not None and not self.t_initial >= self.t_final:
            raise ValueError("t_initial must be >= t_final")


@dataclass(frozen=True)
class Solution:
    bits: tuple[int, ...]
    energy: float
    partition: Partition | None
    feasible: bool
    restart: int | None = None
    repaired: bool = False


@dataclass(frozen=True)
class BalanceCheck:
    """Outcome of a load-balance check; truthy when every partition is within ``rho``."""

    ok: bool
    target: Fraction
    rho: float
    violations: tuple[tuple[int, int], ...] = field(default_factory=tuple)  # (partition, size)

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        parts = ", ".join(f"P{p} has {s} (|{s}-{float(self.target):.3g}| > {self.rho})" for p, s in self.violations)
        return f"load-balance violation: {parts}"


def validate_partition(p: Partition, n: int, rho: float) -> BalanceCheck:
    if p.n != n:
        raise ValueError(f"partition covers {p.n} qubits, expected {n}")
    target = Fraction(n, p.k)
    bound = Fraction(rho)
    bad = tuple((part, size) for part, size in enumerate(p.counts) if abs(size - target) > bound)
    return BalanceCheck(not bad, target, rho, bad)


def repair_partition(g: QubitGraph, p: Partition, rho: float) -> Partition:
    """Greedily move qubits from over-full to under-full partitions until ``rho`` holds.

    Each move picks the (qubit, destination) pair with the smallest cut-weight
    increase, ties going to the lowest qubit id and then the lowest destination.
    Only pairs whose sizes differ by at least two are eligible, so every move
    strictly lowers the squared imbalance.
    """
    if not 0 <= rho:
        raise ValueError("rho must be >= 0")
    assign = list(p.assign)
    k, n = p.k, p.n
    target = Fraction(n, k)
    w = g.w
    while not validate_partition(Partition(k, assign), n, rho):
        sizes = Partition(k, assign).counts
        over = [a for a in range(k) if sizes[a] > target]
        under = [b for b in range(k) if sizes[b] < target]
        best = None
        for q in range(n):
            src = assign[q]
            if src not in over:
                continue
            row = w[q]
            for dst in under:
                if sizes[src] - sizes[dst] < 2:
                    continue
                # edges to src become cut, edges to dst stop being cut
                delta = sum(int(row[j]) for j in range(n) if j != q and assign[j] == src) - sum(
                    int(row[j]) for j in range(n) if assign[j] == dst
                )
                key = (delta, q, dst)
                if best is None or key < best:
                    best = key
        if best is None:
            raise InfeasibleError(
                f"sizes {sizes} are as balanced as possible yet violate rho={rho} for N={n}, K={k}"
            )
        _, q, dst = best
        assign[q] = dst
    return Partition(k, tuple(assign))


def _flip_delta(lin, jmat, bits, flips) -> float:
    """Energy change of flipping every variable in ``flips`` at once."""
    signs = [(u, -1.0 if bits[u] else 1.0) for u in flips]
    delta = 0.0
    for a, (u, su) in enumerate(signs):
        delta += su * (lin[u] + float(jmat[u] @ bits))
        for v, sv in signs[a + 1:]:
            delta += su * sv * jmat[u, v]
    return delta


def _polish(m: QuboModel, lin, jmat, p: Partition) -> Partition:
    """First-improvement descent over single-qubit moves and pairwise swaps.

    Only balance-feasible neighbours are considered, so the result stays within ``rho``.
    """
    k, n, rho = m.k, m.n, m.params.rho
    assign = list(p.assign)
    bits = np.array(encode_partition(m, p), dtype=float)

    def apply(flips):
        for u in flips:
            bits[u] = 1.0 - bits[u]

    improved = True
    while improved:
        improved = False
        for q in range(n):
            for dst in range(k):
                src = assign[q]
                if dst == src:
                    continue
                trial = assign.copy()
                trial[q] = dst
                if not validate_partition(Partition(k, trial), n, rho):
                    continue
                flips = (q * k + src, q * k + dst)
                if _flip_delta(lin, jmat, bits, flips) < -ENERGY_TOL:
                    apply(flips)
                    assign = trial
                    improved = True
        for q in range(n):
            for r in range(q + 1, n):
                a, b = assign[q], assign[r]
                if a == b:
                    continue
                flips = (q * k + a, q * k + b, r * k + b, r * k + a)
                if _flip_delta(lin, jmat, bits, flips) < -ENERGY_TOL:
                    apply(flips)
                    assign[q], assign[r] = b, a
                    improved = True
    return Partition(k, tuple(assign))


def _finish(m: QuboModel, bits, restart=None, couplings=None) -> Solution:
    """Decode, repair the balance bound, polish, and re-evaluate the energy."""
    decoded = decode(m, bits)
    if isinstance(decoded, Infeasible):
        return Solution(tuple(bits), energy(m, bits), None, False, restart)
    fixed = repair_partition(m.graph, decoded, m.params.rho)
    repaired = fixed != decoded
    lin, jmat = couplings if couplings is not None else _couplings(m)
    fixed = _polish(m, lin, jmat, fixed)
    bits = encode_partition(m, fixed)
    return Solution(tuple(bits), energy(m, bits), fixed, True, restart, repaired)


def _couplings(m: QuboModel) -> tuple[np.ndarray, np.ndarray]:
    """Linear terms and the symmetric, zero-diagonal coupling matrix."""
    nv = m.n_vars
    lin = np.zeros(nv)
    jmat = np.zeros((nv, nv))
    for (u, v), c in m.coeffs.items():
        if u == v:
            lin[u] += c
        else:
            jmat[u, v] += c
            jmat[v, u] += c
    return lin, jmat


def _anneal(lin: np.ndarray, jmat: np.ndarray, temps: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    nv = lin.size
    bits = rng.integers(0, 2, size=nv).astype(np.int8)
    field_ = jmat @ bits.astype(float)
    lin_l = lin.tolist()
    cur = float(lin @ bits + 0.5 * bits @ field_)
    best, best_bits = cur, bits.copy()
    for t in temps:
        draws = rng.random(nv)
        for u in range(nv):
            local = lin_l[u] + field_[u]
            delta = -local if bits[u] else local
            if delta <= 0.0 or draws[u] < math.exp(-delta / t):
                if bits[u]:
                    bits[u] = 0
                    field_ -= jmat[u]
                else:
                    bits[u] = 1
                    field_ += jmat[u]
                cur += delta
                if cur < best - ENERGY_TOL:
                    best, best_bits = cur, bits.copy()
    # zero-temperature descent from the best state seen
    bits = best_bits
    field_ = jmat @ bits.astype(float)
    improved = True
    while improved:
        improved = False
        for u in range(nv):
            local = lin_l[u] + field_[u]
            delta = -local if bits[u] else local
            if delta < -ENERGY_TOL:
                if bits[u]:
                    bits[u] = 0
                    field_ -= jmat[u]
                else:
                    bits[u] = 1
                    field_ += jmat[u]
                improved = True
    return bits


def solve_sa(m: QuboModel, cfg: SaConfig) -> Solution:
    """Best feasible solution over ``cfg.restarts`` independent annealing runs.

    Restart ``r`` draws from ``numpy.random.default_rng(seed + r)``, and equal
    energies go to the lower restart, so the result is a pure function of ``(m, cfg)``.
    """
    lin, jmat = _couplings(m)
    t0 = cfg.t_initial if cfg.t_initial is not None else max(m.params.lambda1, cfg.t_final)
    steps = np.arange(1, cfg.sweeps + 1) / cfg.sweeps
    temps = t0 * (cfg.t_final / t0) ** steps
    best: Solution | None = None
    best_any: Solution | None = None
    for r in range(cfg.restarts):
        rng = np.random.default_rng(cfg.seed + r)
        bits = _anneal(lin, jmat, temps, rng)
        sol = _finish(m, tuple(int(b) for b in bits), restart=r, couplings=(lin, jmat))
        if sol.feasible:
            if best is None or sol.energy < best.energy - ENERGY_TOL:
                best = sol
        elif best_any is None or sol.energy < best_any.energy - ENERGY_TOL:
            best_any = sol
    if best is None:
        raise InfeasibleError(
            "annealer found no one-hot assignment; raise lambda1 or sweeps",
            bits=best_any.bits, energy=best_any.energy,
        )
    return best


def solve_exhaustive(m: QuboModel) -> Solution:
    """Global minimum over every balance-feasible assignment, lexicographic tie-break."""
    n, k = m.n, m.k
    if k ** n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"K^N = {k}^{n} exceeds the exhaustive limit {EXHAUSTIVE_LIMIT}")
    q = m.matrix()
    rho = m.params.rho
    target = Fraction(n, k)
    best_energy = math.inf
    best_assign = None
    chunk = 1 << 15
    it = itertools.product(range(k), repeat=n)
    while True:
        block = np.array(list(itertools.islice(it, chunk)), dtype=np.int64).reshape(-1, n)
        if not len(block):
            break
        sizes = np.stack([(block == p).sum(axis=1) for p in range(k)], axis=1)
        ok = np.all(np.abs(sizes * k - n) <= float(Fraction(rho) * k), axis=1)
        # exact check for the boundary rows that float comparison could misjudge
        for row in np.nonzero(ok)[0]:
            ok[row] = all(abs(int(s) - target) <= Fraction(rho) for s in sizes[row])
        if ok.any():
            x = np.zeros((block.shape[0], n * k))
            x[np.arange(block.shape[0])[:, None], np.arange(n) * k + block] = 1.0
            e = np.einsum("bi,ij,bj->b", x, q, x) + m.offset
            e[~ok] = math.inf
            idx = int(np.argmin(e))
            # first row within tolerance of the block minimum keeps lexicographic order
            idx = int(np.nonzero(e <= e[idx] + ENERGY_TOL)[0][0])
            if e[idx] < best_energy - ENERGY_TOL:
                best_energy = float(e[idx])
                best_assign = tuple(int(a) for a in block[idx])
        if block.shape[0] < chunk:
            break
    if best_assign is None:
        raise InfeasibleError(f"no assignment of N={n} qubits into K={k} satisfies rho={rho}")
    p = Partition(k, best_assign)
    bits = encode_partition(m, p)
    return Solution(bits, energy(m, bits), p, True, None)

