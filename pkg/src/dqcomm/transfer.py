"""Transmission-qubit selection by dynamic lookahead and merged-transfer planning.

A two-qubit gate whose operands sit in different partitions is *global*: one operand
(the transmission qubit) is shipped to the other's partition and later shipped back,
two transmissions in all. Consecutive global gates that share the transmission qubit
and the destination partition ride on the same round trip, forming one queue.

For a candidate transmission qubit ``q`` of global gate ``i``, every later gate has
an impact factor:

* ``+1`` if it is a global gate on ``q`` whose other operand lives in the destination,
* ``-1`` if it is a local two-qubit gate on ``q`` (the state had to stay home),
* ``0`` otherwise.

The lookahead window ``D`` runs from ``i`` to the first ``-1`` gate inclusive (or to
the end of the circuit), and the candidate scores ``F = sum_k (D - k) * E(i + k)``
for ``k = 1 .. D-1``. The higher-scoring operand is transmitted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .circuit import Circuit, Gate
from .graph import Partition

BRUTE_FORCE_LIMIT = 16


class Locality(enum.Enum):
    NEITHER = "neither"
    LOCAL = "local"
    GLOBAL = "global"


@dataclass(frozen=True)
class GateLocality:
    kind: Locality
    source: int | None = None  # partition of operands[0]
    target: int | None = None  # partition of operands[1]

    @property
    def is_global(self) -> bool:
        return self.kind is Locality.GLOBAL


class ImpactFactor(enum.IntEnum):
    NEGATIVE = -1
    NONE = 0
    POSITIVE = 1


@dataclass(frozen=True)
class LookaheadEval:
    qubit: int
    home: int
    target: int
    depth: int
    impact_cost: int
    contributions: tuple[tuple[int, int, int], ...]  # (gate index, k, f_k), nonzero only


@dataclass(frozen=True)
class TransferQueue:
    qubit: int
    source: int
    target: int
    gates: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"qubit": self.qubit, "source": self.source, "target": self.target, "gates": list(self.gates)}

    @classmethod
    def from_dict(cls, d: dict) -> "TransferQueue":
        return cls(int(d["qubit"]), int(d["source"]), int(d["target"]), tuple(int(x) for x in d["gates"]))


@dataclass(frozen=True)
class TransferPlan:
    queues: tuple[TransferQueue, ...]
    coverage: dict[int, int] = field(default_factory=dict)  # global gate index -> queue position
    evaluations: tuple[tuple[LookaheadEval, LookaheadEval], ...] = ()

    @property
    def tc(self) -> int:
        return 2 * len(self.queues)


def classify_gate(gate: Gate, p: Partition) -> GateLocality:
    if not gate.is_two_qubit:
        return GateLocality(Locality.NEITHER)
    a, b = gate.operands
    if p[a] == p[b]:
        return GateLocality(Locality.LOCAL, p[a], p[b])
    return GateLocality(Locality.GLOBAL, p[a], p[b])


def _impact(gate: Gate, p: Partition, q: int, target: int) -> ImpactFactor:
    if not gate.is_two_qubit or q not in gate.operands:
        return ImpactFactor.NONE
    other = p[gate.other(q)]
    if other == p[q]:
        return ImpactFactor.NEGATIVE
    if other == target:
        return ImpactFactor.POSITIVE
    return ImpactFactor.NONE


def impact_factor(c: Circuit, p: Partition, later_gate: Gate, q: int, target: int) -> ImpactFactor:
    """Effect on ``later_gate`` of having shipped ``q`` to partition ``target``."""
    if p[q] == target:
        raise ValueError(f"qubit {q} already lives in partition {target}")
    return _impact(later_gate, p, q, target)


def _check_trigger(c: Circuit, p: Partition, i: int, q: int) -> int:
    """Validate that gate ``i`` is global on ``q``; return the destination partition."""
    gate = c.gates[i]
    if q not in gate.operands:
        raise ValueError(f"qubit {q} is not an operand of gate {i} ({gate})")
    if not classify_gate(gate, p).is_global:
        raise ValueError(f"gate {i} ({gate}) is not a global gate")
    return p[gate.other(q)]


def clad(c: Circuit, p: Partition, i: int, q: int) -> int:
    """Lookahead depth for shipping ``q`` at global gate ``i``."""
    target = _check_trigger(c, p, i, q)
    gates = c.gates
    j = i + 1
    while j < len(gates):
        if _impact(gates[j], p, q, target) is ImpactFactor.NEGATIVE:
            return j - i + 1
        j += 1
    return len(gates) - 1 - i + 1


def impact_cost(c: Circuit, p: Partition, i: int, q: int) -> LookaheadEval:
    target = _check_trigger(c, p, i, q)
    depth = clad(c, p, i, q)
    total = 0
    contributions = []
    for k in range(1, depth):
        e = _impact(c.gates[i + k], p, q, target)
        if e:
            f = (depth - k) * int(e)
            total += f
            contributions.append((i + k, k, f))
    return LookaheadEval(q, p[q], target, depth, total, tuple(contributions))


def build_queue(c: Circuit, p: Partition, i: int, q: int, covered=frozenset()) -> TransferQueue:
    """Gate ``i`` plus the later uncovered global gates on ``q`` toward the same partition.

    The scan stops at the first local two-qubit gate on ``q``. Gates in ``covered``
    belong to earlier queues and are passed over.
    """
    target = _check_trigger(c, p, i, q)
    members = [i]
    for gate in c.gates[i + 1:]:
        e = _impact(gate, p, q, target)
        if e is ImpactFactor.NEGATIVE:
            break
        if e is ImpactFactor.POSITIVE and gate.index not in covered:
            members.append(gate.index)
    return TransferQueue(q, p[q], target, tuple(members))


def _global_indices(c: Circuit, p: Partition) -> list[int]:
    return [g.index for g in c.gates if classify_gate(g, p).is_global]


def _plan(c: Circuit, p: Partition, choose) -> TransferPlan:
    """Left-to-right queue construction; ``choose(gate, covered)`` returns ``(qubit, evals)``."""
    covered: dict[int, int] = {}
    queues = []
    evaluations = []
    for gate in c.gates:
        if gate.index in covered or not classify_gate(gate, p).is_global:
            continue
        q, evals = choose(gate, covered)
        if evals is not None:
            evaluations.append(evals)
        queue = build_queue(c, p, gate.index, q, covered)
        for idx in queue.gates:
            covered[idx] = len(queues)
        queues.append(queue)
    return TransferPlan(tuple(queues), covered, tuple(evaluations))


def optimize_la(c: Circuit, p: Partition, force: dict[int, int] | None = None) -> TransferPlan:
    """Dynamic-lookahead transfer plan.

    Both operands of each uncovered global gate are scored; the larger impact cost
    wins. On a tie the operand whose queue covers more gates wins, then the lower
    qubit id. ``force`` maps a gate index to a transmission qubit that overrides
    the choice whenever that gate triggers a queue.
    """
    if p.n != c.n_qubits:
        raise ValueError(f"partition covers {p.n} qubits, circuit has {c.n_qubits}")
    force = force or {}

    def choose(gate, covered):
        a, b = gate.operands
        ea = impact_cost(c, p, gate.index, a)
        eb = impact_cost(c, p, gate.index, b)
        if gate.index in force:
            q = force[gate.index]
            if q not in gate.operands:
                raise ValueError(f"forced qubit {q} is not an operand of gate {gate.index}")
            return q, (ea, eb)
        if ea.impact_cost != eb.impact_cost:
            return (a if ea.impact_cost > eb.impact_cost else b), (ea, eb)
        la = len(build_queue(c, p, gate.index, a, covered).gates)
        lb = len(build_queue(c, p, gate.index, b, covered).gates)
        if la != lb:
            return (a if la > lb else b), (ea, eb)
        return min(a, b), (ea, eb)

    return _plan(c, p, choose)


def naive_cost(c: Circuit, p: Partition) -> int:
    """Two transmissions per global gate, no merging."""
    return 2 * len(_global_indices(c, p))


def brute_force_optimal(c: Circuit, p: Partition, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Minimum plan cost over every transmission-qubit choice vector.

    Only gates that actually trigger a queue consume their choice, so the search
    branches at triggers; the set of reachable plans equals that of the full
    ``2**g`` enumeration.
    """
    globals_ = _global_indices(c, p)
    if len(globals_) > limit:
        raise ValueError(f"{len(globals_)} global gates exceed the brute-force limit {limit}")
    gates = c.gates
    best = 2 * len(globals_)

    def search(pos: int, covered: frozenset, n_queues: int):
        nonlocal best
        if 2 * n_queues >= best:
            return
        while pos < len(globals_) and globals_[pos] in covered:
            pos += 1
        if pos == len(globals_):
            best = 2 * n_queues
            return
        idx = globals_[pos]
        for q in gates[idx].operands:
            queue = build_queue(c, p, idx, q, covered)
            search(pos + 1, covered | set(queue.gates), n_queues + 1)

    search(0, frozenset(), 0)
    return best


def check_plan(c: Circuit, p: Partition, plan: TransferPlan) -> list[str]:
    """Independent rescan of a plan; returns a list of problems (empty when sound)."""
    problems = []
    globals_ = set(_global_indices(c, p))
    seen: dict[int, int] = {}
    for pos, queue in enumerate(plan.queues):
        if not queue.gates:
            problems.append(f"queue {pos} is empty")
            continue
        if list(queue.gates) != sorted(set(queue.gates)):
            problems.append(f"queue {pos} gates not strictly ascending")
        if p[queue.qubit] != queue.source or queue.source == queue.target:
            problems.append(f"queue {pos} has inconsistent partitions")
        for idx in queue.gates:
            gate = c.gates[idx]
            if idx not in globals_:
                problems.append(f"queue {pos} lists non-global gate {idx}")
            elif queue.qubit not in gate.operands or p[gate.other(queue.qubit)] != queue.target:
                problems.append(f"queue {pos} lists gate {idx} that does not move q{queue.qubit} to P{queue.target}")
            if idx in seen:
                problems.append(f"gate {idx} covered by queues {seen[idx]} and {pos}")
            seen[idx] = pos
        first, last = queue.gates[0], queue.gates[-1]
        for gate in c.gates[first + 1:last]:
            if gate.is_two_qubit and queue.qubit in gate.operands and p[gate.operands[0]] == p[gate.operands[1]]:
                problems.append(f"queue {pos} spans local gate {gate.index} on q{queue.qubit}")
    missing = globals_ - set(seen)
    if missing:
        problems.append(f"global gates not covered: {sorted(missing)}")
    if [q.gates[0] for q in plan.queues] != sorted(q.gates[0] for q in plan.queues):
        problems.append("queues not ordered by first gate")
    return problems
