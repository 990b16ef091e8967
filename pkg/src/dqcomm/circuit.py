"""Circuit data model, the two text input formats, and the QFT generator."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

ONE_QUBIT_GATES = frozenset({"h", "x", "y", "z", "s", "sdg", "t", "tdg", "rx", "ry", "rz"})
TWO_QUBIT_GATES = frozenset({"cx", "cz", "cp", "swap"})
SUPPORTED_GATES = ONE_QUBIT_GATES | TWO_QUBIT_GATES
PARAMETRIC_GATES = frozenset({"rx", "ry", "rz", "cp"})

# QASM spellings that map onto a supported mnemonic
QASM_ALIASES = {"cu1": "cp", "cnot": "cx", "u1": "rz", "p": "rz", "cphase": "cp"}


class CircuitError(ValueError):
    """Raised for malformed circuits or unparseable input text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Gate:
    index: int
    name: str
    operands: tuple[int, ...]
    param: float | None = None

    @property
    def is_two_qubit(self) -> bool:
        return len(self.operands) == 2

    def other(self, q: int) -> int:
        """The operand that is not ``q`` (two-qubit gates only)."""
        a, b = self.operands
        return b if q == a else a

    def __str__(self) -> str:
        args = ",".join(f"q{q}" for q in self.operands)
        if self.param is None:
            return f"{self.name}({args})"
        return f"{self.name}({self.param:.6g})({args})"


@dataclass(frozen=True)
class Circuit:
    name: str
    n_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n_qubits < 0:
            raise CircuitError("qubit count must be non-negative")
        for pos, g in enumerate(self.gates):
            if g.index != pos:
                raise CircuitError(f"gate index {g.index} at position {pos}")
            _check_gate(g.name, g.operands, self.n_qubits)

    def __len__(self) -> int:
        return len(self.gates)

    @classmethod
    def from_ops(cls, name: str, n_qubits: int, ops) -> "Circuit":
        """Build from ``(name, operands)`` or ``(name, operands, param)`` tuples."""
        gates = []
        for pos, op in enumerate(ops):
            gname, operands, *rest = op
            param = rest[0] if rest else None
            gates.append(Gate(pos, gname, tuple(operands), param))
        return cls(name, n_qubits, tuple(gates))


def _check_gate(name: str, operands, n_qubits: int, line: int | None = None) -> None:
    if name not in SUPPORTED_GATES:
        raise CircuitError(f"unsupported gate '{name}'", line)
    arity = 2 if name in TWO_QUBIT_GATES else 1
    if len(operands) != arity:
        raise CircuitError(f"gate '{name}' expects {arity} operand(s), got {len(operands)}", line)
    if len(set(operands)) != len(operands):
        raise CircuitError(f"gate '{name}' has repeated operands {tuple(operands)}", line)
    for q in operands:
        if not 0 <= q < n_qubits:
            raise CircuitError(f"operand out of range: qubit {q} with {n_qubits} qubits", line)


def two_qubit_gates(c: Circuit) -> list[tuple[int, tuple[int, int]]]:
    """Ordered ``(gate index, (q0, q1))`` pairs for every two-qubit gate."""
    return [(g.index, g.operands) for g in c.gates if g.is_two_qubit]


def gen_qft(n: int) -> Circuit:
    """Swap-free QFT: h on each qubit followed by its controlled phases."""
    if n < 1:
        raise CircuitError("QFT needs at least one qubit")
    ops = []
    for i in range(n):
        ops.append(("h", (i,)))
        for j in range(i + 1, n):
            ops.append(("cp", (j, i), math.pi / 2 ** (j - i)))
    return Circuit.from_ops(f"qft_{n}", n, ops)


# --- gate-list format -------------------------------------------------------

def parse_gatelist(text: str, name: str = "gatelist") -> Circuit:
    """Parse ``qubits N`` followed by ``<name> <q0> [<q1>] [param=<angle>]`` lines."""
    n_qubits = None
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n_qubits is None:
            if tokens[0] != "qubits" or len(tokens) != 2:
                raise CircuitError("expected header 'qubits <N>'", lineno)
            n_qubits = _parse_int(tokens[1], lineno)
            continue
        if tokens[0] == "qubits":
            raise CircuitError("duplicate 'qubits' header", lineno)
        gname = tokens[0].lower()
        param = None
        args = tokens[1:]
        if args and args[-1].startswith("param="):
            param = _parse_float(args[-1][len("param="):], lineno)
            args = args[:-1]
        operands = tuple(_parse_int(a, lineno) for a in args)
        _check_gate(gname, operands, n_qubits, lineno)
        ops.append((gname, operands, param))
    if n_qubits is None:
        raise CircuitError("missing 'qubits <N>' header")
    return Circuit.from_ops(name, n_qubits, ops)


def to_gatelist(c: Circuit) -> str:
    """Emit ``c`` in the gate-list format; ``parse_gatelist`` inverts it exactly."""
    lines = [f"qubits {c.n_qubits}"]
    for g in c.gates:
        parts = [g.name, *map(str, g.operands)]
        if g.param is not None:
            parts.append(f"param={g.param!r}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise CircuitError(f"malformed integer '{tok}'", lineno) from None


def _parse_float(tok: str, lineno: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise CircuitError(f"malformed number '{tok}'", lineno) from None


# --- OpenQASM 2.0 subset ----------------------------------------------------

_SKIP = ("OPENQASM", "include", "creg", "measure", "barrier", "reset")
_QREG = re.compile(r"^qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_GATE = re.compile(r"^([A-Za-z_]\w*)\s*(?:\(([^)]*)\))?\s+(.+)$")
_OPERAND = re.compile(r"^([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_ANGLE = re.compile(r"^[\d\s.+\-*/()eEpi]+$")


def parse_qasm(text: str, name: str = "qasm") -> Circuit:
    """Parse the single-``qreg`` OpenQASM 2.0 subset used by the benchmarks.

    Statements may share a line. ``measure``, ``barrier``, ``creg`` and the header
    lines are skipped; gates with three or more operands are rejected.
    """
    reg = None
    n_qubits = 0
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if not stmt or stmt.startswith(_SKIP):
                continue
            m = _QREG.match(stmt)
            if m:
                if reg is not None:
                    raise CircuitError("multiple qreg declarations are not supported", lineno)
                reg, n_qubits = m.group(1), int(m.group(2))
                continue
            if stmt.startswith("gate ") or stmt.startswith("opaque "):
                raise CircuitError("gate definitions are not supported", lineno)
            m = _GATE.match(stmt)
            if not m:
                raise CircuitError(f"cannot parse statement '{stmt}'", lineno)
            gname = m.group(1).lower()
            gname = QASM_ALIASES.get(gname, gname)
            if gname not in SUPPORTED_GATES:
                raise CircuitError(f"unsupported gate '{m.group(1)}'", lineno)
            if reg is None:
                raise CircuitError("gate before qreg declaration", lineno)
            operands = []
            for arg in m.group(3).split(","):
                om = _OPERAND.match(arg.strip())
                if not om:
                    raise CircuitError(f"malformed operand '{arg.strip()}'", lineno)
                if om.group(1) != reg:
                    raise CircuitError(f"unknown register '{om.group(1)}'", lineno)
                operands.append(int(om.group(2)))
            param = None
            if m.group(2) is not None:
                param = _eval_angle(m.group(2), lineno)
            elif gname in PARAMETRIC_GATES:
                raise CircuitError(f"gate '{gname}' needs an angle", lineno)
            _check_gate(gname, tuple(operands), n_qubits, lineno)
            ops.append((gname, tuple(operands), param))
    if reg is None:
        raise CircuitError("no qreg declaration")
    return Circuit.from_ops(name, n_qubits, ops)


def _eval_angle(expr: str, lineno: int) -> float:
    expr = expr.strip()
    if not _ANGLE.match(expr):
        raise CircuitError(f"malformed angle '{expr}'", lineno)
    try:
        return float(eval(expr, {"__builtins__": {}}, {"pi": math.pi}))
    except Exception:
        raise CircuitError(f"malformed angle '{expr}'", lineno) from None


def to_qasm(c: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n_qubits}];"]
    for g in c.gates:
        args = ",".join(f"q[{q}]" for q in g.operands)
        head = g.name if g.param is None else f"{g.name}({g.param!r})"
        lines.append(f"{head} {args};")
    return "\n".join(lines) + "\n"


def load_circuit(path) -> Circuit:
    """Read a ``.qasm`` file or a gate-list file, chosen by suffix."""
    from pathlib import Path

    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".qasm":
        return parse_qasm(text, name=path.stem)
    return parse_gatelist(text, name=path.stem)
