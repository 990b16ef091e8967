"""Pipeline report: JSON (stable field names) and an aligned text rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .transfer import TransferQueue

FIELDS = (
    "version", "input", "n_qubits", "k", "rho", "lambda1", "lambda2", "phi", "seed",
    "assignment", "sizes", "global_gates", "cut_edges", "f_gg", "naive_tc", "la_tc",
    "plan", "timings_ms",
)


@dataclass
class Report:
    version: str
    input: str
    n_qubits: int
    k: int
    rho: float
    lambda1: float
    lambda2: float
    phi: float
    seed: int
    assignment: list[int]
    sizes: list[int]
    global_gates: int
    cut_edges: int
    f_gg: str | None
    naive_tc: int
    la_tc: int
    plan: list[TransferQueue]
    timings_ms: dict[str, float] = field(default_factory=dict)
    # parameters the user did not set explicitly; text output only
    defaulted: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("defaulted")
        d["plan"] = [q.to_dict() for q in self.plan]
        return {name: d[name] for name in FIELDS}

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        missing = [name for name in FIELDS if name not in d]
        if missing:
            raise ValueError(f"report is missing fields {missing}")
        kwargs = {name: d[name] for name in FIELDS}
        kwargs["plan"] = [TransferQueue.from_dict(q) for q in d["plan"]]
        return cls(**kwargs)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        def mark(name, value):
            return f"{value} (default)" if name in self.defaulted else str(value)

        rows = [
            ("input", self.input),
            ("qubits", self.n_qubits),
            ("partitions", self.k),
            ("rho", mark("rho", self.rho)),
            ("lambda1", mark("lambda1", f"{self.lambda1:g}")),
            ("lambda2", mark("lambda2", f"{self.lambda2:g}")),
            ("phi", mark("phi", f"{self.phi:g}")),
            ("seed", mark("seed", self.seed)),
            ("assignment", ",".join(map(str, self.assignment))),
            ("sizes", ",".join(map(str, self.sizes))),
            ("global gates", self.global_gates),
            ("cut edges", self.cut_edges),
            ("F_gg", self.f_gg if self.f_gg is not None else "n/a"),
            ("naive tc", self.naive_tc),
            ("lookahead tc", self.la_tc),
        ]
        width = max(len(name) for name, _ in rows)
        lines = [f"{name:<{width}}  {value}" for name, value in rows]
        if self.plan:
            lines.append("")
            header = ("#", "qubit", "from", "to", "gates")
            body = [
                (str(pos), f"q{q.qubit}", f"P{q.source}", f"P{q.target}", " ".join(map(str, q.gates)))
                for pos, q in enumerate(self.plan)
            ]
            widths = [max(len(r[c]) for r in [header, *body]) for c in range(len(header))]
            for row in [header, *body]:
                lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if self.timings_ms:
            lines.append("")
            lines.append("timings (ms): " + ", ".join(f"{k}={v:.1f}" for k, v in self.timings_ms.items()))
        return "\n".join(lines) + "\n"
