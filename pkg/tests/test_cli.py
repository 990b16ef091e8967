import csv
import io
import json
import subprocess
import sys

import pytest

from dqcomm.cli import main
from dqcomm.graph import QubitGraph, build_qubit_graph
from dqcomm.report import FIELDS, Report
from conftest import DATA

SCHEMA = [
    "version", "input", "n_qubits", "k", "rho", "lambda1", "lambda2", "phi", "seed",
    "assignment", "sizes", "global_gates", "cut_edges", "f_gg", "naive_tc", "la_tc",
    "plan", "timings_ms",
]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_json_schema(capsys):
    code, out, _ = run(capsys, "pipeline", "--qft", "4", "--k", "2", "--partition", "0,0,1,1")
    assert code == 0
    d = json.loads(out)
    assert list(d) == SCHEMA == list(FIELDS)
    assert d["la_tc"] == 4 and d["naive_tc"] == 8
    assert d["f_gg"] == "4/4"
    assert set(d["timings_ms"]) == {"graph", "qubo", "solve", "transfer"}
    assert list(d["plan"][0]) == ["qubit", "source", "target", "gates"]


def test_report_round_trip(capsys):
    _, out, _ = run(capsys, "pipeline", "--input", str(DATA / "circ6.qasm"), "--k", "2")
    rep = Report.from_json(out)
    assert Report.from_json(rep.to_json()) == rep
    assert rep.global_gates == 2


def test_no_timings_is_byte_identical(capsys):
    argv = ("pipeline", "--input", str(DATA / "circ8.txt"), "--k", "3", "--seed", "4", "--no-timings")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    assert json.loads(first)["timings_ms"] == {}


def test_text_format_marks_defaults(capsys):
    code, out, _ = run(capsys, "pipeline", "--qft", "4", "--k", "2", "--phi", "-0.25", "--format", "text")
    assert code == 0
    lines = dict(line.split(None, 1) for line in out.splitlines() if line and not line[0].isdigit())
    assert "(default)" in lines["rho"]
    assert "(default)" not in lines["phi"]
    assert "lookahead tc" in out and "timings (ms)" in out


def test_partition_file(tmp_path, capsys):
    f = tmp_path / "p.txt"
    f.write_text("0,0,0,1,1\n")
    code, out, _ = run(capsys, "pipeline", "--input", str(DATA / "circ5.txt"), "--k", "2", "--partition-file", str(f))
    assert code == 0
    d = json.loads(out)
    assert d["assignment"] == [0, 0, 0, 1, 1]
    assert d["la_tc"] == 4 and d["naive_tc"] == 10


def test_unbalanced_partition_warns(capsys, caplog):
    code, out, _ = run(capsys, "pipeline", "--qft", "6", "--k", "2", "--partition", "0,1,1,1,1,1")
    assert code == 0
    assert any(r.levelname == "WARNING" and "balance" in r.getMessage() for r in caplog.records)
    assert json.loads(out)["sizes"] == [1, 5]


def test_dumps(tmp_path, capsys):
    gpath, qpath = tmp_path / "g.txt", tmp_path / "q.txt"
    code, _, _ = run(
        capsys, "pipeline", "--input", str(DATA / "circ6.qasm"), "--k", "2",
        "--dump-graph", str(gpath), "--dump-qubo", str(qpath),
    )
    assert code == 0
    from dqcomm.circuit import load_circuit

    assert QubitGraph.from_edgelist(6, gpath.read_text()) == build_qubit_graph(load_circuit(DATA / "circ6.qasm"))
    lines = qpath.read_text().splitlines()
    assert lines[-1].startswith("offset ")
    assert all(len(line.split()) == 3 for line in lines[:-1])


@pytest.mark.parametrize(
    "argv, stage",
    [
        (("pipeline", "--qft", "1", "--k", "2"), "partition"),
        (("pipeline", "--input", "/nonexistent.qasm", "--k", "2"), "input"),
        (("pipeline", "--qft", "4", "--k", "2", "--partition", "0,x"), "input"),
        (("pipeline", "--qft", "4", "--k", "2", "--partition", "0,1"), "partition"),
        (("pipeline", "--qft", "4", "--k", "2", "--phi", "0.5"), "qubo"),
        (("pipeline", "--qft", "4", "--k", "2", "--restarts", "0"), "input"),
        (("rho-sweep", "--qft", "4", "--k", "2", "--rho"), "input"),
        (("bench", "--suite", "dir"), "input"),
    ],
)
def test_errors_exit_one_with_json(capsys, argv, stage):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    payload = json.loads(err.strip().splitlines()[-1])
    assert set(payload["error"]) == {"stage", "message"}
    assert payload["error"]["stage"] == stage


def test_bad_qasm_reports_line(tmp_path, capsys):
    f = tmp_path / "bad.qasm"
    f.write_text("OPENQASM 2.0;\nqreg q[3];\nccx q[0],q[1],q[2];\n")
    code, _, err = run(capsys, "pipeline", "--input", str(f), "--k", "2")
    assert code == 1
    assert "line 3" in json.loads(err)["error"]["message"]


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bench_qft(capsys):
    code, out, _ = run(capsys, "bench", "--suite", "qft", "--k", "2", "3", "--sizes", "4", "8")
    assert code == 0
    assert out.splitlines()[0] == "circuit,n_qubits,k,global_gates,naive_tc,la_tc,improvement,error"
    rows = read_csv(out)
    assert [(r["circuit"], r["k"], r["la_tc"]) for r in rows] == [
        ("4_QFT", "2", "4"), ("4_QFT", "3", "6"), ("8_QFT", "2", "8"), ("8_QFT", "3", "14"),
    ]
    assert rows[2]["naive_tc"] == "32" and rows[2]["improvement"] == "75.00"


def test_bench_dir_with_bad_file(tmp_path, capsys):
    (tmp_path / "a.txt").write_text((DATA / "circ5.txt").read_text())
    (tmp_path / "b.qasm").write_text("qreg q[2];\nfrobnicate q[0];\n")
    (tmp_path / "notes.md").write_text("ignored")
    out_csv = tmp_path / "out.csv"
    code, _, _ = run(capsys, "bench", "--suite", "dir", "--dir", str(tmp_path), "--k", "2", "--output", str(out_csv))
    assert code == 0
    rows = read_csv(out_csv.read_text())
    assert [r["circuit"] for r in rows] == ["a", "b"]
    assert rows[0]["error"] == ""
    assert int(rows[0]["naive_tc"]) == 2 * int(rows[0]["global_gates"])
    assert int(rows[0]["la_tc"]) <= int(rows[0]["naive_tc"])
    assert "unsupported gate" in rows[1]["error"] and rows[1]["la_tc"] == ""


def test_rho_sweep(capsys):
    code, out, _ = run(capsys, "rho-sweep", "--input", str(DATA / "circ8.txt"), "--k", "2", "--rho", "1", "3", "--sweeps", "200")
    assert code == 0
    rows = read_csv(out)
    assert list(rows[0]) == ["circuit", "k", "rho", "global_gates", "la_tc"]
    assert [r["rho"] for r in rows] == ["1.0", "3.0"]
    assert all(int(r["la_tc"]) % 2 == 0 for r in rows)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dqcomm", "pipeline", "--qft", "4", "--k", "2", "--no-timings"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["k"] == 2
