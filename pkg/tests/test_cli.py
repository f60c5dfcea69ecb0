import json

from app.cli import main


def test_bench_prints_qasm(capsys):
    """bench writes the circuit to stdout"""
    assert main(["bench", "--benchmark", "ghz", "--qubits", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("OPENQASM 2.0;")
    assert out.count("cx q[") == 2


def test_bench_then_simulate(tmp_path, capsys):
    """A written benchmark simulates noiselessly to the GHZ split"""
    qasm = tmp_path / "ghz.qasm"
    assert main(["bench", "--benchmark", "GHZ", "--qubits", "3", "--out", str(qasm)]) == 0
    capsys.readouterr()

    assert main(["simulate", "--qasm", str(qasm), "--noise", "none", "--observable", "ZZI"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["width"] == 3
    assert result["esp"] < 1.0
    assert result["effective_esp"] == 1.0
    top = result["top_states"][:2]
    assert sorted(s for s, _ in top) == ["000", "111"]
    assert all(abs(p - 0.5) < 1e-9 for _, p in top)
    assert abs(result["expectation"] - 1.0) < 1e-9


def test_cut_writes_variants(tmp_path, capsys):
    """cut reports the plan and writes one QASM file per variant"""
    out_dir = tmp_path / "variants"
    code = main(["cut", "--benchmark", "GHZ", "--qubits", "4", "--max-cuts", "1", "--emit-dir", str(out_dir)])
    assert code == 0
    plan = json.loads(capsys.readouterr().out)
    assert plan["cuts"] == [{"after_gate": 2, "qubit": 2, "before_gate": 3}]
    assert len(plan["variant_files"]) == 7
    assert len(list(out_dir.glob("*.qasm"))) == 7


def test_cut_without_plan_exits_with_error_code(capsys):
    """Domain errors exit with status 2 and a JSON message"""
    code = main(["cut", "--benchmark", "QAOA", "--qubits", "4", "--max-cuts", "2"])
    assert code == 2
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "no_cut_within_budget"


def test_unsupported_gate_in_qasm(tmp_path, capsys):
    """Unknown gates are reported with their name"""
    qasm = tmp_path / "bad.qasm"
    qasm.write_text("qreg q[1];\nfoo q[0];\n")
    assert main(["simulate", "--qasm", str(qasm)]) == 2
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "unsupported_gate"
    assert "foo" in error["message"]


def test_mitigate_then_report(tmp_path, capsys):
    """mitigate writes a report that report can summarize"""
    code = main([
        "--output-dir", str(tmp_path), "mitigate",
        "--benchmark", "HS", "--qubits", "3",
        "--method", "noisy", "--method", "rzne", "--name", "hs3",
    ])
    assert code == 0
    csv = tmp_path / "hs3.csv"
    assert csv.exists()
    capsys.readouterr()

    assert main(["report", str(csv), "--json"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert [row["method"] for row in summary] == ["noisy", "rzne"]
    assert summary[0]["median_abr"] == 1.0


def test_mitigate_rejects_invalid_config(tmp_path, capsys):
    """Invalid experiment documents are config errors"""
    config = tmp_path / "exp.json"
    config.write_text(json.dumps({"benchmark": {"family": "GHZ", "qubits": 1}}))
    assert main(["--output-dir", str(tmp_path), "mitigate", str(config)]) == 2
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "config_error"


def test_mitigate_rejects_observable_on_ghz(tmp_path, capsys):
    """GHZ experiments take no observable"""
    code = main([
        "--output-dir", str(tmp_path), "mitigate",
        "--benchmark", "GHZ", "--qubits", "3", "--observable", "ZZI",
    ])
    assert code == 2
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "config_error"


def test_sweep_with_overrides(tmp_path, capsys):
    """sweep applies flag overrides to every run"""
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({
        "name": "tiny",
        "runs": [
            {"benchmark": {"family": "GHZ", "qubits": 2}},
            {"benchmark": {"family": "QAOA", "qubits": 3}},
        ],
    }))
    code = main(["--output-dir", str(tmp_path), "sweep", str(config),
                 "--workers", "1", "--method", "noisy", "--method", "rzne_topk", "--top-k", "2"])
    assert code == 0
    rows = (tmp_path / "tiny.csv").read_text().splitlines()
    assert len(rows) == 1 + 4
