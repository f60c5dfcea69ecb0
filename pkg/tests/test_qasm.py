import math

import pytest

from domain.models import Circuit, Gate, GateKind
from domain.models.errors import MeasurementError, QasmSyntaxError, UnsupportedGateError, WidthMismatchError
from domain.services import generate_benchmark
from infra.adapters import QasmCircuitRepository, emit_qasm, parse_qasm


def test_parse_single_statement():
    """A register and one gate are enough"""
    circuit = parse_qasm("qreg q[1]; x q[0];")
    assert circuit == Circuit(1, [Gate(GateKind.X, (0,))])


def test_parse_bell_with_register_measure():
    """Whole-register measure expands to every qubit"""
    circuit = parse_qasm("qreg q[2]; h q[0]; cx q[0],q[1]; measure q -> c;")
    assert circuit.width == 2
    assert [g.kind for g in circuit.unitary_gates] == [GateKind.H, GateKind.CNOT]
    assert circuit.gates[1].qubits == (0, 1)
    assert circuit.measured == frozenset({0, 1})


def test_parse_full_program_with_comments_and_expressions():
    """Header, include, creg, comments and pi arithmetic are understood"""
    text = """OPENQASM 2.0;
include "qelib1.inc";
// two qubits
qreg q[2];
creg c[2];
rz(-pi/2) q[1];
rx(2*0.25 + 0.5) q[0];
barrier q[0],q[1];
rzz(pi) q[0],q[1];
measure q[1] -> c[1];
"""
    circuit = parse_qasm(text)
    assert circuit.gates[0].angle == pytest.approx(-math.pi / 2)
    assert circuit.gates[1].angle == pytest.approx(1.0)
    assert circuit.gates[2].kind is GateKind.RZZ
    assert circuit.measured == frozenset({1})


def test_unsupported_gate_names_the_gate():
    """Unknown gate names fail with their name and location"""
    with pytest.raises(UnsupportedGateError) as exc:
        parse_qasm("qreg q[1]; foo q[0];")
    assert "foo" in str(exc.value)
    assert exc.value.line == 1


def test_missing_semicolon_is_a_syntax_error():
    """Malformed statements report a syntax error"""
    with pytest.raises(QasmSyntaxError):
        parse_qasm("qreg q[1]; x q[0]")


def test_missing_register_is_a_syntax_error():
    """Gates need a declared register"""
    with pytest.raises(QasmSyntaxError):
        parse_qasm("x q[0];")


def test_qubit_outside_register():
    """Indices past the register size are width mismatches"""
    with pytest.raises(WidthMismatchError):
        parse_qasm("qreg q[2]; cx q[0],q[2];")


def test_gate_after_measure_fails():
    """Operations after a measurement are rejected"""
    with pytest.raises(MeasurementError):
        parse_qasm("qreg q[1]; measure q[0] -> c[0]; x q[0];")


def test_emit_single_gate():
    """X on qubit 0 emits exactly one x statement"""
    text = emit_qasm(Circuit(1, [Gate(GateKind.X, (0,))]))
    assert text.count("x q[0];") == 1
    assert text.startswith("OPENQASM 2.0;")


def test_emit_empty_circuit_is_header_only():
    """An empty circuit has no gate statements"""
    lines = emit_qasm(Circuit(3, [])).strip().splitlines()
    assert lines == ['OPENQASM 2.0;', 'include "qelib1.inc";', "qreg q[3];", "creg c[3];"]


def test_ghz_round_trip_keeps_gates():
    """Emit then parse gives back the GHZ(4) gate list"""
    circuit = generate_benchmark("GHZ", 4)
    assert parse_qasm(emit_qasm(circuit)) == circuit


def test_rotation_angles_survive_round_trip():
    """Angles are written with full precision"""
    circuit = generate_benchmark("VQE", 3, layers=2)
    again = parse_qasm(emit_qasm(circuit))
    assert [g.angle for g in again.gates] == [g.angle for g in circuit.gates]


def test_repository_file_round_trip(tmp_path):
    """save_circuit and load_circuit go through the filesystem"""
    repository = QasmCircuitRepository()
    circuit = generate_benchmark("QAOA", 3)
    path = tmp_path / "qaoa.qasm"
    assert repository.save_circuit(circuit, str(path))
    assert repository.load_circuit(str(path)) == circuit
