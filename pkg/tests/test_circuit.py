import numpy as np
import pytest

from domain.models import Circuit, Gate, GateKind, PauliString
from domain.models.errors import InvalidGateError, MeasurementError, ObservableError
from domain.services import compute_latency, fold_global, fold_with_measurements, generate_benchmark
from domain.services.circuit_service import asap_schedule, scale_factor_to_folds
from tests.conftest import make_device


def test_gate_rejects_wrong_arity():
    """A CNOT on one qubit is invalid"""
    with pytest.raises(InvalidGateError):
        Gate(GateKind.CNOT, (0,))


def test_gate_rejects_repeated_qubits():
    """Two-qubit gates need distinct qubits"""
    with pytest.raises(InvalidGateError):
        Gate(GateKind.CZ, (1, 1))


def test_rotation_needs_finite_angle():
    """Rotations without an angle or with a NaN angle are rejected"""
    with pytest.raises(InvalidGateError):
        Gate(GateKind.RX, (0,))
    with pytest.raises(InvalidGateError):
        Gate(GateKind.RZ, (0,), float("nan"))


def test_fixed_gate_takes_no_angle():
    """H with an angle is rejected"""
    with pytest.raises(InvalidGateError):
        Gate(GateKind.H, (0,), 0.5)


def test_circuit_rejects_out_of_range_qubit():
    """Gate qubits must be below the circuit width"""
    with pytest.raises(InvalidGateError):
        Circuit(2, [Gate(GateKind.X, (2,))])


def test_gate_after_measurement_is_rejected():
    """No operation may follow a qubit's measurement"""
    with pytest.raises(MeasurementError):
        Circuit(1, [Gate(GateKind.MEASURE, (0,)), Gate(GateKind.X, (0,))])


def test_measured_set_derives_from_measure_gates():
    """measured lists exactly the qubits with a MEASURE"""
    circuit = Circuit(3, [Gate(GateKind.H, (0,))]).with_measurements([2, 0])
    assert circuit.measured == frozenset({0, 2})
    assert circuit.gates[-2].qubits == (0,)


def test_inverse_of_phase_gates():
    """S and T invert to their daggers, rotations negate the angle"""
    assert Gate(GateKind.S, (0,)).inverse().kind is GateKind.SDG
    assert Gate(GateKind.TDG, (0,)).inverse().kind is GateKind.T
    assert Gate(GateKind.RZZ, (0, 1), 0.4).inverse().angle == -0.4


def test_unitaries_are_unitary():
    """Every gate matrix satisfies U U^dagger = I"""
    gates = [Gate(k, (0,)) for k in (GateKind.H, GateKind.X, GateKind.Y, GateKind.Z,
                                     GateKind.S, GateKind.SDG, GateKind.T, GateKind.TDG)]
    gates += [Gate(k, (0,), 0.37) for k in (GateKind.RX, GateKind.RY, GateKind.RZ)]
    gates += [Gate(GateKind.CNOT, (0, 1)), Gate(GateKind.CZ, (0, 1)), Gate(GateKind.RZZ, (0, 1), 1.1)]
    for gate in gates:
        u = gate.unitary()
        assert np.allclose(u @ u.conj().T, np.eye(u.shape[0]))
        assert np.allclose(gate.inverse().unitary() @ u, np.eye(u.shape[0]))


def test_fold_zero_is_identity():
    """folds=0 leaves the circuit unchanged"""
    circuit = Circuit(2, [Gate(GateKind.H, (0,)), Gate(GateKind.CNOT, (0, 1))])
    assert fold_global(circuit, 0) == circuit


def test_fold_once_on_hadamard():
    """H folded once gives three H gates"""
    folded = fold_global(Circuit(1, [Gate(GateKind.H, (0,))]), 1)
    assert [g.kind for g in folded.gates] == [GateKind.H] * 3


def test_fold_gate_count_grows_with_odd_factor():
    """U(U^dagger U)^k has (2k+1) times the gates"""
    circuit = Circuit(2, [Gate(GateKind.RX, (0,), 0.3), Gate(GateKind.CNOT, (0, 1)), Gate(GateKind.S, (1,))])
    folded = fold_global(circuit, 2)
    assert len(folded) == 5 * len(circuit)
    assert folded.gates[3] == Gate(GateKind.SDG, (1,))


def test_fold_rejects_measured_circuit():
    """Measurements must be stripped before folding"""
    with pytest.raises(MeasurementError):
        fold_global(Circuit(1, [Gate(GateKind.H, (0,))]).measure_all(), 1)


def test_fold_with_measurements_reappends_measures():
    """Measured qubits are measured once at the end of the folded body"""
    circuit = Circuit(2, [Gate(GateKind.H, (0,))]).measure_all()
    folded = fold_with_measurements(circuit, 1)
    assert len(folded) == 3 + 2
    assert folded.measured == circuit.measured
    assert all(g.is_measurement for g in folded.gates[-2:])


def test_fold_negative_is_rejected():
    """Fold counts are nonnegative"""
    with pytest.raises(ValueError):
        fold_global(Circuit(1, []), -1)


def test_scale_factor_to_folds():
    """Odd integer scale factors map to (lambda - 1) / 2 folds"""
    assert scale_factor_to_folds(1) == 0
    assert scale_factor_to_folds(5) == 2
    with pytest.raises(ValueError):
        scale_factor_to_folds(2)


def test_latency_serial_chain():
    """Two X gates on one qubit run back to back"""
    device = make_device(one_qubit_ns=35, two_qubit_ns=300)
    circuit = Circuit(1, [Gate(GateKind.X, (0,)), Gate(GateKind.X, (0,))])
    assert compute_latency(circuit, device) == pytest.approx(70e-9)


def test_latency_parallel_gates():
    """Gates on disjoint qubits overlap"""
    device = make_device(one_qubit_ns=35, two_qubit_ns=300)
    circuit = Circuit(2, [Gate(GateKind.X, (0,)), Gate(GateKind.X, (1,))])
    assert compute_latency(circuit, device) == pytest.approx(35e-9)


def test_latency_waits_for_dependencies():
    """CNOT waits for X on its control; the final X waits for the CNOT"""
    device = make_device(one_qubit_ns=35, two_qubit_ns=300)
    circuit = Circuit(2, [Gate(GateKind.X, (0,)), Gate(GateKind.CNOT, (0, 1)), Gate(GateKind.X, (1,))])
    assert compute_latency(circuit, device) == pytest.approx(370e-9)
    slots = asap_schedule(circuit, device).slots
    assert slots[1][0] == pytest.approx(35e-9)


def test_latency_includes_measurements():
    """Measurement duration counts toward the critical path"""
    device = make_device(one_qubit_ns=50, measure_ns=1000)
    circuit = Circuit(1, [Gate(GateKind.H, (0,))]).measure_all()
    assert compute_latency(circuit, device) == pytest.approx(1050e-9)


def test_empty_circuit_has_zero_latency():
    """No gates, no time"""
    assert compute_latency(Circuit(3, []), make_device()) == 0.0


@pytest.mark.parametrize("family", ["GHZ", "HS", "QAOA", "VQE"])
def test_latency_never_drops_when_gates_are_appended(family):
    """Every prefix of a benchmark finishes no later than the next one"""
    device = make_device()
    circuit = generate_benchmark(family, 5, steps=2, layers=2)
    latencies = [compute_latency(Circuit(5, list(circuit.gates[:i])), device) for i in range(len(circuit) + 1)]
    assert all(later >= earlier for earlier, later in zip(latencies, latencies[1:]))
    assert latencies[-1] > latencies[0]


def test_pauli_string_from_label():
    """Labels are read qubit 0 first"""
    obs = PauliString.from_label("zIz")
    assert obs.label == "ZIZ"
    assert obs.z_positions() == (0, 2)
    assert obs.is_diagonal
    assert not PauliString.from_label("XZ").is_diagonal


def test_pauli_string_rejects_unknown_operator():
    """Only I, X, Y and Z are Pauli operators"""
    with pytest.raises(ObservableError):
        PauliString.from_label("ZQ")
