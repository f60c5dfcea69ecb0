from functools import reduce

import numpy as np
import pytest

from config.config import benchmark_angles
from domain.models import BenchmarkSpec, Gate, GateKind
from domain.models.errors import BenchmarkError
from domain.services import benchmark_from_spec, generate_benchmark
from domain.services.benchmark_service import ring_edges


def _kron(*ops):
    return reduce(np.kron, ops)


def _rz(theta):
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def _rx(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _rzz(theta):
    a, b = np.exp(-0.5j * theta), np.exp(0.5j * theta)
    return np.diag([a, b, b, a])


def _hs_unitary(n, steps):
    """Dense product of the Trotter layers, qubit 0 most significant"""
    eye = np.eye(2)
    dt = benchmark_angles.hs_dt
    rz = 2 * benchmark_angles.hs_longitudinal_field * dt
    rzz = 2 * benchmark_angles.hs_coupling * dt
    rx = 2 * benchmark_angles.hs_transverse_field * dt

    u = np.eye(2 ** n, dtype=complex)
    for _ in range(steps):
        for q in range(n):
            u = _kron(*[_rz(rz) if i == q else eye for i in range(n)]) @ u
        for q in range(n - 1):
            u = _kron(np.eye(2 ** q), _rzz(rzz), np.eye(2 ** (n - q - 2))) @ u
        for q in range(n):
            u = _kron(*[_rx(rx) if i == q else eye for i in range(n)]) @ u
    return u


def test_ghz_structure(simulator, device, noiseless):
    """GHZ(3) is H then a CNOT chain, ideally half 000 and half 111"""
    circuit = generate_benchmark("GHZ", 3)
    assert list(circuit.unitary_gates) == [
        Gate(GateKind.H, (0,)), Gate(GateKind.CNOT, (0, 1)), Gate(GateKind.CNOT, (1, 2)),
    ]
    assert circuit.measured == frozenset({0, 1, 2})

    dist = simulator.simulate(circuit, device, noiseless)
    assert dist["000"] == pytest.approx(0.5, abs=1e-12)
    assert dist["111"] == pytest.approx(0.5, abs=1e-12)


def test_vqe_structure():
    """One VQE layer on 2 qubits is two RY, one CNOT and the measures"""
    circuit = generate_benchmark("VQE", 2, layers=1)
    kinds = [g.kind for g in circuit.gates]
    assert kinds == [GateKind.RY, GateKind.RY, GateKind.CNOT, GateKind.MEASURE, GateKind.MEASURE]


def test_vqe_is_deterministic():
    """The seeded angle draw gives identical circuits"""
    assert generate_benchmark("VQE", 4, layers=2) == generate_benchmark("VQE", 4, layers=2)


def test_qaoa_uses_ring_edges():
    """QAOA couples every ring neighbour once"""
    circuit = generate_benchmark("QAOA", 4)
    pairs = [g.qubits for g in circuit.gates if g.kind is GateKind.RZZ]
    assert pairs == ring_edges(4)
    assert sorted(tuple(sorted(p)) for p in pairs) == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_two_qubit_ring_has_one_edge():
    """A two-qubit ring does not double its only edge"""
    assert ring_edges(2) == [(0, 1)]


def test_hs_matches_dense_unitary(simulator, device, noiseless):
    """Noiseless HS(4, steps=2) equals the brute-force matrix product"""
    circuit = generate_benchmark("HS", 4, steps=2)
    psi = _hs_unitary(4, 2)[:, 0]
    expected = np.abs(psi) ** 2

    dist = simulator.simulate(circuit, device, noiseless)
    assert np.allclose(dist.probs, expected, atol=1e-10)


def test_hs_gate_count_scales_with_steps():
    """Each Trotter step adds n RZ, n-1 RZZ and n RX"""
    circuit = generate_benchmark("HS", 5, steps=3)
    assert len(circuit.unitary_gates) == 3 * (5 + 4 + 5)


def test_benchmark_from_spec():
    """BenchmarkSpec forwards family, width and depth parameters"""
    spec = BenchmarkSpec(family="HS", qubits=3, steps=2)
    assert benchmark_from_spec(spec) == generate_benchmark("HS", 3, steps=2)


def test_unknown_family_is_rejected():
    """Only the four benchmark families exist"""
    with pytest.raises(BenchmarkError):
        generate_benchmark("QFT", 3)


def test_too_few_qubits_is_rejected():
    """Benchmarks need at least two qubits"""
    with pytest.raises(BenchmarkError):
        generate_benchmark("GHZ", 1)
