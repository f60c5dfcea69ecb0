import math

import numpy as np
import pytest

from domain.models import Circuit, Distribution, Gate, GateKind, NoiseConfig, PauliString
from domain.models.errors import ObservableError, WidthLimitError
from domain.services import fold_global, generate_benchmark, total_variation
from domain.services.observables import expectation, sample_counts
from infra.adapters import DensityMatrixSimulator
from tests.conftest import make_device


def test_noiseless_ghz(simulator, device, noiseless):
    """With every channel off GHZ(3) is an even split of 000 and 111"""
    dist = simulator.simulate(generate_benchmark("GHZ", 3), device, noiseless)
    assert dist["000"] == pytest.approx(0.5, abs=1e-12)
    assert dist["111"] == pytest.approx(0.5, abs=1e-12)
    assert dist.is_valid()


def test_saturated_depolarizing_is_uniform(simulator, device):
    """Clamping every depolarizing probability to 1 gives the maximally mixed output"""
    noise = NoiseConfig.from_mode("depol", depolarizing_scale=1e9)
    dist = simulator.simulate(generate_benchmark("GHZ", 3), device, noise)
    assert np.allclose(dist.probs, 1 / 8, atol=1e-12)


def test_thermal_idle_decay(simulator):
    """An excited qubit left idle for ln(2) T1 is found excited half the time"""
    one_qubit_ns = 50.0
    total_ns = 3 * one_qubit_ns
    t1_ns = total_ns / math.log(2)
    device = make_device(t1_ns=t1_ns, t2_ns=t1_ns, one_qubit_ns=one_qubit_ns)

    # q0 flips then idles while q1 runs a chain of three gates
    circuit = Circuit(2, [Gate(GateKind.X, (0,))] + [Gate(GateKind.X, (1,))] * 3)
    dist = simulator.simulate(circuit, device, NoiseConfig.from_mode("thermal"))
    excited = dist.probs[2] + dist.probs[3]
    assert excited == pytest.approx(0.5, abs=1e-9)


def test_readout_error_flips_measured_bits(simulator, device):
    """Readout noise alone misreports |1> with the calibrated rate"""
    noise = NoiseConfig(depolarizing_enabled=False, thermal_enabled=False, readout_enabled=True)
    circuit = Circuit(1, [Gate(GateKind.X, (0,))]).measure_all()
    dist = simulator.simulate(circuit, device, noise)
    assert dist["0"] == pytest.approx(0.02)


def test_readout_error_skips_unmeasured_qubits(simulator, device):
    """Qubits without a MEASURE are not confused"""
    noise = NoiseConfig(depolarizing_enabled=False, thermal_enabled=False, readout_enabled=True)
    circuit = Circuit(2, [Gate(GateKind.X, (0,)), Gate(GateKind.X, (1,))]).with_measurements([1])
    dist = simulator.simulate(circuit, device, noise)
    assert dist["11"] == pytest.approx(0.98)
    assert dist["10"] == pytest.approx(0.02)


def test_folding_is_noiselessly_invisible(simulator, device, noiseless):
    """RX(0.3) folded once evolves to the same state"""
    circuit = Circuit(1, [Gate(GateKind.RX, (0,), 0.3)])
    plain = simulator.evolve(circuit, device, noiseless)
    folded = simulator.evolve(fold_global(circuit, 1), device, noiseless)
    assert np.allclose(plain.matrix, folded.matrix, atol=1e-12)


def test_noise_lowers_ghz_fidelity(simulator, device, depol):
    """Depolarizing noise leaks weight out of 000 and 111"""
    dist = simulator.simulate(generate_benchmark("GHZ", 4), device, depol)
    assert dist["0000"] + dist["1111"] < 1.0
    assert dist.is_valid()


def test_width_limit():
    """Circuits wider than the simulator limit are refused"""
    with pytest.raises(WidthLimitError):
        DensityMatrixSimulator(max_width=2).simulate(
            generate_benchmark("GHZ", 3), make_device(), NoiseConfig.noiseless())


def test_circuit_wider_than_device(simulator):
    """A device must calibrate every qubit of the circuit"""
    with pytest.raises(WidthLimitError):
        simulator.simulate(generate_benchmark("GHZ", 3), make_device(n=2), NoiseConfig.noiseless())


def test_sample_counts_concentrates():
    """A million shots on a fair coin land within 0.01 of one half"""
    dist = sample_counts(Distribution.uniform(1), 10 ** 6, seed=11)
    assert abs(dist["0"] - 0.5) < 0.01
    assert dist.is_valid()


def test_sample_counts_point_mass():
    """A point mass samples to itself"""
    point = Distribution.from_dict(2, {"10": 1.0})
    assert sample_counts(point, 17, seed=5) == point


def test_sample_counts_is_seeded():
    """The same seed gives the same frequencies"""
    dist = Distribution.from_dict(2, {"00": 0.4, "11": 0.6})
    assert sample_counts(dist, 1000, seed=9) == sample_counts(dist, 1000, seed=9)


def test_sample_counts_rejects_zero_shots():
    """Shots are positive"""
    with pytest.raises(ValueError):
        sample_counts(Distribution.uniform(1), 0, seed=1)


def test_expectation_values():
    """Parity expectations of I/Z strings"""
    zz = PauliString.from_label("ZZ")
    assert expectation(Distribution.uniform(2), zz) == pytest.approx(0.0)
    assert expectation(Distribution.from_dict(2, {"00": 1.0}), zz) == 1.0
    ghz = Distribution.from_dict(3, {"000": 0.5, "111": 0.5})
    assert expectation(ghz, PauliString.from_label("ZII")) == pytest.approx(0.0)
    assert expectation(ghz, PauliString.from_label("ZZI")) == pytest.approx(1.0)


def test_expectation_rejects_non_diagonal_observable():
    """X and Y need a basis change the distribution cannot provide"""
    with pytest.raises(ObservableError):
        expectation(Distribution.uniform(1), PauliString.from_label("X"))


def test_expectation_rejects_width_mismatch():
    """Observable length must match the distribution width"""
    with pytest.raises(ObservableError):
        expectation(Distribution.uniform(2), PauliString.from_label("Z"))


@pytest.mark.parametrize("family", ["GHZ", "HS", "QAOA", "VQE"])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_saturated_depolarizing_is_a_fixed_point(simulator, device, family, n):
    """Every benchmark ends maximally mixed and every Z string averages to zero"""
    noise = NoiseConfig.from_mode("depol", depolarizing_scale=1e9)
    dist = simulator.simulate(generate_benchmark(family, n), device, noise)
    assert np.allclose(dist.probs, 1 / 2 ** n, atol=1e-12)
    assert expectation(dist, PauliString.from_label("Z" * n)) == pytest.approx(0.0, abs=1e-12)


def test_ghz_distance_grows_with_depolarizing_scale(simulator, device, noiseless):
    """Total variation to the ideal GHZ(3) output never shrinks as the noise is scaled up"""
    circuit = generate_benchmark("GHZ", 3)
    ideal = simulator.simulate(circuit, device, noiseless)
    distances = [
        total_variation(simulator.simulate(circuit, device, NoiseConfig.from_mode("depol", depolarizing_scale=s)), ideal)
        for s in (0.0, 0.5, 1.0, 2.0, 5.0, 20.0, 200.0)
    ]
    assert distances[0] == pytest.approx(0.0, abs=1e-12)
    assert all(later >= earlier - 1e-12 for earlier, later in zip(distances, distances[1:]))
    assert distances[-1] > distances[1]
