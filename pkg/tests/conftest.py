"""Shared fixtures: synthetic and bundled device models, noise configs, a simulator"""

import pytest

from config.config import DEFAULT_DEVICE_PATH
from domain.models import DeviceModel, GateKind, NoiseConfig
from infra.adapters import DensityMatrixSimulator, JsonDeviceRepository

ONE_QUBIT = ["H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg", "RX", "RY", "RZ"]


def make_device(n: int = 8, one_qubit_error: float = 0.001, two_qubit_error: float = 0.01,
                readout: float = 0.02, t1_ns: float = 100_000.0, t2_ns: float = 80_000.0,
                one_qubit_ns: float = 50.0, two_qubit_ns: float = 300.0, measure_ns: float = 1000.0,
                ) -> DeviceModel:
    """Uniform calibration document, converted from nanoseconds"""
    gate_error = {k: one_qubit_error for k in ONE_QUBIT}
    gate_error.update({"CNOT": two_qubit_error, "CZ": two_qubit_error, "RZZ": two_qubit_error})
    durations = {k: one_qubit_ns for k in ONE_QUBIT}
    durations.update({"CNOT": two_qubit_ns, "CZ": two_qubit_ns, "RZZ": 2 * two_qubit_ns, "MEASURE": measure_ns})
    return DeviceModel.from_calibration({
        "gate_error": gate_error,
        "readout_error": [readout] * n,
        "t1": [t1_ns] * n,
        "t2": [t2_ns] * n,
        "gate_duration": durations,
    })


@pytest.fixture
def device() -> DeviceModel:
    return make_device()


@pytest.fixture(scope="session")
def default_device() -> DeviceModel:
    return JsonDeviceRepository(DEFAULT_DEVICE_PATH).load_device()


@pytest.fixture
def simulator() -> DensityMatrixSimulator:
    return DensityMatrixSimulator(max_width=10)


@pytest.fixture
def noiseless() -> NoiseConfig:
    return NoiseConfig.noiseless()


@pytest.fixture
def depol() -> NoiseConfig:
    return NoiseConfig.from_mode("depol")


@pytest.fixture
def thermal() -> NoiseConfig:
    return NoiseConfig.from_mode("thermal")


@pytest.fixture
def one_qubit_kinds():
    return [GateKind(k) for k in ONE_QUBIT]
