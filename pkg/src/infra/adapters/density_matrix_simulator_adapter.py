"""
Density Matrix Simulator - numpy implementation of the NoiseSimulator interface.
Exact mixed-state evolution with per-gate depolarizing noise, thermal relaxation
on an ASAP schedule (idle periods included) and readout bit flips.
"""

from typing import Set
import logging

import numpy as np

from domain.interfaces import NoiseSimulator
from domain.models.circuit import Circuit
from domain.models.device import DeviceModel, NoiseConfig
from domain.models.errors import WidthLimitError
from domain.models.state import DensityState, Distribution
from domain.services.noise_channels import (
    depolarize_on,
    hermitize,
    readout_flip,
    relax_on,
    unitary_on,
)

logger = logging.getLogger(__name__)


class DensityMatrixSimulator(NoiseSimulator):
    """numpy density-matrix implementation of NoiseSimulator"""

    def __init__(self, max_width: int = 12):
        """
        Initialize the simulator

        Args:
            max_width: Widest circuit accepted; memory grows as 16^width
        """
        self.max_width = max_width

    def simulate(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig) -> Distribution:
        state = self.evolve(circuit, device, noise)
        probs = np.clip(state.diagonal(), 0.0, None)

        if noise.readout_enabled:
            for q in sorted(circuit.measured):
                probs = readout_flip(probs, circuit.width, q, device.readout_error_for(q))

        return Distribution(circuit.width, probs / probs.sum())

    def evolve(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig) -> DensityState:
        """Final density matrix before readout"""
        n = circuit.width
        if n > self.max_width:
            raise WidthLimitError(f"circuit width {n} exceeds simulator limit {self.max_width}")
        if n > device.num_qubits:
            raise WidthLimitError(f"circuit width {n} exceeds device size {device.num_qubits}")

        rho = DensityState.zero_state(n).matrix
        thermal = noise.thermal_enabled
        free_at = [0.0] * n
        measured: Set[int] = set()

        for gate in circuit.gates:
            duration = device.duration_for(gate.kind)
            start = max(free_at[q] for q in gate.qubits)

            if thermal:
                for q in gate.qubits:
                    rho = self._relax(rho, n, device, q, start - free_at[q])

            if gate.is_measurement:
                if thermal:
                    rho = self._relax(rho, n, device, gate.qubits[0], duration)
                measured.add(gate.qubits[0])
            else:
                rho = unitary_on(rho, n, gate.unitary(), gate.qubits)
                p = noise.scaled_error(device.gate_error_for(gate))
                rho = depolarize_on(rho, n, p, gate.qubits)
                if thermal:
                    for q in gate.qubits:
                        rho = self._relax(rho, n, device, q, duration)

            for q in gate.qubits:
                free_at[q] = start + duration
            rho = hermitize(rho)

        if thermal:
            # unmeasured qubits keep decaying until the circuit finishes
            latency = max(free_at)
            for q in range(n):
                if q not in measured:
                    rho = self._relax(rho, n, device, q, latency - free_at[q])
            rho = hermitize(rho)

        logger.debug(f"Simulated {len(circuit)} operations on {n} qubits, latency {max(free_at) * 1e9:.1f} ns")
        return DensityState(n, rho)

    @staticmethod
    def _relax(rho: np.ndarray, n: int, device: DeviceModel, qubit: int, duration: float) -> np.ndarray:
        if duration <= 0.0:
            return rho
        t1, t2 = device.relaxation_times(qubit)
        return relax_on(rho, n, qubit, t1, t2, duration)
