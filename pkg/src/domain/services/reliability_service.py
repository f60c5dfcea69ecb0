"""
Estimated success probability (ESP) of a circuit on a device.
"""

from typing import Optional
import logging

from ..models.circuit import Circuit
from ..models.device import DeviceModel, NoiseConfig
from ..models.state import Reliability

logger = logging.getLogger(__name__)


def compute_esp(circuit: Circuit, device: DeviceModel) -> Reliability:
    """Product of (1 - g) over unitary gates and (1 - m) over measured qubits"""
    r = 1.0
    for gate in circuit.unitary_gates:
        r *= 1.0 - device.gate_error_for(gate)
    for q in sorted(circuit.measured):
        r *= 1.0 - device.readout_error_for(q)
    return Reliability(min(1.0, max(0.0, r)))


def effective_reliability(circuit: Circuit, device: DeviceModel,
                          noise: Optional[NoiseConfig] = None) -> Reliability:
    """ESP restricted to the noise the simulator actually applies

    Gate factors use the scaled depolarizing probability and count only when
    depolarizing is enabled; measurement factors count only when readout
    error is enabled. Without a noise config this is ``compute_esp``.
    """
    if noise is None:
        return compute_esp(circuit, device)

    r = 1.0
    for gate in circuit.unitary_gates:
        r *= 1.0 - noise.scaled_error(device.gate_error_for(gate))
    for q in sorted(circuit.measured):
        error = device.readout_error_for(q)
        if noise.readout_enabled:
            r *= 1.0 - error
    return Reliability(min(1.0, max(0.0, r)))
