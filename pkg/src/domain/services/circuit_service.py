"""
Structural circuit transformations: global folding and ASAP latency scheduling.
"""

from dataclasses import dataclass
from typing import List, Tuple
import logging

from ..models.circuit import Circuit
from ..models.device import DeviceModel
from ..models.errors import MeasurementError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Schedule:
    """Start and end time of every gate, in seconds"""
    slots: Tuple[Tuple[float, float], ...]
    latency: float


def fold_global(circuit: Circuit, folds: int) -> Circuit:
    """Return U(U^dagger U)^folds as an explicit gate list"""
    if folds < 0:
        raise ValueError(f"folds must be >= 0, got {folds}")
    if circuit.has_measurements:
        raise MeasurementError("fold the measure-free body; re-append measurements afterwards")

    body = list(circuit.gates)
    inverse = [gate.inverse() for gate in reversed(body)]
    gates = body + (inverse + body) * folds
    return Circuit(circuit.width, gates)


def fold_with_measurements(circuit: Circuit, folds: int) -> Circuit:
    """Fold the unitary body of a measured circuit and put the measurements back at the end"""
    folded = fold_global(circuit.without_measurements(), folds)
    return folded.with_measurements(circuit.measured)


def scale_factor_to_folds(scale_factor: float) -> int:
    """Odd integer scale factor lambda -> number of U^dagger U appendages"""
    folds = (scale_factor - 1) / 2
    if scale_factor < 1 or folds != int(folds):
        raise ValueError(f"only odd integer scale factors are supported, got {scale_factor}")
    return int(folds)


def asap_schedule(circuit: Circuit, device: DeviceModel) -> Schedule:
    """Each gate starts as soon as all of its qubits are free"""
    free_at = [0.0] * circuit.width
    slots: List[Tuple[float, float]] = []
    for gate in circuit.gates:
        duration = device.duration_for(gate.kind)
        start = max(free_at[q] for q in gate.qubits)
        end = start + duration
        for q in gate.qubits:
            free_at[q] = end
        slots.append((start, end))
    return Schedule(tuple(slots), max(free_at))


def compute_latency(circuit: Circuit, device: DeviceModel) -> float:
    """Critical-path duration of the circuit in seconds, measurements included"""
    return asap_schedule(circuit, device).latency
