from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Optional, Tuple
import math

import numpy as np

from .errors import InvalidGateError, MeasurementError, ObservableError


class GateKind(str, Enum):
    H = "H"
    X = "X"
    Y = "Y"
    Z = "Z"
    S = "S"
    SDG = "Sdg"
    T = "T"
    TDG = "Tdg"
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    CNOT = "CNOT"
    CZ = "CZ"
    RZZ = "RZZ"
    MEASURE = "MEASURE"

    @property
    def arity(self) -> int:
        return 2 if self in TWO_QUBIT_KINDS else 1

    @property
    def is_rotation(self) -> bool:
        return self in ROTATION_KINDS


TWO_QUBIT_KINDS = frozenset({GateKind.CNOT, GateKind.CZ, GateKind.RZZ})
ROTATION_KINDS = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.RZZ})

_SQRT_HALF = 1 / math.sqrt(2)

_FIXED_UNITARIES = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT_HALF,
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, np.exp(-1j * math.pi / 4)]], dtype=complex),
    # control is the first listed qubit
    GateKind.CNOT: np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    GateKind.CZ: np.diag([1, 1, 1, -1]).astype(complex),
}

_INVERSE_KIND = {
    GateKind.S: GateKind.SDG,
    GateKind.SDG: GateKind.S,
    GateKind.T: GateKind.TDG,
    GateKind.TDG: GateKind.T,
}


@dataclass(frozen=True)
class Gate:
    """A single operation on one or two qubits"""
    kind: GateKind
    qubits: Tuple[int, ...]
    angle: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))

        if len(self.qubits) != self.kind.arity:
            raise InvalidGateError(
                f"{self.kind.value} acts on {self.kind.arity} qubit(s), got {len(self.qubits)}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise InvalidGateError(f"{self.kind.value} has repeated qubits {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise InvalidGateError(f"negative qubit index in {self.qubits}")

        if self.kind.is_rotation:
            if self.angle is None or not math.isfinite(self.angle):
                raise InvalidGateError(f"{self.kind.value} needs a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise InvalidGateError(f"{self.kind.value} takes no angle")

    @property
    def is_measurement(self) -> bool:
        return self.kind is GateKind.MEASURE

    def unitary(self) -> np.ndarray:
        """Matrix of the gate in the basis ordered by ``self.qubits`` (first qubit most significant)"""
        if self.is_measurement:
            raise InvalidGateError("MEASURE has no unitary")
        if self.kind in _FIXED_UNITARIES:
            return _FIXED_UNITARIES[self.kind]

        half = self.angle / 2
        c, s = math.cos(half), math.sin(half)
        if self.kind is GateKind.RX:
            return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
        if self.kind is GateKind.RY:
            return np.array([[c, -s], [s, c]], dtype=complex)
        if self.kind is GateKind.RZ:
            return np.diag([np.exp(-1j * half), np.exp(1j * half)])
        # RZZ
        phase = np.exp(-1j * half)
        return np.diag([phase, phase.conjugate(), phase.conjugate(), phase])

    def inverse(self) -> "Gate":
        if self.is_measurement:
            raise MeasurementError("MEASURE has no inverse")
        if self.kind.is_rotation:
            return Gate(self.kind, self.qubits, -self.angle)
        return Gate(_INVERSE_KIND.get(self.kind, self.kind), self.qubits)

    def remap(self, mapping: dict) -> "Gate":
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.angle)

    def __str__(self) -> str:
        angle = f"({self.angle})" if self.angle is not None else ""
        return f"{self.kind.value}{angle} {','.join(f'q{q}' for q in self.qubits)}"


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over ``width`` qubits; measured qubits derive from its MEASURE gates"""
    width: int
    gates: Tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.width < 1:
            raise InvalidGateError(f"circuit width must be >= 1, got {self.width}")

        measured = set()
        for index, gate in enumerate(self.gates):
            for q in gate.qubits:
                if q >= self.width:
                    raise InvalidGateError(
                        f"gate {index} ({gate}) uses qubit {q} outside width {self.width}"
                    )
                if q in measured:
                    raise MeasurementError(f"gate {index} ({gate}) acts on qubit {q} after its measurement")
            if gate.is_measurement:
                measured.add(gate.qubits[0])

    @property
    def measured(self) -> FrozenSet[int]:
        return frozenset(g.qubits[0] for g in self.gates if g.is_measurement)

    @property
    def unitary_gates(self) -> Tuple[Gate, ...]:
        return tuple(g for g in self.gates if not g.is_measurement)

    @property
    def has_measurements(self) -> bool:
        return any(g.is_measurement for g in self.gates)

    def touched_qubits(self) -> FrozenSet[int]:
        return frozenset(q for g in self.gates for q in g.qubits)

    def without_measurements(self) -> "Circuit":
        return Circuit(self.width, self.unitary_gates)

    def with_measurements(self, qubits) -> "Circuit":
        measures = tuple(Gate(GateKind.MEASURE, (q,)) for q in sorted(qubits))
        return Circuit(self.width, self.gates + measures)

    def measure_all(self) -> "Circuit":
        return self.with_measurements(range(self.width))

    def __len__(self) -> int:
        return len(self.gates)


class PauliOp(str, Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"


@dataclass(frozen=True)
class PauliString:
    """Per-qubit Pauli operators, qubit 0 first"""
    ops: Tuple[PauliOp, ...]

    def __post_init__(self):
        try:
            object.__setattr__(self, "ops", tuple(PauliOp(op) for op in self.ops))
        except ValueError as e:
            raise ObservableError(f"invalid Pauli operator in {self.ops!r}: {e}") from e
        if not self.ops:
            raise ObservableError("empty Pauli string")

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        return cls(tuple(label.strip().upper()))

    @classmethod
    def all_z(cls, width: int) -> "PauliString":
        return cls((PauliOp.Z,) * width)

    @property
    def label(self) -> str:
        return "".join(op.value for op in self.ops)

    @property
    def is_diagonal(self) -> bool:
        return all(op in (PauliOp.I, PauliOp.Z) for op in self.ops)

    @property
    def is_identity(self) -> bool:
        return all(op is PauliOp.I for op in self.ops)

    def z_positions(self) -> Tuple[int, ...]:
        return tuple(i for i, op in enumerate(self.ops) if op is PauliOp.Z)

    def __len__(self) -> int:
        return len(self.ops)
