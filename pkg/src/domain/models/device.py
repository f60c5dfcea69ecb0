"""
Device calibration and noise switches.

DeviceModel times are in seconds. The JSON calibration document uses
nanoseconds and is converted by ``DeviceModel.from_calibration``.
"""

from typing import Dict, Iterable, List, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .circuit import Gate, GateKind
from .errors import CalibrationError

NS = 1e-9


def _qubit_key(qubits: Sequence[int]) -> str:
    return ",".join(str(q) for q in qubits)


class DeviceModel(BaseModel):
    """Per-gate error rates, readout errors, T1/T2 and gate durations"""
    model_config = ConfigDict(frozen=True)

    gate_error: Dict[GateKind, float]
    readout_error: List[float]
    t1: List[float]
    t2: List[float]
    gate_duration: Dict[GateKind, float]
    qubit_gate_error: Dict[GateKind, Dict[str, float]] = Field(default_factory=dict)

    @field_validator("gate_error", "qubit_gate_error")
    @classmethod
    def _error_rates_are_probabilities(cls, value):
        for kind, entry in value.items():
            rates = entry.values() if isinstance(entry, dict) else [entry]
            for rate in rates:
                if not 0.0 <= rate <= 1.0:
                    raise ValueError(f"error rate for {kind} must be in [0, 1], got {rate}")
        return value

    @field_validator("readout_error")
    @classmethod
    def _readout_are_probabilities(cls, value):
        for q, rate in enumerate(value):
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"readout error of qubit {q} must be in [0, 1], got {rate}")
        return value

    @field_validator("gate_duration")
    @classmethod
    def _durations_positive(cls, value):
        for kind, duration in value.items():
            if duration <= 0:
                raise ValueError(f"duration of {kind} must be > 0, got {duration}")
        return value

    @model_validator(mode="after")
    def _per_qubit_lists_consistent(self):
        n = len(self.t1)
        if n == 0:
            raise ValueError("device has no qubits")
        if len(self.t2) != n or len(self.readout_error) != n:
            raise ValueError(
                f"t1/t2/readout_error lengths differ: {n}/{len(self.t2)}/{len(self.readout_error)}"
            )
        for q, (t1, t2) in enumerate(zip(self.t1, self.t2)):
            if t1 <= 0 or t2 <= 0:
                raise ValueError(f"qubit {q}: t1 and t2 must be > 0")
            if t2 > 2 * t1 * (1 + 1e-12):
                raise ValueError(f"qubit {q}: t2={t2} exceeds 2*t1={2 * t1}")
        return self

    @classmethod
    def from_calibration(cls, document: dict) -> "DeviceModel":
        """Build from a JSON calibration document whose times are in nanoseconds"""
        data = dict(document)
        data["t1"] = [t * NS for t in document.get("t1", [])]
        data["t2"] = [t * NS for t in document.get("t2", [])]
        data["gate_duration"] = {k: v * NS for k, v in document.get("gate_duration", {}).items()}
        return cls.model_validate(data)

    def to_calibration(self) -> dict:
        """Inverse of ``from_calibration``"""
        return {
            "gate_error": {k.value: v for k, v in self.gate_error.items()},
            "readout_error": list(self.readout_error),
            "t1": [t / NS for t in self.t1],
            "t2": [t / NS for t in self.t2],
            "gate_duration": {k.value: v / NS for k, v in self.gate_duration.items()},
            "qubit_gate_error": {
                k.value: dict(v) for k, v in self.qubit_gate_error.items()
            },
        }

    @property
    def num_qubits(self) -> int:
        return len(self.t1)

    def _check_qubit(self, qubit: int):
        if not 0 <= qubit < self.num_qubits:
            raise CalibrationError(f"no calibration for qubit {qubit} (device has {self.num_qubits})")

    def gate_error_for(self, gate: Gate) -> float:
        for q in gate.qubits:
            self._check_qubit(q)
        overrides = self.qubit_gate_error.get(gate.kind, {})
        key = _qubit_key(gate.qubits)
        if key in overrides:
            return overrides[key]
        if gate.kind not in self.gate_error:
            raise CalibrationError(f"no gate error for {gate.kind.value}")
        return self.gate_error[gate.kind]

    def duration_for(self, kind: GateKind) -> float:
        if kind not in self.gate_duration:
            raise CalibrationError(f"no duration for {kind.value}")
        return self.gate_duration[kind]

    def readout_error_for(self, qubit: int) -> float:
        self._check_qubit(qubit)
        return self.readout_error[qubit]

    def relaxation_times(self, qubit: int):
        self._check_qubit(qubit)
        return self.t1[qubit], self.t2[qubit]

    def min_t1(self, qubits: Iterable[int]) -> float:
        qubits = list(qubits)
        for q in qubits:
            self._check_qubit(q)
        return min(self.t1[q] for q in qubits) if qubits else min(self.t1)

    def restricted_to(self, qubits: Sequence[int]) -> "DeviceModel":
        """Calibration of ``qubits`` re-indexed to 0..len(qubits)-1"""
        for q in qubits:
            self._check_qubit(q)
        local = {q: i for i, q in enumerate(qubits)}
        overrides = {}
        for kind, entries in self.qubit_gate_error.items():
            kept = {}
            for key, rate in entries.items():
                physical = [int(p) for p in key.split(",")]
                if all(p in local for p in physical):
                    kept[_qubit_key([local[p] for p in physical])] = rate
            if kept:
                overrides[kind] = kept
        return DeviceModel(
            gate_error=dict(self.gate_error),
            readout_error=[self.readout_error[q] for q in qubits],
            t1=[self.t1[q] for q in qubits],
            t2=[self.t2[q] for q in qubits],
            gate_duration=dict(self.gate_duration),
            qubit_gate_error=overrides,
        )


class NoiseConfig(BaseModel):
    """Which noise channels the simulator applies"""
    model_config = ConfigDict(frozen=True)

    depolarizing_enabled: bool = True
    thermal_enabled: bool = True
    readout_enabled: bool = False
    depolarizing_scale: float = Field(default=1.0, ge=0.0)

    @classmethod
    def noiseless(cls) -> "NoiseConfig":
        return cls(depolarizing_enabled=False, thermal_enabled=False, readout_enabled=False)

    @classmethod
    def from_mode(cls, mode: str, **overrides) -> "NoiseConfig":
        """``depol``, ``thermal``, ``both`` or ``none``"""
        modes = {
            "depol": dict(depolarizing_enabled=True, thermal_enabled=False),
            "thermal": dict(depolarizing_enabled=False, thermal_enabled=True),
            "both": dict(depolarizing_enabled=True, thermal_enabled=True),
            "none": dict(depolarizing_enabled=False, thermal_enabled=False),
        }
        if mode not in modes:
            raise ValueError(f"unknown noise mode '{mode}', expected one of {sorted(modes)}")
        return cls(**{**modes[mode], **overrides})

    @property
    def is_noiseless(self) -> bool:
        return not (self.depolarizing_enabled or self.thermal_enabled or self.readout_enabled)

    def scaled_error(self, gate_error: float) -> float:
        """Depolarizing probability applied for a gate with calibrated error ``gate_error``"""
        if not self.depolarizing_enabled or gate_error == 0.0:
            return 0.0
        return min(1.0, max(0.0, gate_error * self.depolarizing_scale))
