from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Tuple
import json

from .circuit import Circuit


class SubcircuitRole(str, Enum):
    UPSTREAM = "upstream"
    DOWNSTREAM = "downstream"


class Termination(str, Enum):
    MEASURE_X = "measure-X"
    MEASURE_Y = "measure-Y"
    MEASURE_Z = "measure-Z"
    PREP_ZERO = "prep-0"
    PREP_ONE = "prep-1"
    PREP_PLUS = "prep-+"
    PREP_PLUS_I = "prep-+i"

    @property
    def is_measurement(self) -> bool:
        return self.value.startswith("measure")


MEASUREMENT_BASES = (Termination.MEASURE_X, Termination.MEASURE_Y, Termination.MEASURE_Z)
PREPARATIONS = (Termination.PREP_ZERO, Termination.PREP_ONE, Termination.PREP_PLUS, Termination.PREP_PLUS_I)


@dataclass(frozen=True, order=True)
class WireCut:
    """Cut on ``qubit`` between gate ``after_gate`` and the next gate on that wire, ``before_gate``"""
    after_gate: int
    qubit: int
    before_gate: int

    def to_dict(self) -> dict:
        return {"after_gate": self.after_gate, "qubit": self.qubit, "before_gate": self.before_gate}


@dataclass(frozen=True)
class CutPlan:
    """Wire cuts splitting a circuit into an upstream and a downstream subcircuit"""
    width: int
    cuts: Tuple[WireCut, ...]
    subcircuit_assignment: Dict[int, int]
    subcircuit_qubits: Tuple[Tuple[int, ...], Tuple[int, ...]]
    num_subcircuits: int = 2

    UPSTREAM = 0
    DOWNSTREAM = 1

    @property
    def num_cuts(self) -> int:
        return len(self.cuts)

    @property
    def cut_qubits(self) -> Tuple[int, ...]:
        return tuple(cut.qubit for cut in self.cuts)

    @property
    def upstream_qubits(self) -> Tuple[int, ...]:
        return self.subcircuit_qubits[self.UPSTREAM]

    @property
    def downstream_qubits(self) -> Tuple[int, ...]:
        return self.subcircuit_qubits[self.DOWNSTREAM]

    @property
    def upstream_output_qubits(self) -> Tuple[int, ...]:
        """Upstream qubits whose wire ends in the upstream subcircuit"""
        cut = set(self.cut_qubits)
        return tuple(q for q in self.upstream_qubits if q not in cut)

    def to_dict(self) -> dict:
        subcircuits = []
        for sid, qubits in enumerate(self.subcircuit_qubits):
            subcircuits.append({
                "id": sid,
                "role": (SubcircuitRole.UPSTREAM if sid == self.UPSTREAM else SubcircuitRole.DOWNSTREAM).value,
                "qubits": list(qubits),
                "gates": sorted(g for g, s in self.subcircuit_assignment.items() if s == sid),
            })
        return {
            "width": self.width,
            "cuts": [cut.to_dict() for cut in self.cuts],
            "num_subcircuits": self.num_subcircuits,
            "subcircuits": subcircuits,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class SubcircuitVariant:
    """One executable circuit of a subcircuit with a termination chosen per cut"""
    base: int
    terminations: Tuple[Termination, ...]
    circuit: Circuit
    qubits: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        role_is_upstream = self.base == CutPlan.UPSTREAM
        for termination in self.terminations:
            if termination.is_measurement != role_is_upstream:
                raise ValueError(
                    f"{termination.value} is not a valid termination for subcircuit {self.base}"
                )

    @property
    def role(self) -> SubcircuitRole:
        return SubcircuitRole.UPSTREAM if self.base == CutPlan.UPSTREAM else SubcircuitRole.DOWNSTREAM

    @property
    def key(self) -> Tuple[int, Tuple[Termination, ...]]:
        return (self.base, self.terminations)

    @property
    def is_base_variant(self) -> bool:
        """Z-basis measurement or |0> preparation on every cut"""
        return all(t in (Termination.MEASURE_Z, Termination.PREP_ZERO) for t in self.terminations)
