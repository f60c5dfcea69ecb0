from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .circuit import PauliString
from .device import NoiseConfig
from .mitigation import MitigationConfig
from .state import Distribution


REPORT_COLUMNS = [
    "benchmark", "qubits", "esp", "latency_ns", "method",
    "expectation", "abe", "abr", "fidelity", "seed",
]


class BenchmarkFamily(str, Enum):
    GHZ = "GHZ"
    HS = "HS"
    QAOA = "QAOA"
    VQE = "VQE"


class Method(str, Enum):
    NOISY = "noisy"
    RZNE = "rzne"
    RZNE_TOPK = "rzne_topk"
    RZNE_EXPECTATION = "rzne_expectation"
    SLZNE = "slzne"
    SLZNE_TOPK = "slzne_topk"
    SLZNE_RZNE = "slzne_rzne"
    PIPELINE = "pipeline"
    DZNE = "dzne"
    DZNE_STATE = "dzne_state"
    CUTQC_UNMITIGATED = "cutqc_unmitigated"
    CUTQC_CM = "cutqc_cm"
    CUTQC_MC = "cutqc_mc"


class BenchmarkSpec(BaseModel):
    family: BenchmarkFamily
    qubits: int = Field(ge=2)
    steps: int = Field(default=1, ge=1)
    layers: int = Field(default=1, ge=1)

    @property
    def label(self) -> str:
        if self.family is BenchmarkFamily.HS:
            return f"HS-s{self.steps}"
        if self.family is BenchmarkFamily.VQE:
            return f"VQE-l{self.layers}"
        return self.family.value


class ExperimentConfig(BaseModel):
    """One benchmark circuit run through a set of methods"""
    name: Optional[str] = None
    benchmark: BenchmarkSpec
    device_path: Optional[str] = None
    noise: NoiseConfig = Field(default_factory=lambda: NoiseConfig.from_mode("depol"))
    mitigation: MitigationConfig = Field(default_factory=MitigationConfig)
    shots: int = Field(default=32768, ge=1)
    sample_shots: bool = False
    seed: int = 0
    observable: Optional[str] = None
    methods: List[Method] = Field(default_factory=lambda: [Method.NOISY, Method.RZNE])

    @field_validator("methods")
    @classmethod
    def _methods_unique(cls, value):
        if not value:
            raise ValueError("at least one method is required")
        return list(dict.fromkeys(value))

    @model_validator(mode="after")
    def _observable_matches_benchmark(self):
        width = self.benchmark.qubits
        # GHZ has no natural observable; it is scored by fidelity only
        if self.benchmark.family is BenchmarkFamily.GHZ:
            if self.observable is not None:
                raise ValueError("GHZ is scored by fidelity only and takes no observable")
            return self
        if self.observable is None:
            self.observable = "Z" * width
            return self
        self.observable = self.observable.strip().upper()
        if len(self.observable) != width:
            raise ValueError(
                f"observable '{self.observable}' has length {len(self.observable)}, benchmark width is {width}"
            )
        if set(self.observable) - {"I", "Z"}:
            raise ValueError(f"observable '{self.observable}' must contain only I and Z")
        return self

    @property
    def pauli(self) -> Optional[PauliString]:
        return PauliString.from_label(self.observable) if self.observable else None


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class SweepConfig(BaseModel):
    """A base experiment document and per-run overrides"""
    name: str = "sweep"
    base: Dict[str, Any] = Field(default_factory=dict)
    runs: List[Dict[str, Any]] = Field(min_length=1)
    workers: Optional[int] = Field(default=None, ge=1)

    def experiments(self) -> List[ExperimentConfig]:
        return [ExperimentConfig.model_validate(deep_merge(self.base, run)) for run in self.runs]


@dataclass
class MethodResult:
    method: Method
    distribution: Distribution
    esp: float
    latency: float
    fidelity: float
    expectation: Optional[float] = None
    abe: Optional[float] = None
    abr: Optional[float] = None
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass
class MethodFailure:
    method: Method
    code: str
    message: str


@dataclass
class ExperimentReport:
    """Ideal/noisy reference and per-method results of one experiment"""
    name: str
    benchmark: str
    qubits: int
    seed: int
    observable: Optional[str]
    esp: Optional[float]
    latency: Optional[float]
    ideal: Optional[Distribution]
    ideal_expectation: Optional[float] = None
    noisy_expectation: Optional[float] = None
    results: List[MethodResult] = field(default_factory=list)
    errors: List[MethodFailure] = field(default_factory=list)

    def result(self, method) -> MethodResult:
        method = Method(method)
        for result in self.results:
            if result.method is method:
                return result
        raise KeyError(f"no result for method {method.value}")

    @property
    def success(self) -> bool:
        return not self.errors

    def to_rows(self) -> List[Dict[str, Any]]:
        """One row per successful method with the fixed CSV columns"""
        return [
            {
                "benchmark": self.benchmark,
                "qubits": self.qubits,
                "esp": result.esp,
                "latency_ns": result.latency * 1e9,
                "method": result.method.value,
                "expectation": result.expectation,
                "abe": result.abe,
                "abr": result.abr,
                "fidelity": result.fidelity,
                "seed": self.seed,
            }
            for result in self.results
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "benchmark": self.benchmark,
            "qubits": self.qubits,
            "seed": self.seed,
            "observable": self.observable,
            "esp": self.esp,
            "latency_ns": self.latency * 1e9 if self.latency is not None else None,
            "ideal_expectation": self.ideal_expectation,
            "noisy_expectation": self.noisy_expectation,
            "ideal_distribution": self.ideal.probs.tolist() if self.ideal is not None else None,
            "methods": [
                {
                    "method": r.method.value,
                    "expectation": r.expectation,
                    "abe": r.abe,
                    "abr": r.abr,
                    "fidelity": r.fidelity,
                    "esp": r.esp,
                    "latency_ns": r.latency * 1e9,
                    "top_states": r.distribution.top_states(16),
                    "distribution": r.distribution.probs.tolist(),
                    "details": r.details,
                }
                for r in self.results
            ],
            "errors": [
                {"method": e.method.value, "code": e.code, "message": e.message} for e in self.errors
            ],
        }
