from .circuit import Gate, GateKind, Circuit, PauliOp, PauliString
from .device import DeviceModel, NoiseConfig
from .state import DensityState, Distribution, Reliability, RznePoint, bitstring
from .mitigation import MitigationConfig, PipelineRoute, PipelineStage
from .cutting import (
    CutPlan,
    SubcircuitRole,
    SubcircuitVariant,
    Termination,
    WireCut,
    MEASUREMENT_BASES,
    PREPARATIONS,
)
from .experiment import (
    BenchmarkFamily,
    BenchmarkSpec,
    ExperimentConfig,
    ExperimentReport,
    Method,
    MethodFailure,
    MethodResult,
    SweepConfig,
    REPORT_COLUMNS,
    deep_merge,
)

__all__ = [
    'Gate', 'GateKind', 'Circuit', 'PauliOp', 'PauliString',
    'DeviceModel', 'NoiseConfig',
    'DensityState', 'Distribution', 'Reliability', 'RznePoint', 'bitstring',
    'MitigationConfig', 'PipelineRoute', 'PipelineStage',
    'CutPlan', 'SubcircuitRole', 'SubcircuitVariant', 'Termination', 'WireCut',
    'MEASUREMENT_BASES', 'PREPARATIONS',
    'BenchmarkFamily', 'BenchmarkSpec', 'ExperimentConfig', 'ExperimentReport',
    'Method', 'MethodFailure', 'MethodResult', 'SweepConfig', 'REPORT_COLUMNS', 'deep_merge',
]
