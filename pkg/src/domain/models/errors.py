"""
Exception hierarchy shared by every layer.

Each error carries a stable ``code`` so the CLI and experiment reports can
attribute failures without parsing messages.
"""

from typing import Optional


class ZneError(Exception):
    """Base class for all toolkit errors"""
    code = "zne_error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class CircuitError(ZneError):
    code = "circuit_error"


class InvalidGateError(CircuitError):
    code = "invalid_gate"


class QasmSyntaxError(CircuitError):
    """Raised when QASM text does not match the supported grammar"""
    code = "qasm_syntax"

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")


class UnsupportedGateError(QasmSyntaxError):
    code = "unsupported_gate"

    def __init__(self, name: str, line: Optional[int] = None, column: Optional[int] = None):
        self.name = name
        super().__init__(f"unsupported gate '{name}'", line, column)


class WidthMismatchError(CircuitError):
    code = "width_mismatch"


class MeasurementError(CircuitError):
    code = "measurement_error"


class BenchmarkError(CircuitError):
    code = "benchmark_error"


class CalibrationError(ZneError):
    code = "calibration_error"


class SimulationError(ZneError):
    code = "simulation_error"


class WidthLimitError(SimulationError):
    code = "width_limit"


class ObservableError(ZneError):
    code = "observable_error"


class ZeroReliabilityError(ZneError):
    code = "zero_reliability"


class MitigationError(ZneError):
    code = "mitigation_error"


class CuttingError(ZneError):
    code = "cutting_error"


class NoCutWithinBudgetError(CuttingError):
    code = "no_cut_within_budget"


class RecombinationError(CuttingError):
    code = "recombination_error"


class UnreliableCutError(CuttingError):
    code = "unreliable_cut"


class MetricError(ZneError):
    code = "metric_error"


class ZeroNoisyError(MetricError):
    code = "zero_noisy_error"


class DistributionWidthError(MetricError):
    code = "distribution_width_mismatch"


class ConfigError(ZneError):
    code = "config_error"
