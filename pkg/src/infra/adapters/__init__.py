from .qasm_repository_adapter import QasmCircuitRepository, emit_qasm, parse_qasm
from .json_device_repository_adapter import JsonDeviceRepository
from .density_matrix_simulator_adapter import DensityMatrixSimulator
from .csv_report_storage_adapter import CsvReportStorage
from .pandera_validator_adapter import PanderaReportValidator
from .console_notification_adapter import ConsoleNotificationAdapter
from .simple_metrics_adapter import SimpleMetricsAdapter

__all__ = [
    "QasmCircuitRepository",
    "emit_qasm",
    "parse_qasm",
    "JsonDeviceRepository",
    "DensityMatrixSimulator",
    "CsvReportStorage",
    "PanderaReportValidator",
    "ConsoleNotificationAdapter",
    "SimpleMetricsAdapter",
]
