"""
Metrics collection interface for observability of experiment runs.
Defines the contract for run, mitigation-quality and validation metrics.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List

from ..models.experiment import ExperimentReport


class MetricsCollector(ABC):
    """Interface for collecting and reporting metrics"""

    @abstractmethod
    def record_experiment_run(self,
                              benchmark: str,
                              qubits: int,
                              methods_run: int,
                              methods_failed: int,
                              processing_time_seconds: float,
                              success: bool) -> None:
        """
        Record one experiment run

        Args:
            benchmark: Benchmark label
            qubits: Circuit width
            methods_run: Number of methods that produced a result
            methods_failed: Number of methods that raised
            processing_time_seconds: Wall time of the experiment
            success: Whether every method succeeded
        """
        pass

    @abstractmethod
    def record_mitigation_metrics(self, report: ExperimentReport) -> None:
        """
        Record mitigation quality (ABR, fidelity) of a report

        Args:
            report: Finished experiment report
        """
        pass

    @abstractmethod
    def record_validation_metrics(self,
                                  total_rows: int,
                                  valid_rows: int,
                                  validation_errors: List[Dict[str, Any]]) -> None:
        """
        Record report validation results

        Args:
            total_rows: Rows checked
            valid_rows: Rows that passed
            validation_errors: Failure details
        """
        pass
