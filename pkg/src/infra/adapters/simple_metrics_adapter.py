"""
Simple Metrics Collector - Basic implementation of MetricsCollector interface.
Keeps an in-memory metrics history and optionally appends JSON lines to a file.
"""

from datetime import datetime
from threading import Lock
from typing import Any, Dict, List
import json
import logging

from domain.interfaces import MetricsCollector
from domain.models.experiment import ExperimentReport

logger = logging.getLogger(__name__)


class SimpleMetricsAdapter(MetricsCollector):
    """Simple implementation of MetricsCollector interface"""

    def __init__(self, enable_file_logging: bool = False, metrics_file: str = "zne_metrics.jsonl"):
        """
        Initialize simple metrics collector

        Args:
            enable_file_logging: Whether to append metrics to a file
            metrics_file: File path for metrics logging
        """
        self.enable_file_logging = enable_file_logging
        self.metrics_file = metrics_file
        self.metrics_history: List[Dict[str, Any]] = []
        self._lock = Lock()

    def record_experiment_run(self,
                              benchmark: str,
                              qubits: int,
                              methods_run: int,
                              methods_failed: int,
                              processing_time_seconds: float,
                              success: bool) -> None:
        self._record({
            'metric_type': 'experiment_run',
            'benchmark': benchmark,
            'qubits': qubits,
            'methods_run': methods_run,
            'methods_failed': methods_failed,
            'processing_time_seconds': processing_time_seconds,
            'success': success,
        })

    def record_mitigation_metrics(self, report: ExperimentReport) -> None:
        try:
            methods = {
                result.method.value: {
                    'abr': result.abr,
                    'abe': result.abe,
                    'fidelity': round(result.fidelity, 6),
                    'esp': round(result.esp, 6),
                }
                for result in report.results
            }
            improved = [m for m, v in methods.items() if v['abr'] is not None and v['abr'] < 1]
            self._record({
                'metric_type': 'mitigation',
                'experiment': report.name,
                'benchmark': report.benchmark,
                'qubits': report.qubits,
                'methods': methods,
                'methods_improving': improved,
            })
        except Exception as e:
            logger.error(f"Failed to record mitigation metrics: {e}")

    def record_validation_metrics(self,
                                  total_rows: int,
                                  valid_rows: int,
                                  validation_errors: List[Dict[str, Any]]) -> None:
        error_columns: Dict[str, int] = {}
        for error in validation_errors:
            column = error.get('column') or 'unknown'
            error_columns[column] = error_columns.get(column, 0) + 1

        self._record({
            'metric_type': 'validation',
            'total_rows': total_rows,
            'valid_rows': valid_rows,
            'invalid_rows': total_rows - valid_rows,
            'valid_rate': round(valid_rows / total_rows * 100, 2) if total_rows > 0 else 0,
            'error_columns': error_columns,
            'total_validation_errors': len(validation_errors),
        })

    def get_metrics_summary(self) -> Dict[str, Any]:
        """Get a summary of all collected metrics"""
        with self._lock:
            history = list(self.metrics_history)
        runs = [m for m in history if m['metric_type'] == 'experiment_run']
        mitigation = [m for m in history if m['metric_type'] == 'mitigation']
        validation = [m for m in history if m['metric_type'] == 'validation']

        return {
            'total_metrics_collected': len(history),
            'experiment_runs_count': len(runs),
            'failed_methods_total': sum(m['methods_failed'] for m in runs),
            'total_processing_time_seconds': sum(m['processing_time_seconds'] for m in runs),
            'mitigation_metrics_count': len(mitigation),
            'validation_metrics_count': len(validation),
            'latest_experiment_run': runs[-1] if runs else None,
            'latest_validation': validation[-1] if validation else None,
        }

    def _record(self, metric: Dict[str, Any]) -> None:
        metric = {'timestamp': datetime.now().isoformat(), **metric}
        with self._lock:
            self.metrics_history.append(metric)
        logger.debug(f"Metric: {json.dumps(metric)}")
        if self.enable_file_logging:
            self._write_metric_to_file(metric)

    def _write_metric_to_file(self, metric: Dict[str, Any]) -> None:
        try:
            with self._lock, open(self.metrics_file, 'a') as f:
                f.write(json.dumps(metric) + '\n')
        except Exception as e:
            logger.error(f"Failed to write metric to file {self.metrics_file}: {e}")
