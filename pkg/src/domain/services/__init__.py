"""
Domain services for folding-free zero-noise extrapolation.
"""

from .benchmark_service import benchmark_from_spec, generate_benchmark
from .circuit_service import compute_latency, fold_global, fold_with_measurements
from .cutting_service import CuttingService, build_subcircuits, find_cut, recombine
from .experiment_service import ExperimentService, ShotSampledSimulator, report_frame, summarize_report
from .metrics_service import abe, abr, hellinger_fidelity, total_variation
from .mitigation_service import MitigationService, rzne_expectation, rzne_fit, rzne_state, slzne
from .pipeline_service import PipelineService, plan_pipeline
from .reliability_service import compute_esp, effective_reliability

__all__ = [
    'benchmark_from_spec',
    'generate_benchmark',
    'compute_latency',
    'fold_global',
    'fold_with_measurements',
    'CuttingService',
    'build_subcircuits',
    'find_cut',
    'recombine',
    'ExperimentService',
    'ShotSampledSimulator',
    'report_frame',
    'summarize_report',
    'abe',
    'abr',
    'hellinger_fidelity',
    'total_variation',
    'MitigationService',
    'rzne_expectation',
    'rzne_fit',
    'rzne_state',
    'slzne',
    'PipelineService',
    'plan_pipeline',
    'compute_esp',
    'effective_reliability',
]
