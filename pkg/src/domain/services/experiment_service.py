from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional
import logging
import zlib

import pandas as pd

from ..interfaces import (
    DeviceModelRepository,
    MetricsCollector,
    NoiseSimulator,
    NotificationService,
    ReportStorageService,
    ReportValidator,
)
from ..models.circuit import Circuit
from ..models.device import DeviceModel, NoiseConfig
from ..models.errors import ZeroNoisyError, ZneError, ObservableError
from ..models.experiment import (
    ExperimentConfig,
    ExperimentReport,
    Method,
    MethodFailure,
    MethodResult,
    SweepConfig,
    REPORT_COLUMNS,
)
from ..models.state import Distribution, Reliability
from .benchmark_service import benchmark_from_spec
from .circuit_service import compute_latency
from .cutting_service import CutExecution, CuttingService
from .metrics_service import abe, abr, hellinger_fidelity
from .mitigation_service import MitigationService, rzne_expectation, rzne_state, slzne
from .observables import expectation, sample_counts
from .pipeline_service import PipelineService, plan_pipeline
from .reliability_service import effective_reliability

logger = logging.getLogger(__name__)

CUT_METHODS = (Method.CUTQC_UNMITIGATED, Method.CUTQC_CM, Method.CUTQC_MC)


class ShotSampledSimulator(NoiseSimulator):
    """Replaces exact distributions by shot frequencies, seeded per circuit"""

    def __init__(self, inner: NoiseSimulator, shots: int, seed: int):
        self.inner = inner
        self.shots = shots
        self.seed = seed

    def simulate(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig) -> Distribution:
        exact = self.inner.simulate(circuit, device, noise)
        circuit_seed = zlib.crc32(repr(circuit.gates).encode()) ^ self.seed
        return sample_counts(exact, self.shots, circuit_seed)


@dataclass
class _MethodOutput:
    distribution: Distribution
    esp: float
    latency: float
    expectation: Optional[float] = None
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass
class _RunContext:
    cfg: ExperimentConfig
    circuit: Circuit
    device: DeviceModel
    noisy: Distribution
    reliability: Reliability
    latency: float
    min_t1: float
    pipeline: PipelineService
    cutting: CuttingService
    mitigation: MitigationService
    cut_execution: Optional[CutExecution] = None
    cut_error: Optional[ZneError] = None


def report_frame(reports: List[ExperimentReport]) -> pd.DataFrame:
    rows = [row for report in reports for row in report.to_rows()]
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def summarize_report(rows: pd.DataFrame) -> pd.DataFrame:
    """Per-method row count, median ABR, mean ABE and mean fidelity, in first-seen method order"""
    rows = rows.assign(**{c: pd.to_numeric(rows[c], errors="coerce") for c in ("abr", "abe", "fidelity", "esp")})
    summary = rows.groupby("method", sort=False).agg(
        rows=("method", "size"),
        median_abr=("abr", "median"),
        mean_abe=("abe", "mean"),
        mean_fidelity=("fidelity", "mean"),
        mean_esp=("esp", "mean"),
    )
    return summary.reset_index()


class ExperimentService:
    """Domain service that runs experiments and publishes their reports"""

    def __init__(self,
                 simulator: NoiseSimulator,
                 device_repository: DeviceModelRepository,
                 validator: Optional[ReportValidator] = None,
                 storage_service: Optional[ReportStorageService] = None,
                 notification_service: Optional[NotificationService] = None,
                 metrics_collector: Optional[MetricsCollector] = None,
                 workers: int = 1):
        self.simulator = simulator
        self.device_repository = device_repository
        self.validator = validator
        self.storage_service = storage_service
        self.notification_service = notification_service
        self.metrics_collector = metrics_collector
        self.workers = workers

    def run_experiment(self, cfg: ExperimentConfig) -> ExperimentReport:
        start_time = datetime.now()
        label = cfg.benchmark.label
        logger.info(f"Starting experiment {cfg.name or label}({cfg.benchmark.qubits}) "
                    f"with methods {[m.value for m in cfg.methods]}")

        circuit = benchmark_from_spec(cfg.benchmark)
        device = self.device_repository.load_device(cfg.device_path)
        simulator = self.simulator
        if cfg.sample_shots:
            simulator = ShotSampledSimulator(self.simulator, cfg.shots, cfg.seed)

        ideal = self.simulator.simulate(circuit, device, NoiseConfig.noiseless())
        noisy = simulator.simulate(circuit, device, cfg.noise)
        observable = cfg.pauli

        context = _RunContext(
            cfg=cfg,
            circuit=circuit,
            device=device,
            noisy=noisy,
            reliability=effective_reliability(circuit, device, cfg.noise),
            latency=compute_latency(circuit, device),
            min_t1=device.min_t1(circuit.touched_qubits()),
            pipeline=PipelineService(simulator),
            cutting=CuttingService(simulator),
            mitigation=MitigationService(simulator),
        )

        report = ExperimentReport(
            name=cfg.name or f"{label}-{cfg.benchmark.qubits}",
            benchmark=label,
            qubits=cfg.benchmark.qubits,
            seed=cfg.seed,
            observable=cfg.observable,
            esp=context.reliability.r,
            latency=context.latency,
            ideal=ideal,
            ideal_expectation=expectation(ideal, observable) if observable else None,
            noisy_expectation=expectation(noisy, observable) if observable else None,
        )

        for method in cfg.methods:
            try:
                output = self._run_method(method, context)
                report.results.append(self._score(method, output, report, observable))
            except ZneError as e:
                logger.warning(f"Method {method.value} failed on {report.name}: {e}")
                report.errors.append(MethodFailure(method, e.code, str(e)))
                if self.notification_service:
                    self.notification_service.notify_warning(
                        f"{method.value} failed on {report.name}",
                        warning_details={'code': e.code, 'message': str(e)}
                    )

        processing_time = (datetime.now() - start_time).total_seconds()
        if self.metrics_collector:
            self.metrics_collector.record_experiment_run(
                benchmark=label,
                qubits=report.qubits,
                methods_run=len(report.results),
                methods_failed=len(report.errors),
                processing_time_seconds=processing_time,
                success=report.success
            )
            self.metrics_collector.record_mitigation_metrics(report)

        logger.info(f"Experiment {report.name} finished in {processing_time:.2f}s "
                    f"({len(report.results)} ok, {len(report.errors)} failed)")
        return report

    def run_sweep(self, sweep: SweepConfig) -> List[ExperimentReport]:
        """Run every experiment of a sweep; results keep the config order"""
        experiments = sweep.experiments()
        workers = sweep.workers or self.workers
        logger.info(f"Sweep {sweep.name}: {len(experiments)} experiment(s) on {workers} worker(s)")
        if workers <= 1:
            return [self._run_isolated(cfg) for cfg in experiments]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(self._run_isolated, experiments))

    def _run_isolated(self, cfg: ExperimentConfig) -> ExperimentReport:
        """run_experiment for sweeps: a setup failure becomes a report with every method failed"""
        try:
            return self.run_experiment(cfg)
        except ZneError as e:
            return self._failed_report(cfg, e)

    def _failed_report(self, cfg: ExperimentConfig, error: ZneError) -> ExperimentReport:
        label = cfg.benchmark.label
        report = ExperimentReport(
            name=cfg.name or f"{label}-{cfg.benchmark.qubits}",
            benchmark=label,
            qubits=cfg.benchmark.qubits,
            seed=cfg.seed,
            observable=cfg.observable,
            esp=None,
            latency=None,
            ideal=None,
            errors=[MethodFailure(method, error.code, str(error)) for method in cfg.methods],
        )
        logger.error(f"Experiment {report.name} could not be set up: {error}")
        if self.notification_service:
            self.notification_service.notify_error(
                f"{report.name} failed before any method ran",
                error_details={'code': error.code, 'message': str(error)}
            )
        if self.metrics_collector:
            self.metrics_collector.record_experiment_run(
                benchmark=label,
                qubits=report.qubits,
                methods_run=0,
                methods_failed=len(report.errors),
                processing_time_seconds=0.0,
                success=False
            )
        return report

    def publish(self, reports: List[ExperimentReport], name: str) -> Dict[str, Any]:
        """Validate report rows and write them through the storage service"""
        summary = {
            'success': False,
            'experiments': len(reports),
            'rows': 0,
            'valid_rows': 0,
            'validation_errors': [],
            'method_errors': sum(len(r.errors) for r in reports),
            'files': {},
        }

        try:
            rows = report_frame(reports)
            valid_rows, validation_errors = rows, []
            if self.validator:
                valid_rows, validation_errors = self.validator.validate_rows(rows)
                logger.info(f"Validation: {len(valid_rows)} valid, {len(validation_errors)} errors")

            files = {}
            if self.storage_service:
                files = self.storage_service.save_reports(valid_rows, reports, name)

            summary.update({
                'success': True,
                'rows': len(rows),
                'valid_rows': len(valid_rows),
                'validation_errors': validation_errors,
                'files': files,
            })

            if self.metrics_collector:
                self.metrics_collector.record_validation_metrics(
                    total_rows=len(rows),
                    valid_rows=len(valid_rows),
                    validation_errors=validation_errors
                )

            if self.notification_service:
                self.notification_service.notify_success(
                    f"Report {name} written",
                    details={k: summary[k] for k in ('experiments', 'valid_rows', 'method_errors', 'files')}
                )

        except Exception as e:
            logger.error(f"Publishing report {name} failed: {e}")
            if self.notification_service:
                self.notification_service.notify_error(
                    f"Report {name} could not be written",
                    error_details={'error': str(e)}
                )
            raise

        return summary

    def _run_method(self, method: Method, ctx: _RunContext) -> _MethodOutput:
        cfg = ctx.cfg
        mc = cfg.mitigation
        r = ctx.reliability

        if method is Method.NOISY:
            return _MethodOutput(ctx.noisy, r.r, ctx.latency)

        if method in (Method.RZNE, Method.RZNE_TOPK):
            top_k = mc.top_k if method is Method.RZNE_TOPK else None
            return _MethodOutput(rzne_state(ctx.noisy, r, top_k), r.r, ctx.latency)

        if method is Method.RZNE_EXPECTATION:
            observable = self._require_observable(cfg, method)
            noisy_value = expectation(ctx.noisy, observable)
            value = rzne_expectation(noisy_value, r, 1.0 if observable.is_identity else 0.0)
            return _MethodOutput(rzne_state(ctx.noisy, r), r.r, ctx.latency, expectation=value)

        if method in (Method.SLZNE, Method.SLZNE_TOPK, Method.SLZNE_RZNE):
            top_k = None if method is Method.SLZNE else mc.top_k
            dist = slzne(ctx.noisy, ctx.latency, ctx.min_t1, top_k, mc.zero_state_rule)
            if method is Method.SLZNE_RZNE:
                dist = rzne_state(dist, r, top_k)
            return _MethodOutput(dist, r.r, ctx.latency, details={'t1': ctx.min_t1})

        if method is Method.PIPELINE:
            route = plan_pipeline(ctx.circuit, ctx.device, cfg.noise, mc)
            dist = ctx.pipeline.mitigate_pipeline(ctx.circuit, ctx.device, cfg.noise, mc, noisy=ctx.noisy)
            return _MethodOutput(dist, r.r, ctx.latency, details={'stages': [s.value for s in route.stages]})

        if method in (Method.DZNE, Method.DZNE_STATE):
            result = ctx.mitigation.dzne_extrapolate(
                ctx.circuit, ctx.device, cfg.noise, mc.dzne_scale_factors,
                cfg.pauli if method is Method.DZNE else None
            )
            return _MethodOutput(
                result.distribution, r.r, ctx.latency,
                expectation=result.expectation,
                details={'scale_factors': list(mc.dzne_scale_factors), 'scaled_values': result.scaled_values},
            )

        if method in CUT_METHODS:
            execution = self._cut_execution(ctx)
            if method is Method.CUTQC_UNMITIGATED:
                dist = ctx.cutting.combine_unmitigated(execution)
            elif method is Method.CUTQC_CM:
                dist = ctx.cutting.combine_then_mitigate(execution)
            else:
                dist = ctx.cutting.mitigate_then_combine(execution, ctx.device, cfg.noise, mc)
            esp = Reliability.geometric_mean(execution.subcircuit_reliabilities()).r
            return _MethodOutput(
                dist, esp, max(execution.subcircuit_latencies()),
                details={
                    'plan': execution.plan.to_dict(),
                    'subcircuit_esp': [x.r for x in execution.subcircuit_reliabilities()],
                },
            )

        raise ZneError(f"unknown method {method}")

    @staticmethod
    def _require_observable(cfg: ExperimentConfig, method: Method):
        if cfg.pauli is None:
            raise ObservableError(f"{method.value} needs an observable")
        return cfg.pauli

    @staticmethod
    def _cut_execution(ctx: _RunContext) -> CutExecution:
        if ctx.cut_error is not None:
            raise ctx.cut_error
        if ctx.cut_execution is None:
            try:
                ctx.cut_execution = ctx.cutting.execute(ctx.circuit, ctx.device, ctx.cfg.noise, ctx.cfg.mitigation)
            except ZneError as e:
                ctx.cut_error = e
                raise
        return ctx.cut_execution

    @staticmethod
    def _score(method: Method, output: _MethodOutput, report: ExperimentReport, observable) -> MethodResult:
        value = output.expectation
        if value is None and observable is not None:
            value = expectation(output.distribution, observable)

        result = MethodResult(
            method=method,
            distribution=output.distribution,
            esp=output.esp,
            latency=output.latency,
            fidelity=hellinger_fidelity(report.ideal, output.distribution),
            expectation=value,
            details=output.details,
        )
        if value is not None and report.ideal_expectation is not None:
            result.abe = abe(report.ideal_expectation, value)
            if method is Method.NOISY:
                result.abr = 1.0
            else:
                try:
                    result.abr = abr(report.ideal_expectation, value, report.noisy_expectation)
                except ZeroNoisyError:
                    result.abr = None
        return result
