"""
Command-line entry point: wires the adapters into the domain services.

Subcommands: simulate, mitigate, cut, bench, sweep, report.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional
import argparse
import json
import logging
import sys

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from config.config import DEFAULT_SWEEP_PATH, config
from domain.models import (
    BenchmarkFamily,
    BenchmarkSpec,
    Circuit,
    ExperimentConfig,
    ExperimentReport,
    Method,
    NoiseConfig,
    PauliString,
    SweepConfig,
    deep_merge,
)
from domain.models.errors import ConfigError, ZneError
from domain.services import (
    ExperimentService,
    ShotSampledSimulator,
    benchmark_from_spec,
    build_subcircuits,
    compute_esp,
    compute_latency,
    effective_reliability,
    find_cut,
    summarize_report,
)
from domain.services.observables import expectation
from infra.adapters import (
    ConsoleNotificationAdapter,
    CsvReportStorage,
    DensityMatrixSimulator,
    JsonDeviceRepository,
    PanderaReportValidator,
    QasmCircuitRepository,
    SimpleMetricsAdapter,
)

logger = logging.getLogger(__name__)

NOISE_MODES = ("depol", "thermal", "both", "none")


def _setup_logging(level: str):
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True)],
        force=True,
    )


def _add_benchmark_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("benchmark")
    group.add_argument("--benchmark", type=str.upper, choices=[f.value for f in BenchmarkFamily])
    group.add_argument("--qubits", type=int)
    group.add_argument("--steps", type=int)
    group.add_argument("--layers", type=int)


def _add_circuit_args(parser: argparse.ArgumentParser):
    parser.add_argument("--qasm", help="QASM file to read instead of generating a benchmark")
    _add_benchmark_args(parser)


def _add_override_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("overrides")
    group.add_argument("--shots", type=int)
    group.add_argument("--seed", type=int)
    group.add_argument("--noise", choices=NOISE_MODES)
    group.add_argument("--depolarizing-scale", type=float)
    group.add_argument("--readout", action="store_true", default=None, help="enable readout errors")
    group.add_argument("--method", action="append", choices=[m.value for m in Method], dest="methods")
    group.add_argument("--observable")
    group.add_argument("--top-k", type=int)
    group.add_argument("--esp-threshold", type=float)
    group.add_argument("--max-cuts", type=int)
    group.add_argument("--sample", action="store_true", default=None,
                       help="score shot-sampled distributions instead of exact ones")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foldfree-zne",
                                     description="Folding-free zero-noise extrapolation experiments")
    parser.add_argument("--log-level", default=config.log_level)
    parser.add_argument("--device", help="calibration JSON (times in ns)")
    parser.add_argument("--output-dir", default=config.output_dir)
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", help="simulate one circuit under a noise model")
    _add_circuit_args(simulate)
    simulate.add_argument("--noise", choices=NOISE_MODES, default="depol")
    simulate.add_argument("--depolarizing-scale", type=float, default=1.0)
    simulate.add_argument("--readout", action="store_true")
    simulate.add_argument("--shots", type=int, default=32768)
    simulate.add_argument("--sample", action="store_true")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--observable")
    simulate.add_argument("--top", type=int, default=16, help="number of top states to print")

    mitigate = sub.add_parser("mitigate", help="run one experiment and write its report")
    mitigate.add_argument("config", nargs="?", help="experiment config JSON")
    mitigate.add_argument("--name")
    _add_benchmark_args(mitigate)
    _add_override_args(mitigate)

    cut = sub.add_parser("cut", help="find a wire cut and optionally write the subcircuit variants")
    _add_circuit_args(cut)
    cut.add_argument("--max-cuts", type=int, default=2)
    cut.add_argument("--emit-dir", help="directory for the variant QASM files")

    bench = sub.add_parser("bench", help="emit a benchmark circuit as QASM")
    _add_benchmark_args(bench)
    bench.add_argument("--out", help="output file (default stdout)")

    sweep = sub.add_parser("sweep", help="run a sweep config and write its report")
    sweep.add_argument("config", nargs="?", default=str(DEFAULT_SWEEP_PATH))
    sweep.add_argument("--workers", type=int)
    _add_override_args(sweep)

    report = sub.add_parser("report", help="summarize a report CSV per method")
    report.add_argument("csv")
    report.add_argument("--json", action="store_true", help="print the summary as JSON")
    return parser


def _benchmark_document(args) -> Dict[str, Any]:
    document = {}
    for key in ("qubits", "steps", "layers"):
        value = getattr(args, key, None)
        if value is not None:
            document[key] = value
    if getattr(args, "benchmark", None):
        document["family"] = args.benchmark
    return document


def _overrides(args) -> Dict[str, Any]:
    """Partial experiment document built from the override flags"""
    document: Dict[str, Any] = {}
    for key in ("shots", "seed", "observable", "methods"):
        value = getattr(args, key, None)
        if value is not None:
            document[key] = value
    if args.sample:
        document["sample_shots"] = True

    noise: Dict[str, Any] = {}
    if args.noise:
        noise.update(NoiseConfig.from_mode(args.noise).model_dump(exclude={"depolarizing_scale", "readout_enabled"}))
    if args.depolarizing_scale is not None:
        noise["depolarizing_scale"] = args.depolarizing_scale
    if args.readout:
        noise["readout_enabled"] = True
    if noise:
        document["noise"] = noise

    mitigation = {
        key: value for key, value in (
            ("top_k", args.top_k), ("esp_threshold", args.esp_threshold), ("max_cuts", args.max_cuts)
        ) if value is not None
    }
    if mitigation:
        document["mitigation"] = mitigation
    if args.device:
        document["device_path"] = args.device
    return document


def _read_json(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed JSON in {path}: {e}")


def _validate(model, document: Dict[str, Any]):
    try:
        return model.model_validate(document)
    except ValidationError as e:
        raise ConfigError(f"invalid {model.__name__}: {e}")


def _load_circuit(args) -> Circuit:
    if args.qasm:
        return QasmCircuitRepository().load_circuit(args.qasm)
    spec = _validate(BenchmarkSpec, _benchmark_document(args))
    return benchmark_from_spec(spec)


def _device_repository(args) -> JsonDeviceRepository:
    return JsonDeviceRepository(args.device or config.device_path)


def _experiment_service(args, workers: Optional[int] = None) -> ExperimentService:
    return ExperimentService(
        simulator=DensityMatrixSimulator(max_width=config.max_width),
        device_repository=_device_repository(args),
        validator=PanderaReportValidator(),
        storage_service=CsvReportStorage(args.output_dir, write_parquet=config.write_parquet),
        notification_service=ConsoleNotificationAdapter(log_level=args.log_level),
        metrics_collector=SimpleMetricsAdapter(
            enable_file_logging=config.enable_metrics_file,
            metrics_file=config.metrics_file,
        ),
        workers=workers or config.workers,
    )


def _fmt(value) -> str:
    if value is None or value != value:
        return "-"
    return f"{value:.4f}"


def _print_reports(console: Console, reports: List[ExperimentReport]):
    table = Table(title="Experiment results")
    for column in ("experiment", "method", "ESP", "latency (ns)", "expectation", "ABE", "ABR", "fidelity"):
        table.add_column(column, justify="left" if column in ("experiment", "method") else "right")
    for report in reports:
        for r in report.results:
            table.add_row(report.name, r.method.value, _fmt(r.esp), f"{r.latency * 1e9:.1f}",
                          _fmt(r.expectation), _fmt(r.abe), _fmt(r.abr), _fmt(r.fidelity))
        for e in report.errors:
            table.add_row(report.name, e.method.value, "", "", "", "", "", f"[red]{e.code}[/red]")
    console.print(table)


def cmd_simulate(args, console: Console) -> int:
    circuit = _load_circuit(args)
    device = _device_repository(args).load_device()
    noise = NoiseConfig.from_mode(args.noise, depolarizing_scale=args.depolarizing_scale,
                                  readout_enabled=args.readout)
    simulator = DensityMatrixSimulator(max_width=config.max_width)
    if args.sample:
        simulator = ShotSampledSimulator(simulator, args.shots, args.seed)
    if not circuit.has_measurements:
        circuit = circuit.measure_all()

    dist = simulator.simulate(circuit, device, noise)
    output = {
        "width": circuit.width,
        "operations": len(circuit),
        "esp": compute_esp(circuit, device).r,
        "effective_esp": effective_reliability(circuit, device, noise).r,
        "latency_ns": compute_latency(circuit, device) * 1e9,
        "top_states": dist.top_states(args.top),
    }
    if args.observable:
        output["expectation"] = expectation(dist, PauliString.from_label(args.observable))
    console.print_json(json.dumps(output))
    return 0


def cmd_mitigate(args, console: Console) -> int:
    document = _read_json(args.config) if args.config else {}
    benchmark = _benchmark_document(args)
    if benchmark:
        document = deep_merge(document, {"benchmark": benchmark})
    document = deep_merge(document, _overrides(args))
    if args.name:
        document["name"] = args.name
    cfg = _validate(ExperimentConfig, document)

    service = _experiment_service(args)
    report = service.run_experiment(cfg)
    summary = service.publish([report], report.name)
    _print_reports(console, [report])
    return 0 if summary["success"] else 1


def cmd_cut(args, console: Console) -> int:
    circuit = _load_circuit(args)
    if not circuit.has_measurements:
        circuit = circuit.measure_all()
    plan = find_cut(circuit, args.max_cuts)
    output = plan.to_dict()

    if args.emit_dir:
        repository = QasmCircuitRepository()
        out_dir = Path(args.emit_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        files = []
        for variant in build_subcircuits(circuit, plan):
            suffix = "_".join(t.value for t in variant.terminations).replace("+", "plus")
            path = out_dir / f"sub{variant.base}_{suffix}.qasm"
            repository.save_circuit(variant.circuit, str(path))
            files.append(str(path))
        output["variant_files"] = files
    console.print_json(json.dumps(output))
    return 0


def cmd_bench(args, console: Console) -> int:
    circuit = benchmark_from_spec(_validate(BenchmarkSpec, _benchmark_document(args)))
    repository = QasmCircuitRepository()
    if args.out:
        return 0 if repository.save_circuit(circuit, args.out) else 1
    sys.stdout.write(repository.emit(circuit))
    return 0


def cmd_sweep(args, console: Console) -> int:
    document = _read_json(args.config)
    overrides = _overrides(args)
    if overrides:
        # flags win over both the base document and every run
        document["runs"] = [deep_merge(run, overrides) for run in document.get("runs", [])]
    if args.workers:
        document["workers"] = args.workers
    sweep = _validate(SweepConfig, document)
    experiments = sweep.experiments()

    service = _experiment_service(args, workers=sweep.workers)
    reports = service.run_sweep(sweep)
    summary = service.publish(reports, sweep.name)
    _print_reports(console, reports)
    logger.info(f"Sweep {sweep.name}: {len(experiments)} experiment(s), "
                f"{summary['method_errors']} method error(s), files {summary['files']}")
    return 0 if summary["success"] else 1


def cmd_report(args, console: Console) -> int:
    rows = CsvReportStorage(args.output_dir).load_rows(args.csv)
    summary = summarize_report(rows)
    if args.json:
        console.print_json(summary.to_json(orient="records"))
        return 0

    table = Table(title=f"Summary of {args.csv}")
    table.add_column("method")
    for column in ("rows", "median ABR", "mean ABE", "mean fidelity", "mean ESP"):
        table.add_column(column, justify="right")
    for _, row in summary.iterrows():
        table.add_row(row["method"], str(row["rows"]), _fmt(row["median_abr"]), _fmt(row["mean_abe"]),
                      _fmt(row["mean_fidelity"]), _fmt(row["mean_esp"]))
    console.print(table)
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "mitigate": cmd_mitigate,
    "cut": cmd_cut,
    "bench": cmd_bench,
    "sweep": cmd_sweep,
    "report": cmd_report,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.log_level)
    console = Console()

    try:
        return COMMANDS[args.command](args, console)
    except ZneError as e:
        logger.error(f"{args.command} failed: {e}")
        sys.stderr.write(json.dumps(e.to_dict()) + "\n")
        return 2
    except Exception as e:
        logger.exception(f"{args.command} failed unexpectedly: {e}")
        sys.stderr.write(json.dumps({"error": "internal_error", "message": str(e)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
