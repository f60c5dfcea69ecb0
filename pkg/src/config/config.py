import os
from pathlib import Path
from dataclasses import dataclass

CONFIG_DIR = Path(__file__).parent
DEFAULT_DEVICE_PATH = CONFIG_DIR / "default_device.json"
DEFAULT_SWEEP_PATH = CONFIG_DIR / "default_sweep.json"


@dataclass(frozen=True)
class BenchmarkAngles:
    """Fixed angle schedule used by the built-in benchmark generators"""
    # Transverse-field Ising Trotter step
    hs_dt: float = 0.25
    hs_coupling: float = 1.0
    hs_transverse_field: float = 1.0
    hs_longitudinal_field: float = 0.5

    # Single-layer QAOA
    qaoa_gamma: float = 0.4
    qaoa_beta: float = 0.7

    # Hardware-efficient VQE ansatz
    vqe_seed: int = 1234


@dataclass
class Config:
    """Application configuration loaded from environment variables"""
    # Inputs
    device_path: str

    # Outputs
    output_dir: str
    write_parquet: bool

    # Simulation limits
    max_width: int
    workers: int

    # Observability
    log_level: str
    metrics_file: str
    enable_metrics_file: bool


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


def load_env_file():
    """Load environment variables from .env file"""
    env_path = Path(__file__).parent.parent.parent / '.env'
    if env_path.exists():
        with open(env_path) as f:
            for line in f:
                line = line.strip()
                if line and not line.startswith('#') and '=' in line:
                    key, value = line.split('=', 1)
                    os.environ.setdefault(key.strip(), value.strip())


def get_config() -> Config:
    """Get application configuration from environment variables"""
    load_env_file()

    return Config(
        device_path=os.getenv("ZNE_DEVICE_PATH", str(DEFAULT_DEVICE_PATH)),
        output_dir=os.getenv("ZNE_OUTPUT_DIR", "reports"),
        write_parquet=_env_flag("ZNE_WRITE_PARQUET", False),
        max_width=int(os.getenv("ZNE_MAX_WIDTH", "12")),
        workers=int(os.getenv("ZNE_WORKERS", "4")),
        log_level=os.getenv("ZNE_LOG_LEVEL", "INFO").upper(),
        metrics_file=os.getenv("ZNE_METRICS_FILE", "zne_metrics.jsonl"),
        enable_metrics_file=_env_flag("ZNE_METRICS_TO_FILE", False),
    )


# Global config instance
config = get_config()
benchmark_angles = BenchmarkAngles()
