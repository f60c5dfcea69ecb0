"""
JSON Device Repository - Implementation of DeviceModelRepository for calibration documents.
Loads nanosecond-based JSON calibrations into validated DeviceModel instances.
"""

from pathlib import Path
from threading import Lock
from typing import Dict, Optional, Union
import json
import logging

from pydantic import ValidationError

from domain.interfaces import DeviceModelRepository
from domain.models.device import DeviceModel
from domain.models.errors import CalibrationError

logger = logging.getLogger(__name__)


class JsonDeviceRepository(DeviceModelRepository):
    """File-based DeviceModelRepository with a per-path cache"""

    def __init__(self, default_path: Union[str, Path]):
        """
        Initialize the repository

        Args:
            default_path: Calibration document used when no path is given
        """
        self.default_path = str(default_path)
        self._cache: Dict[str, DeviceModel] = {}
        self._lock = Lock()

    def load_device(self, path: Optional[str] = None) -> DeviceModel:
        path = str(path or self.default_path)
        with self._lock:
            if path not in self._cache:
                self._cache[path] = self._read(path)
            return self._cache[path]

    def _read(self, path: str) -> DeviceModel:
        try:
            with open(path, encoding="utf-8") as f:
                document = json.load(f)
        except FileNotFoundError:
            raise CalibrationError(f"calibration file not found: {path}")
        except json.JSONDecodeError as e:
            raise CalibrationError(f"malformed calibration JSON in {path}: {e}")

        try:
            device = DeviceModel.from_calibration(document)
        except ValidationError as e:
            logger.error(f"Calibration {path} failed validation: {e.error_count()} error(s)")
            raise CalibrationError(f"invalid calibration {path}: {e}")

        logger.info(f"Loaded {device.num_qubits}-qubit device model from {path}")
        return device

    def save_device(self, device: DeviceModel, path: str) -> bool:
        """Write a device model as a nanosecond calibration document"""
        try:
            with open(path, "w", encoding="utf-8") as f:
                json.dump(device.to_calibration(), f, indent=2, sort_keys=True)
            return True
        except OSError as e:
            logger.error(f"Failed to write calibration {path}: {e}")
            return False
