"""
Repository interfaces for circuit and device-model documents.
Defines the contract for reading and writing the inputs of an experiment.
"""

from abc import ABC, abstractmethod
from typing import Optional

from ..models.circuit import Circuit
from ..models.device import DeviceModel


class CircuitRepository(ABC):
    """Interface for circuit persistence in a text format"""

    @abstractmethod
    def parse(self, text: str) -> Circuit:
        """
        Parse circuit text

        Args:
            text: Circuit source in the repository's format

        Returns:
            Circuit with gates in source order

        Raises:
            CircuitError: If the text is malformed or uses unsupported gates
        """
        pass

    @abstractmethod
    def emit(self, circuit: Circuit) -> str:
        """
        Serialize a circuit so that ``parse(emit(c)) == c``

        Args:
            circuit: Circuit to serialize

        Returns:
            Circuit source text
        """
        pass

    @abstractmethod
    def load_circuit(self, path: str) -> Circuit:
        """
        Read and parse a circuit file

        Args:
            path: File path

        Returns:
            Parsed circuit

        Raises:
            CircuitError: If the file content is invalid
            OSError: If the file cannot be read
        """
        pass

    @abstractmethod
    def save_circuit(self, circuit: Circuit, path: str) -> bool:
        """
        Write a circuit file

        Args:
            circuit: Circuit to write
            path: Destination file path

        Returns:
            True if the file was written
        """
        pass


class DeviceModelRepository(ABC):
    """Interface for device calibration documents"""

    @abstractmethod
    def load_device(self, path: Optional[str] = None) -> DeviceModel:
        """
        Load a device model

        Args:
            path: Calibration document path, or None for the bundled default

        Returns:
            Validated DeviceModel with times in seconds

        Raises:
            CalibrationError: If the document is missing entries or violates invariants
        """
        pass
