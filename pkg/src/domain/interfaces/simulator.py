"""
Simulator interface for executing circuits under a device noise model.
"""

from abc import ABC, abstractmethod

from ..models.circuit import Circuit
from ..models.device import DeviceModel, NoiseConfig
from ..models.state import Distribution


class NoiseSimulator(ABC):
    """Interface for noisy circuit execution"""

    @abstractmethod
    def simulate(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig) -> Distribution:
        """
        Execute a circuit and return its measured-basis distribution

        Args:
            circuit: Circuit to run; its width must not exceed the simulator limit
            device: Calibration used for error rates and durations
            noise: Channels to apply

        Returns:
            Distribution over all 2^width basis states

        Raises:
            WidthLimitError: If the circuit is too wide
            CalibrationError: If a calibration entry is missing
        """
        pass
