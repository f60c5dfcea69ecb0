from .repository import CircuitRepository, DeviceModelRepository
from .simulator import NoiseSimulator
from .storage import ReportStorageService
from .validator import ReportValidator
from .notification import NotificationService
from .metrics import MetricsCollector

__all__ = [
    'CircuitRepository',
    'DeviceModelRepository',
    'NoiseSimulator',
    'ReportStorageService',
    'ReportValidator',
    'NotificationService',
    'MetricsCollector'
]
