"""
Notification interface for experiment and sweep status updates.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional


class NotificationService(ABC):
    """Interface for run notifications (console, chat, e-mail, ...)"""

    @abstractmethod
    def notify_success(self, message: str, details: Optional[Dict[str, Any]] = None) -> bool:
        """
        Announce a finished experiment or sweep

        Args:
            message: Summary line
            details: Optional key figures (rows written, duration, ...)

        Returns:
            True if the notification was delivered
        """
        pass

    @abstractmethod
    def notify_error(self, message: str, error_details: Optional[Dict[str, Any]] = None) -> bool:
        """
        Announce a run that aborted

        Args:
            message: Summary line
            error_details: Optional error code and context

        Returns:
            True if the notification was delivered
        """
        pass

    @abstractmethod
    def notify_warning(self, message: str, warning_details: Optional[Dict[str, Any]] = None) -> bool:
        """
        Announce a recoverable problem, such as a single method failing inside an experiment

        Args:
            message: Summary line
            warning_details: Optional method name and error code

        Returns:
            True if the notification was delivered
        """
        pass
