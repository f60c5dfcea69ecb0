"""
Console Notification Adapter - rich implementation of NotificationService interface.
Prints run notifications to stderr so that stdout stays machine-readable.
"""

from collections import deque
from typing import Any, Deque, Dict, Optional, Tuple
import logging

from rich.console import Console
from rich.markup import escape

from domain.interfaces import NotificationService

logger = logging.getLogger(__name__)

_LEVELS = {"DEBUG": 10, "INFO": 20, "WARNING": 30, "ERROR": 40}


class ConsoleNotificationAdapter(NotificationService):
    """Console-based implementation of NotificationService interface"""

    def __init__(self, log_level: str = "INFO", console: Optional[Console] = None, history: int = 256):
        """
        Initialize console notification adapter

        Args:
            log_level: Lowest level printed (DEBUG, INFO, WARNING, ERROR)
            console: rich Console to print to; defaults to stderr
            history: Number of recent notifications kept in ``sent``
        """
        self.log_level = log_level.upper()
        self.console = console or Console(stderr=True)
        self.sent: Deque[Tuple[str, str, Optional[Dict[str, Any]]]] = deque(maxlen=history)

    def _enabled(self, level: str) -> bool:
        return _LEVELS[level] >= _LEVELS.get(self.log_level, 20)

    def _send(self, level: str, style: str, message: str, details: Optional[Dict[str, Any]]) -> bool:
        try:
            self.sent.append((level, message, details))
            if not self._enabled(level):
                return True
            text = f"[{style}]{level}[/{style}] {escape(message)}"
            if details:
                text += f" [dim]{escape(str(details))}[/dim]"
            self.console.print(text, highlight=False)
            return True
        except Exception as e:
            logger.error(f"Failed to send {level.lower()} notification: {e}")
            return False

    def notify_success(self, message: str, details: Optional[Dict[str, Any]] = None) -> bool:
        return self._send("INFO", "bold green", message, details)

    def notify_error(self, message: str, error_details: Optional[Dict[str, Any]] = None) -> bool:
        return self._send("ERROR", "bold red", message, error_details)

    def notify_warning(self, message: str, warning_details: Optional[Dict[str, Any]] = None) -> bool:
        return self._send("WARNING", "yellow", message, warning_details)
