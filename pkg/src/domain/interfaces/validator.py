"""
Report validation interface for checking metric rows before they are stored.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Tuple

import pandas as pd


class ReportValidator(ABC):
    """Interface for report row validation"""

    @abstractmethod
    def validate_rows(self, df: pd.DataFrame) -> Tuple[pd.DataFrame, List[Dict[str, Any]]]:
        """
        Validate report rows and return valid rows and validation errors

        Args:
            df: DataFrame with the fixed report columns

        Returns:
            Tuple of (valid_rows, validation_errors)
            - valid_rows: DataFrame with the rows that passed every check
            - validation_errors: List of dictionaries describing failures
        """
        pass
