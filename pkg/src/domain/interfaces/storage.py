"""
Report storage interface.
Defines the contract for writing experiment reports and reading them back.
"""

from abc import ABC, abstractmethod
from typing import Dict, List

import pandas as pd

from ..models.experiment import ExperimentReport


class ReportStorageService(ABC):
    """Interface for report persistence"""

    @abstractmethod
    def save_reports(self, rows: pd.DataFrame, reports: List[ExperimentReport], name: str) -> Dict[str, str]:
        """
        Write the rows and full reports of one run

        Args:
            rows: Validated report rows with the fixed CSV columns
            reports: Full reports (distributions, method errors) in output order
            name: Base file name without extension

        Returns:
            Mapping of format ("csv", "json", "parquet") to written path

        Raises:
            OSError: If a file cannot be written
        """
        pass

    @abstractmethod
    def load_rows(self, path: str) -> pd.DataFrame:
        """
        Read a CSV report

        Args:
            path: CSV file written by ``save_reports``

        Returns:
            DataFrame with the fixed report columns
        """
        pass
