"""
CSV Report Storage - Implementation of ReportStorageService for local files.
Writes the fixed-column CSV report, a JSON mirror with full distributions and,
optionally, a Parquet copy of the CSV rows.
"""

from pathlib import Path
from typing import Dict, List
import json
import logging

import pandas as pd

from domain.interfaces import ReportStorageService
from domain.models.experiment import REPORT_COLUMNS, ExperimentReport

logger = logging.getLogger(__name__)


class CsvReportStorage(ReportStorageService):
    """pandas-based implementation of ReportStorageService"""

    def __init__(self, output_dir: str, write_parquet: bool = False):
        """
        Initialize report storage

        Args:
            output_dir: Directory receiving the report files (created on demand)
            write_parquet: Also write ``<name>.parquet`` with pyarrow
        """
        self.output_dir = Path(output_dir)
        self.write_parquet = write_parquet

    def save_reports(self, rows: pd.DataFrame, reports: List[ExperimentReport], name: str) -> Dict[str, str]:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        files = {}

        csv_path = self.output_dir / f"{name}.csv"
        rows.reindex(columns=REPORT_COLUMNS).to_csv(
            csv_path, index=False, float_format="%.10g", lineterminator="\n"
        )
        files["csv"] = str(csv_path)

        json_path = self.output_dir / f"{name}.json"
        with open(json_path, "w", encoding="utf-8") as f:
            json.dump([report.to_dict() for report in reports], f, indent=2, sort_keys=True)
        files["json"] = str(json_path)

        if self.write_parquet:
            parquet_path = self.output_dir / f"{name}.parquet"
            rows.to_parquet(parquet_path, index=False, engine="pyarrow")
            files["parquet"] = str(parquet_path)

        logger.info(f"Saved {len(rows)} report row(s) to {', '.join(files.values())}")
        return files

    def load_rows(self, path: str) -> pd.DataFrame:
        df = pd.read_csv(path)
        missing = [c for c in REPORT_COLUMNS if c not in df.columns]
        if missing:
            raise ValueError(f"{path} is not a report CSV, missing columns {missing}")
        logger.info(f"Loaded {len(df)} report row(s) from {path}")
        return df[REPORT_COLUMNS]
