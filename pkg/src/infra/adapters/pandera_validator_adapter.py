"""
Pandera Report Validator - Implementation of ReportValidator interface using Pandera.
Checks report rows (ranges of ESP, fidelity, expectation values, known methods)
before they are written.
"""

from typing import Any, Dict, List, Tuple
import logging

import pandas as pd
from pandera.errors import SchemaErrors
from pandera.pandas import Check, Column, DataFrameSchema

from domain.interfaces import ReportValidator
from domain.models.experiment import Method

logger = logging.getLogger(__name__)

# float tolerance on bounded quantities
_EPS = 1e-9


class PanderaReportValidator(ReportValidator):
    """Pandera-based implementation of ReportValidator interface"""

    def __init__(self):
        """Initialize the validator with the report schema"""
        self.schema = DataFrameSchema({
            "benchmark": Column(str, checks=Check.str_length(min_value=1)),
            "qubits": Column(int, checks=Check.ge(1), coerce=True),
            "esp": Column(float, checks=[Check.ge(0), Check.le(1 + _EPS)], coerce=True),
            "latency_ns": Column(float, checks=Check.ge(0), coerce=True),
            "method": Column(str, checks=Check.isin([m.value for m in Method])),
            "expectation": Column(float, checks=[Check.ge(-1 - _EPS), Check.le(1 + _EPS)],
                                  nullable=True, coerce=True),
            "abe": Column(float, checks=[Check.ge(0), Check.le(2 + _EPS)], nullable=True, coerce=True),
            "abr": Column(float, checks=Check.ge(0), nullable=True, coerce=True),
            "fidelity": Column(float, checks=[Check.ge(0), Check.le(1 + _EPS)], coerce=True),
            "seed": Column(int, coerce=True),
        }, strict=True, ordered=True)

    def validate_rows(self, df: pd.DataFrame) -> Tuple[pd.DataFrame, List[Dict[str, Any]]]:
        try:
            return self.schema.validate(df, lazy=True), []
        except SchemaErrors as e:
            failures = e.failure_cases
            validation_errors = [
                {
                    'row': None if pd.isna(failure['index']) else int(failure['index']),
                    'column': failure['column'],
                    'check': str(failure['check']),
                    'value': None if pd.isna(failure['failure_case']) else str(failure['failure_case']),
                    'type': 'schema_validation_error',
                }
                for _, failure in failures.iterrows()
            ]
            logger.warning(f"Report validation found {len(validation_errors)} failure(s)")

            # schema-level failures (missing or extra columns) have no row index
            if failures['index'].isna().any():
                return df.iloc[0:0], validation_errors

            bad_rows = set(failures['index'].astype(int))
            kept = df.drop(index=[i for i in df.index if i in bad_rows])
            try:
                kept = self.schema.validate(kept)
            except Exception as inner:
                logger.error(f"Rows left after dropping failures still invalid: {inner}")
                return df.iloc[0:0], validation_errors
            return kept, validation_errors

    def get_schema_info(self) -> Dict[str, Any]:
        """Column names, types and check counts of the report schema"""
        return {
            'columns': list(self.schema.columns.keys()),
            'column_count': len(self.schema.columns),
            'validation_rules': {
                name: {
                    'data_type': str(col.dtype),
                    'nullable': col.nullable,
                    'checks_count': len(col.checks) if col.checks else 0
                }
                for name, col in self.schema.columns.items()
            }
        }
