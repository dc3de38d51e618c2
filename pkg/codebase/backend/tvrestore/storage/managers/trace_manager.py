"""
Solver trace and result table export.

Traces are CSV files with one provenance comment line holding the run
parameters as JSON, followed by the columns
iter, dual_objective, primal_objective, rel_change.
Result tables (e.g. a lambda sweep) use the same layout with their own columns.
"""

import json
from typing import Any, Dict, Optional

import pandas as pd

from ...errors import MediaError
from ...services.denoiser import SolveReport
from .base_manager import BaseManager, PathLike

TRACE_COLUMNS = ['iter', 'dual_objective', 'primal_objective', 'rel_change']


def provenance_line(params: Dict[str, Any]) -> str:
    return 'params: ' + json.dumps(params, sort_keys=True, default=str)


class TraceManager(BaseManager):

    def write_table(self, df: pd.DataFrame, path: PathLike,
                    params: Optional[Dict[str, Any]] = None) -> None:
        """
        Write a DataFrame as CSV below a '# params: {...}' provenance line.

        Args:
            df: Table to write; the index is dropped
            path: Output CSV file
            params: Run parameters recorded in the provenance line

        Raises:
            MediaError: If the file cannot be written
        """
        target = self.prepare_output(path)
        try:
            with open(target, 'w', newline='') as fh:
                fh.write(f"# {provenance_line(params or {})}\n")
                df.to_csv(fh, index=False, na_rep='nan')
        except OSError as e:
            self.logger.error(f"Failed to write table {target}: {str(e)}")
            raise MediaError(f"cannot write {target}: {e}") from e
        self.logger.info(f"Wrote {len(df)} rows to {target}")

    def write_trace(self, report: SolveReport, path: PathLike,
                    params: Optional[Dict[str, Any]] = None) -> None:
        """Export a solve report as a trace CSV."""
        self.write_table(pd.DataFrame(report.rows(), columns=TRACE_COLUMNS), path, params)

    def read_trace(self, path: PathLike) -> pd.DataFrame:
        """Load a CSV written by write_table or write_trace."""
        source = self.resolve(path)
        try:
            return pd.read_csv(source, comment='#')
        except (OSError, ValueError) as e:
            self.logger.error(f"Failed to read trace {source}: {str(e)}")
            raise MediaError(f"cannot read trace {source}: {e}") from e
