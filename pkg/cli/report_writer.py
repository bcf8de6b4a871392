"""
Report writer for rauzykit runs.

Writes RunRecords as JSON, their traces as CSV or two-column plot data, and
keeps the index of a batch of runs.
"""

import csv
import json
import logging
import math
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from iet.exceptions import PreconditionError, ReportIOError
from cli.experiment import RunRecord

logger = logging.getLogger(__name__)

FORMATS = ('json', 'csv', 'plotdata')


def _finite(value: Any) -> Any:
    """Non-finite floats become null; nested containers are walked."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value


def _cell(value: Any) -> str:
    if isinstance(value, float) and math.isinf(value):
        return 'inf'
    return str(value)


def _write_json(path: Path, data: Dict[str, Any]) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(_finite(data), f, indent=2, default=str)


def emit_report(record: RunRecord, fmt: str, output: str | Path) -> List[str]:
    """Write ``record`` under the ``output`` directory; returns the written paths.

    ``json`` writes the whole record; ``csv`` writes one file per trace with
    its header; ``plotdata`` writes the first two columns of each trace as
    ``x,y``.

    Raises:
        ReportIOError: the directory or a file could not be written.
    """
    if fmt not in FORMATS:
        raise PreconditionError(f"Unknown report format {fmt!r}", format=fmt)
    out_dir = Path(output)
    stem = f"rauzykit_{record.command}_{record.run_id}"
    written: List[str] = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        if fmt == 'json':
            path = out_dir / f"{stem}.json"
            _write_json(path, record.to_dict())
            written.append(str(path))
        else:
            for name, trace in record.traces.items():
                suffix = 'csv' if fmt == 'csv' else 'dat'
                path = out_dir / f"{stem}_{name}.{suffix}"
                with open(path, 'w', newline='', encoding='utf-8') as f:
                    writer = csv.writer(f)
                    if fmt == 'csv':
                        writer.writerow(trace['header'])
                        writer.writerows([_cell(v) for v in row] for row in trace['rows'])
                    else:
                        writer.writerow(['x', 'y'])
                        writer.writerows([_cell(row[0]), _cell(row[1])] for row in trace['rows'])
                written.append(str(path))
    except OSError as e:
        raise ReportIOError(f"Cannot write report to {out_dir}: {e}", path=str(out_dir)) from e

    for path in written:
        logger.info("Wrote %s", path)
    return written


class BatchIndex:
    """
    Index of the runs of one batch.

    Features:
    - Track run outcomes and written files
    - Export to index.json
    - Statistics tracking
    """

    def __init__(self, output: str | Path):
        self.output = Path(output)
        self.start_time = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        self.batch_id = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.runs: List[Dict[str, Any]] = []

    def add_run(self, summary: Dict[str, Any]):
        """Add the summary of one finished run."""
        self.runs.append(summary)

    def export(self, filepath: Optional[str | Path] = None) -> str:
        """
        Write the index as JSON.

        Returns:
            Filepath where the index was saved
        """
        path = Path(filepath) if filepath else self.output / "index.json"
        data = {
            'batch_id': self.batch_id,
            'start_time': self.start_time,
            'export_time': datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            'stats': self.get_stats(),
            'runs': self.runs,
        }
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            _write_json(path, data)
        except OSError as e:
            raise ReportIOError(f"Cannot write batch index {path}: {e}", path=str(path)) from e
        return str(path)

    def get_stats(self) -> Dict[str, Any]:
        if not self.runs:
            return {'total_runs': 0, 'successful': 0, 'failed': 0, 'total_wall_time': 0.0}
        successful = sum(1 for r in self.runs if r.get('status') == 'success')
        return {
            'total_runs': len(self.runs),
            'successful': successful,
            'failed': len(self.runs) - successful,
            'total_wall_time': sum(r.get('wall_time', 0.0) for r in self.runs),
        }

    @property
    def exit_code(self) -> int:
        return max((r.get('exit_code', 0) for r in self.runs), default=0)


__all__ = ['BatchIndex', 'FORMATS', 'emit_report']
