"""
Tables behind the figures: rectangular rows of floats written as CSV with
17 significant digits, LF line endings and a JSON metadata sidecar.
"""
import csv
import json
import logging
import os
from enum import Enum

from concswap.core import DimensionError, OutputError
from concswap.utils import format_value

log = logging.getLogger(__name__)


class SweepTable:

    def __init__(self, headers, rows=None, metadata=None):
        self.headers = list(headers)
        self.rows = []
        self.metadata = dict(metadata or {})
        for row in rows or []:
            self.append(row)

    def __repr__(self):
        return f"<SweepTable (headers={self.headers}, rows={len(self.rows)})>"

    def __len__(self):
        return len(self.rows)

    def append(self, row):
        row = [float(value) for value in row]
        if len(row) != len(self.headers):
            raise DimensionError(f"Row of {len(row)} values for {len(self.headers)} columns.")
        self.rows.append(row)

    def column(self, header):
        index = self.headers.index(header)
        return [row[index] for row in self.rows]

    def write(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(self.headers)
        for row in self.rows:
            writer.writerow([format_value(value) for value in row])

    def save(self, path):
        """Write ``path`` and its ``<path>.meta.json`` sidecar."""
        try:
            with open(path, 'w', newline='', encoding='utf-8') as f:
                self.write(f)
            with open(f"{path}.meta.json", 'w', newline='\n', encoding='utf-8') as f:
                json.dump(self.metadata, f, indent=2, sort_keys=True)
                f.write('\n')
        except OSError as e:
            raise OutputError(f"Cannot write '{path}': {e}") from e
        log.info(f"Wrote {len(self.rows)} rows to {path}")


def boundary_path(path):
    """fig1.csv -> fig1_boundary.csv"""
    root, extension = os.path.splitext(path)
    return f"{root}_boundary{extension}"


class Figure(Enum):
    INPUT_CONCURRENCE = 1
    OUTCOME_PROBABILITIES = 2
    PHI_CONCURRENCE = 3
    PSI_CONCURRENCE = 4
    CONCURRENCE_RATIO = 5
    AVERAGE_CONCURRENCE = 6
    ISOTROPIC_CONCURRENCE = 7
    ISOTROPIC_RATIO = 8

    def __str__(self):
        return str(self.value)

    @property
    def has_boundary(self):
        return self in (Figure.INPUT_CONCURRENCE, Figure.PHI_CONCURRENCE,
                        Figure.PSI_CONCURRENCE, Figure.AVERAGE_CONCURRENCE)

    @property
    def is_isotropic(self):
        return self in (Figure.ISOTROPIC_CONCURRENCE, Figure.ISOTROPIC_RATIO)

    @classmethod
    def from_string(cls, string):
        try:
            return Figure(int(string))
        except (TypeError, ValueError):
            return None
