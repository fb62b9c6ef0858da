"""Command-line surface: live tables, single computations and validation."""

from .golden import Mismatch, compare, expected
from .tables import COLUMNS, FIGURES, Row, Table, compute_row, compute_table, row_keys

__all__ = [
    "COLUMNS",
    "FIGURES",
    "Mismatch",
    "Row",
    "Table",
    "compare",
    "compute_row",
    "compute_table",
    "expected",
    "row_keys",
]
