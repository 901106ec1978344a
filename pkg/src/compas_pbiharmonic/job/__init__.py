from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .config import RunConfig
from .output import (
    dump_document,
    load_document,
    dump_csv,
    csv_rows_from_table,
    csv_rows_from_sweep,
    csv_rows_from_oracle,
)

__all__ = [
    "RunConfig",
    "dump_document",
    "load_document",
    "dump_csv",
    "csv_rows_from_table",
    "csv_rows_from_sweep",
    "csv_rows_from_oracle",
]
