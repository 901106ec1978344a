from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .eigenpairs import (
    Eigenpair,
    SpectrumTable,
    SweepTable,
)
from .database import SpectrumDatabase


__all__ = [
    "Eigenpair",
    "SpectrumTable",
    "SweepTable",
    "SpectrumDatabase",
]
