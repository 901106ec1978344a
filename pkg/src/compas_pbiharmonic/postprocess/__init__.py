from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .checks import Check, VerifyReport
from .nodal import (
    NodalDomain,
    nodal_decompose,
    measure_bound_check,
    weight_admissible_on_domains,
    equi_eigenvalue_partition_check,
)

__all__ = [
    "Check",
    "VerifyReport",
    "NodalDomain",
    "nodal_decompose",
    "measure_bound_check",
    "weight_admissible_on_domains",
    "equi_eigenvalue_partition_check",
]
