from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .spectrum import (
    Branch,
    seed_beta,
    anchor_pairs,
    positive_branch,
    negative_branch,
    enumerate_spectrum,
    p_sweep,
    build_verify_report,
    weight_monotonicity_check,
    domain_monotonicity_check,
    mu1_concavity_check,
)

__all__ = [
    "Branch",
    "seed_beta",
    "anchor_pairs",
    "positive_branch",
    "negative_branch",
    "enumerate_spectrum",
    "p_sweep",
    "build_verify_report",
    "weight_monotonicity_check",
    "domain_monotonicity_check",
    "mu1_concavity_check",
]
