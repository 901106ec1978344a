from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .shooting import (
    ShootState,
    ShootTrace,
    ShootConfig,
    system_rhs,
    integrate,
    miss_map,
    newton_solve,
    classify_zeros,
    retrace,
)
from .continuation import continue_in_p
from .discrete import (
    DiscreteProblem,
    Mu1Point,
    VariationalResult,
    ProbeReport,
    oracle_p2,
    projected_gradient_lambda1,
    mu1_curve,
    principal_via_mu1,
    discrete_monotonicity_probe,
    scaled_lambda1,
)

__all__ = [
    "ShootState",
    "ShootTrace",
    "ShootConfig",
    "system_rhs",
    "integrate",
    "miss_map",
    "newton_solve",
    "classify_zeros",
    "retrace",
    "continue_in_p",
    "DiscreteProblem",
    "Mu1Point",
    "VariationalResult",
    "ProbeReport",
    "oracle_p2",
    "projected_gradient_lambda1",
    "mu1_curve",
    "principal_via_mu1",
    "discrete_monotonicity_probe",
    "scaled_lambda1",
]
