from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .exponent import (
    Exponent,
    phi_p,
    phi_p_inv,
)
from .grids import (
    GridFunction,
    second_difference,
    energy_a,
    energy_b,
    rayleigh,
    operator_pairing,
)
from .weights import (
    _Weight,
    ConstantWeight,
    CosineWeight,
    LinearShiftWeight,
    PiecewisePolynomialWeight,
    NegatedWeight,
    ShiftedWeight,
    RestrictedWeight,
    WeightSamples,
    parse_weight,
    eval_weight,
    negate_weight,
)
from .problem import (
    ShootConfig,
    ProblemSpec,
)

__all__ = [
    "Exponent",
    "phi_p",
    "phi_p_inv",
    "GridFunction",
    "second_difference",
    "energy_a",
    "energy_b",
    "rayleigh",
    "operator_pairing",
    "_Weight",
    "ConstantWeight",
    "CosineWeight",
    "LinearShiftWeight",
    "PiecewisePolynomialWeight",
    "NegatedWeight",
    "ShiftedWeight",
    "RestrictedWeight",
    "WeightSamples",
    "parse_weight",
    "eval_weight",
    "negate_weight",
    "ShootConfig",
    "ProblemSpec",
]
