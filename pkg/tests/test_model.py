import math

import compas.data
import numpy as np
import pytest

from compas_pbiharmonic.errors import DiscontinuousWeightError
from compas_pbiharmonic.errors import GridMismatchError
from compas_pbiharmonic.errors import GridTooSmallError
from compas_pbiharmonic.errors import NotAdmissibleError
from compas_pbiharmonic.errors import OutOfDomainError
from compas_pbiharmonic.errors import SchemaError
from compas_pbiharmonic.errors import ZeroDenominatorError
from compas_pbiharmonic.model import ConstantWeight
from compas_pbiharmonic.model import CosineWeight
from compas_pbiharmonic.model import Exponent
from compas_pbiharmonic.model import GridFunction
from compas_pbiharmonic.model import LinearShiftWeight
from compas_pbiharmonic.model import NegatedWeight
from compas_pbiharmonic.model import ProblemSpec
from compas_pbiharmonic.model import ShootConfig
from compas_pbiharmonic.model import energy_a
from compas_pbiharmonic.model import energy_b
from compas_pbiharmonic.model import eval_weight
from compas_pbiharmonic.model import negate_weight
from compas_pbiharmonic.model import operator_pairing
from compas_pbiharmonic.model import parse_weight
from compas_pbiharmonic.model import phi_p
from compas_pbiharmonic.model import phi_p_inv
from compas_pbiharmonic.model import rayleigh
from compas_pbiharmonic.model import second_difference


# ==============================================================================
# exponent
# ==============================================================================


@pytest.mark.parametrize("p", [1.0, 0.5, float("inf"), float("nan")])
def test_exponent_rejects_p_not_above_one(p):
    with pytest.raises(ValueError):
        Exponent(p)


def test_conjugate_exponent():
    e = Exponent(4.0)
    assert e.p_prime == pytest.approx(4.0 / 3.0)
    assert e.conjugate.p_prime == pytest.approx(4.0)


def test_phi_p_is_odd():
    assert phi_p(-2.0, 3.0) == -4.0
    assert phi_p(0.0, 1.2) == 0.0
    s = np.linspace(-3.0, 3.0, 13)
    assert np.allclose(phi_p(-s, 2.5), -phi_p(s, 2.5))


@pytest.mark.parametrize("p", [1.3, 2.0, 3.7])
def test_phi_p_inv_inverts_phi_p(p):
    s = np.linspace(-5.0, 5.0, 21)
    assert np.allclose(phi_p_inv(phi_p(s, p), p), s)


# ==============================================================================
# grids
# ==============================================================================


def test_grid_function_is_immutable():
    u = GridFunction([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        u.values[0] = 5.0
    assert u.scaled(2.0).values[1] == 4.0
    assert u.values[1] == 2.0


def test_grid_function_nodes():
    u = GridFunction(np.ones(4))
    assert u.h == pytest.approx(0.2)
    assert np.allclose(u.nodes, [0.2, 0.4, 0.6, 0.8])
    assert u.with_boundary()[0] == 0.0 and u.with_boundary()[-1] == 0.0


def test_second_difference_of_parabola():
    u = GridFunction.from_function(lambda x: x * (1.0 - x), 9)
    assert np.allclose(second_difference(u.values, u.h), -2.0)


def test_energies_of_parabola():
    n = 9
    u = GridFunction.from_function(lambda x: x * (1.0 - x), n)
    m = ConstantWeight(2.0).sample(n)
    assert energy_a(u, 2.0) == pytest.approx(2.0 * n / (n + 1.0))
    assert energy_b(u, m, 2.0) == pytest.approx(np.sum(u.values**2) * u.h)
    assert rayleigh(u, m, 2.0) == pytest.approx(energy_a(u, 2.0) / energy_b(u, m, 2.0))


def test_energy_a_needs_three_nodes():
    with pytest.raises(GridTooSmallError):
        energy_a(GridFunction([1.0, 1.0]), 2.0)


def test_energy_b_needs_same_grid():
    with pytest.raises(GridMismatchError):
        energy_b(GridFunction(np.ones(5)), ConstantWeight(1.0).sample(6), 2.0)


def test_rayleigh_of_m_orthogonal_function():
    with pytest.raises(ZeroDenominatorError):
        rayleigh(GridFunction(np.ones(4)), GridFunction([1.0, -1.0, 1.0, -1.0]), 2.0)


@pytest.mark.parametrize("c", [1e-3, -2.0, 1e4])
def test_rayleigh_is_scale_invariant(c):
    u = GridFunction.from_function(lambda x: x * (1.0 - x) * (1.0 + x), 49)
    m = CosineWeight(1).shifted(0.5).sample(49)
    for p in (1.5, 2.0, 3.0):
        assert rayleigh(u.scaled(c), m, p) == pytest.approx(rayleigh(u, m, p), rel=1e-12)


@pytest.mark.parametrize("f", [1, 2])
def test_energies_of_sine_modes(f):
    # sin(f pi x) with m = 1 and p = 2: A = (f pi)^4 / 4 and B = 1 / 4
    u = GridFunction.from_function(lambda x: np.sin(f * np.pi * x), 399)
    m = ConstantWeight(1.0).sample(399)
    assert energy_a(u, 2.0) == pytest.approx((f * math.pi) ** 4 / 4.0, rel=1e-3)
    assert energy_b(u, m, 2.0) == pytest.approx(0.25, rel=1e-6)
    assert rayleigh(u, m, 2.0) == pytest.approx((f * math.pi) ** 4, rel=1e-3)


def test_sign_changes():
    assert GridFunction.from_function(lambda x: np.sin(np.pi * x), 99).sign_changes() == 0
    assert GridFunction.from_function(lambda x: np.sin(3.0 * np.pi * x), 99).sign_changes() == 2
    assert GridFunction([1.0, -1e-12, 2.0]).sign_changes() == 0
    assert GridFunction([-1.0, 0.0, 2.0]).sign_changes() == 1


def test_operator_pairing_is_positive():
    rng = np.random.default_rng(3)
    u = GridFunction(rng.standard_normal(15))
    w = GridFunction(rng.standard_normal(15))
    assert operator_pairing(u, u, 3.0) == 0.0
    assert operator_pairing(u, w, 3.0) > 0.0
    assert operator_pairing(u, w, 1.5, potential=ConstantWeight(1.0).sample(15)) > operator_pairing(u, w, 1.5)


# ==============================================================================
# weights
# ==============================================================================


def test_cosine_weight():
    m = CosineWeight(1)
    assert m(0.5) == pytest.approx(-1.0)
    assert m(0.0) == pytest.approx(1.0)
    assert m.sup_norm() == pytest.approx(1.0)
    assert m.is_admissible()
    assert np.allclose(m.evaluate(np.array([0.0, 0.25, 1.0])), [1.0, 0.0, 1.0], atol=1e-15)


@pytest.mark.parametrize("x", [-0.1, 1.5, float("nan")])
def test_weight_outside_domain(x):
    with pytest.raises(OutOfDomainError):
        CosineWeight(1).evaluate(x)


def test_eval_weight():
    assert eval_weight(LinearShiftWeight(0.3), 0.5) == pytest.approx(0.2)


def test_weight_sample():
    m = LinearShiftWeight(0.5).sample(3)
    assert m.n == 3
    assert np.allclose(m.values, [-0.25, 0.0, 0.25])


def test_parse_weight_round_trip():
    fragments = [
        {"kind": "constant", "c": 2.0},
        {"kind": "cosine", "f": 2},
        {"kind": "linear_shift", "a": 0.25},
        {"kind": "piecewise", "breakpoints": [0.0, 0.5, 1.0], "coeffs": [[1.0, -2.0], [2.0, -4.0]]},
        {"kind": "shifted", "weight": {"kind": "cosine", "f": 1}, "c": 0.5},
        {"kind": "restricted", "weight": {"kind": "cosine", "f": 1}, "a": 0.0, "b": 0.5},
    ]
    for fragment in fragments:
        weight = parse_weight(fragment)
        assert weight.to_config() == fragment
        assert parse_weight(weight.to_config()) == weight
        assert hash(parse_weight(fragment)) == hash(weight)


def test_parse_weight_from_json_text():
    assert parse_weight('{"kind": "cosine", "f": 3}') == CosineWeight(3)


def test_parse_weight_from_compas_json_text():
    weight = parse_weight({"kind": "piecewise", "breakpoints": [0.0, 0.5, 1.0], "coeffs": [[1.0, -2.0], [2.0, -4.0]]})
    assert parse_weight(compas.data.json_dumps(weight.to_config(), pretty=True)) == weight
    with pytest.raises(SchemaError):
        parse_weight('{"kind": "cosine", "f": 1')


@pytest.mark.parametrize(
    "fragment",
    [
        {"kind": "sine", "f": 1},
        {"kind": "cosine"},
        {"kind": "cosine", "f": 0},
        {"kind": "cosine", "f": 1.5},
        {"kind": "linear_shift", "a": 1.0},
        {"kind": "piecewise", "breakpoints": [0.0, 0.7], "coeffs": [[1.0]]},
        {"kind": "piecewise", "breakpoints": [0.0, 1.0], "coeffs": [[1.0], [2.0]]},
        "not json",
        [1, 2],
    ],
)
def test_parse_weight_schema_errors(fragment):
    with pytest.raises(SchemaError):
        parse_weight(fragment)


def test_piecewise_weight_must_be_continuous():
    with pytest.raises(DiscontinuousWeightError):
        parse_weight({"kind": "piecewise", "breakpoints": [0.0, 0.5, 1.0], "coeffs": [[1.0], [-1.0]]})


def test_piecewise_weight_evaluation():
    m = parse_weight({"kind": "piecewise", "breakpoints": [0.0, 0.5, 1.0], "coeffs": [[1.0, -2.0], [2.0, -4.0]]})
    assert m(0.25) == pytest.approx(0.5)
    assert m(0.5) == pytest.approx(0.0)
    assert m(1.0) == pytest.approx(-2.0)


def test_non_admissible_weight():
    with pytest.raises(NotAdmissibleError):
        parse_weight({"kind": "constant", "c": -1.0})
    assert parse_weight({"kind": "constant", "c": -1.0}, check_admissible=False).c == -1.0


def test_negate_weight():
    m = CosineWeight(1)
    negated = negate_weight(m)
    assert isinstance(negated, NegatedWeight)
    assert negated(0.0) == pytest.approx(-1.0)
    assert negated.negated() is m
    with pytest.raises(NotAdmissibleError):
        negate_weight(ConstantWeight(1.0))


def test_derived_weights():
    m = CosineWeight(1)
    assert m.shifted(0.5)(0.5) == pytest.approx(-0.5)
    restricted = m.restricted(0.0, 0.5)
    assert restricted.length == 0.5
    assert restricted(1.0) == pytest.approx(math.cos(math.pi))
    assert ConstantWeight(2.0).restricted(0.2, 0.4) == ConstantWeight(2.0)
    with pytest.raises(OutOfDomainError):
        m.restricted(0.5, 0.5)


def test_weight_repr():
    assert repr(CosineWeight(1)) == "CosineWeight(f=1)"


# ==============================================================================
# problem
# ==============================================================================


def test_shoot_config_validation():
    with pytest.raises(ValueError):
        ShootConfig(step_count=50)
    with pytest.raises(ValueError):
        ShootConfig(damping=1.5)
    cfg = ShootConfig(step_count=1024)
    assert cfg.replace(newton_tol=1e-6).newton_tol == 1e-6
    assert cfg.replace(newton_tol=1e-6).step_count == 1024


def test_problem_spec():
    problem = ProblemSpec(3.0, {"kind": "cosine", "f": 1}, grid_n=49, resample_n=99)
    assert problem.p == 3.0
    assert problem.interval == (0.0, 1.0)
    assert problem.weight == CosineWeight(1)
    assert problem.with_exponent(2.0).p == 2.0
    assert problem.with_weight(ConstantWeight(1.0)).grid_n == 49
    other = ProblemSpec.__from_data__(problem.__data__)
    assert other.__data__ == problem.__data__


def test_problem_spec_grid_too_small():
    with pytest.raises(GridTooSmallError):
        ProblemSpec(2.0, CosineWeight(1), grid_n=5)
