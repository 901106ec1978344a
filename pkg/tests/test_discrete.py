import math

import numpy as np
import pytest

from compas_pbiharmonic.errors import DegenerateWeightError
from compas_pbiharmonic.errors import GridTooSmallError
from compas_pbiharmonic.errors import InfeasibleStartError
from compas_pbiharmonic.model import ConstantWeight
from compas_pbiharmonic.model import CosineWeight
from compas_pbiharmonic.model import GridFunction
from compas_pbiharmonic.solvers import DiscreteProblem
from compas_pbiharmonic.solvers import discrete_monotonicity_probe
from compas_pbiharmonic.solvers import mu1_curve
from compas_pbiharmonic.solvers import oracle_p2
from compas_pbiharmonic.solvers import principal_via_mu1
from compas_pbiharmonic.solvers import projected_gradient_lambda1
from compas_pbiharmonic.solvers import scaled_lambda1
from compas_pbiharmonic.spectrum import mu1_concavity_check


def discrete_lambda(k, n, c=1.0):
    # eigenvalues of the squared second difference with Dirichlet conditions
    h = 1.0 / (n + 1)
    return (4.0 / h**2 * math.sin(k * math.pi * h / 2.0) ** 2) ** 2 / c


def test_discrete_problem_needs_seven_nodes():
    with pytest.raises(GridTooSmallError):
        DiscreteProblem(6, ConstantWeight(1.0), 2.0)


def test_inverse_operator():
    prob = DiscreteProblem(31, ConstantWeight(1.0), 3.0)
    rng = np.random.default_rng(1)
    u = rng.standard_normal(31)
    assert np.allclose(prob.inverse_operator(prob.operator(u)), u)
    assert np.allclose(prob.solve_d2(prob.d2(u)), u)


def test_stiffness_matrix_is_operator_at_p2():
    prob = DiscreteProblem(15, ConstantWeight(1.0), 2.0)
    u = np.linspace(-1.0, 2.0, 15)
    assert np.allclose(prob.stiffness_matrix() @ u, prob.operator(u))


def test_gradients_match_finite_differences():
    prob = DiscreteProblem(11, CosineWeight(1), 3.0)
    u = np.sin(np.pi * prob.nodes) + 0.1 * prob.nodes
    eps = 1e-6
    for i in (0, 5, 10):
        du = np.zeros(11)
        du[i] = eps
        slope_a = (prob.bending(u + du) - prob.bending(u - du)) / (2.0 * eps) / prob.p
        slope_b = (prob.weighted(u + du) - prob.weighted(u - du)) / (2.0 * eps) / prob.p
        assert prob.gradient_a(u)[i] == pytest.approx(slope_a, rel=1e-5)
        assert prob.gradient_b(u)[i] == pytest.approx(slope_b, rel=1e-5, abs=1e-10)


def test_oracle_constant_weight():
    n = 199
    plus, minus = oracle_p2(DiscreteProblem(n, ConstantWeight(2.0), 2.0))
    assert minus == []
    assert len(plus) > 100
    for k in range(1, 6):
        assert plus[k - 1][0] == pytest.approx(discrete_lambda(k, n, 2.0), rel=1e-9)
    assert np.all(plus[0][1].values > 0.0)


def test_oracle_close_to_continuous_spectrum(golden):
    plus, _ = oracle_p2(DiscreteProblem(199, ConstantWeight(1.0), 2.0))
    for (lam, _), reference in zip(plus, golden["plus"]):
        assert lam == pytest.approx(reference, rel=2e-3)
        assert lam < reference


def test_oracle_sign_changing_weight():
    plus, minus = oracle_p2(DiscreteProblem(99, CosineWeight(1), 2.0))
    assert plus and minus
    assert all(lam > 0 for lam, _ in plus)
    assert all(lam < 0 for lam, _ in minus)
    assert [lam for lam, _ in plus] == sorted(lam for lam, _ in plus)
    assert [lam for lam, _ in minus] == sorted((lam for lam, _ in minus), reverse=True)
    for lam, vector in plus[:3] + minus[:3]:
        first = vector.values[np.argmax(np.abs(vector.values) > 1e-12 * np.max(np.abs(vector.values)))]
        assert first > 0.0


def test_oracle_rejects_p_not_two():
    with pytest.raises(ValueError):
        oracle_p2(DiscreteProblem(15, ConstantWeight(1.0), 3.0))


def test_oracle_degenerate_weight():
    with pytest.raises(DegenerateWeightError):
        oracle_p2(DiscreteProblem(15, ConstantWeight(0.0), 2.0))


def test_projected_gradient_at_p2():
    n = 63
    lam, minimizer = projected_gradient_lambda1(DiscreteProblem(n, ConstantWeight(1.0), 2.0))
    assert lam == pytest.approx(discrete_lambda(1, n), rel=1e-6)
    assert np.all(minimizer.values > 0.0)


def test_projected_gradient_is_rayleigh_minimum():
    prob = DiscreteProblem(31, CosineWeight(1), 3.0)
    result = projected_gradient_lambda1(prob)
    assert not result.stalled
    rng = np.random.default_rng(7)
    for _ in range(20):
        u = result.minimizer.values + 0.05 * rng.standard_normal(31)
        if prob.weighted(u) > 0.0:
            assert prob.bending(u) / prob.weighted(u) >= result.lam * (1.0 - 1e-9)


@pytest.mark.parametrize("c", [1e-4, 1e3])
def test_projected_gradient_ignores_start_scale(c):
    prob = DiscreteProblem(31, CosineWeight(1), 3.0)
    base = projected_gradient_lambda1(prob)
    scaled = projected_gradient_lambda1(prob, init=prob.default_start().scaled(c))
    assert scaled.lam == pytest.approx(base.lam, rel=1e-8)
    assert np.allclose(scaled.minimizer.values, base.minimizer.values, rtol=1e-6, atol=1e-8)


def test_projected_gradient_infeasible_start():
    prob = DiscreteProblem(15, CosineWeight(1), 2.0)
    x = prob.nodes
    start = GridFunction(np.where(np.abs(x - 0.5) < 0.2, 1.0, 0.0))
    with pytest.raises(InfeasibleStartError):
        projected_gradient_lambda1(prob, init=start)


def test_mu1_curve_at_p2_is_linear():
    n = 31
    lam1 = discrete_lambda(1, n)
    lambdas = [0.0, 0.5 * lam1, lam1, 1.5 * lam1]
    points = mu1_curve(DiscreteProblem(n, ConstantWeight(1.0), 2.0), lambdas)
    assert [point.lam for point in points] == lambdas
    assert points[0].mu1 > 0.0
    for point in points:
        assert point.mu1 == pytest.approx(lam1 - point.lam, rel=1e-6, abs=1e-6 * lam1)
    assert mu1_concavity_check(points).passed


@pytest.mark.slow
def test_mu1_curve_is_concave():
    prob = DiscreteProblem(31, CosineWeight(1), 3.0)
    lam1 = projected_gradient_lambda1(prob).lam
    points = mu1_curve(prob, list(np.linspace(0.0, 1.5 * lam1, 8)))
    assert points[0].mu1 > 0.0
    assert mu1_concavity_check(points).passed
    assert points[-1].mu1 < 0.0


@pytest.mark.slow
def test_principal_via_mu1():
    n = 31
    prob = DiscreteProblem(n, ConstantWeight(1.0), 2.0)
    assert principal_via_mu1(prob) == pytest.approx(discrete_lambda(1, n), rel=1e-6)


@pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
def test_monotonicity_probe(p):
    prob = DiscreteProblem(21, ConstantWeight(1.0), p)
    report = discrete_monotonicity_probe(prob, trials=25, seed=11)
    assert report.passed
    assert report.trials == 25
    augmented = discrete_monotonicity_probe(prob, trials=5, seed=11, potential=ConstantWeight(1.0))
    assert augmented.passed and augmented.augmented


def test_monotonicity_probe_rejects_negative_potential():
    with pytest.raises(ValueError):
        discrete_monotonicity_probe(DiscreteProblem(21, ConstantWeight(1.0), 2.0), trials=3, potential=ConstantWeight(-1.0))


def test_scaled_lambda1_on_half_interval():
    n = 63
    assert scaled_lambda1(ConstantWeight(1.0), 0.0, 0.5, 2.0, n) == pytest.approx(16.0 * discrete_lambda(1, n), rel=1e-6)
