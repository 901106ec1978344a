import math

import numpy as np
import pytest

from compas_pbiharmonic.errors import NonAlternatingError
from compas_pbiharmonic.model import ConstantWeight
from compas_pbiharmonic.model import CosineWeight
from compas_pbiharmonic.model import GridFunction
from compas_pbiharmonic.model import ShootConfig
from compas_pbiharmonic.postprocess import NodalDomain
from compas_pbiharmonic.postprocess import equi_eigenvalue_partition_check
from compas_pbiharmonic.postprocess import measure_bound_check
from compas_pbiharmonic.postprocess import nodal_decompose
from compas_pbiharmonic.postprocess import weight_admissible_on_domains
from compas_pbiharmonic.results import Eigenpair
from compas_pbiharmonic.solvers import newton_solve


def sine_pair(k, lam=None, zeros=None):
    values = GridFunction.from_function(lambda x: np.sin(k * np.pi * x), 99)
    lam = lam if lam is not None else (k * math.pi) ** 4
    return Eigenpair(lam, k, 2.0, values, zeros=zeros if zeros is not None else [j / k for j in range(1, k)])


def test_nodal_domain_validation():
    with pytest.raises(ValueError):
        NodalDomain(0.5, 0.5, 1)
    assert NodalDomain(0.25, 0.75, -1).length == 0.5


def test_nodal_decompose():
    domains = nodal_decompose(sine_pair(3), ConstantWeight(1.0))
    assert [(d.a, d.b) for d in domains] == pytest.approx([(0.0, 1.0 / 3.0), (1.0 / 3.0, 2.0 / 3.0), (2.0 / 3.0, 1.0)])
    assert [d.sign for d in domains] == [1, -1, 1]
    assert all(d.weight_admissible for d in domains)


def test_nodal_decompose_non_alternating():
    with pytest.raises(NonAlternatingError):
        nodal_decompose(sine_pair(2, zeros=[0.25, 0.5]))


def test_measure_bound():
    pair = sine_pair(2)
    domains = nodal_decompose(pair)
    check = measure_bound_check(pair, domains, ConstantWeight(1.0))
    # bound (1 / (16 pi^4))^(1/4) = 1 / (2 pi)
    assert check.passed
    assert check.details == pytest.approx([0.5 - 0.5 / math.pi] * 2)


def test_weight_admissible_on_domains():
    m = CosineWeight(1)
    domains = [NodalDomain(0.0, 0.3, 1), NodalDomain(0.3, 0.7, -1), NodalDomain(0.7, 1.0, 1)]
    check = weight_admissible_on_domains(domains, m, lam=1.0)
    assert not check.passed
    assert check.details == [True, False, True]
    assert weight_admissible_on_domains([domains[1]], m, lam=-1.0).passed


@pytest.mark.slow
def test_equi_eigenvalue_partition():
    cfg = ShootConfig(step_count=2048)
    m = ConstantWeight(1.0)
    pair = newton_solve(0.98 * (2 * math.pi) ** 4, -((2 * math.pi) ** 2), m, 2.0, cfg, resample_n=99)
    domains = nodal_decompose(pair, m)
    check = equi_eigenvalue_partition_check(pair, domains, m, cfg)
    assert check.advisory
    assert check.passed
    assert len(check.details) == 2


@pytest.mark.parametrize("c", [1.0, -1.0])
def test_equi_eigenvalue_partition_variational(c):
    m = ConstantWeight(c)
    pair = sine_pair(2, lam=c * (2 * math.pi) ** 4)
    domains = nodal_decompose(pair, m)
    check = equi_eigenvalue_partition_check(pair, domains, m, engine="variational", n=199)
    assert check.passed
    assert len(check.details) == 2
    # both halves carry (pi / 0.5)^4 up to the O(h^2) grid error
    assert max(check.details) < 1e-4


def test_equi_eigenvalue_partition_unknown_engine():
    pair = sine_pair(2)
    with pytest.raises(ValueError):
        equi_eigenvalue_partition_check(pair, nodal_decompose(pair), ConstantWeight(1.0), engine="spectral")
