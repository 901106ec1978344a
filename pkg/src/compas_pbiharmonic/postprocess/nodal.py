"""
Nodal structure of computed eigenfunctions.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np

from compas_pbiharmonic.base import SpectralData
from compas_pbiharmonic.errors import IntegrationOverflowError
from compas_pbiharmonic.errors import NoConvergenceError
from compas_pbiharmonic.errors import NonAlternatingError
from compas_pbiharmonic.errors import SingularJacobianError
from compas_pbiharmonic.model import ShootConfig
from compas_pbiharmonic.model import phi_p
from compas_pbiharmonic.solvers import newton_solve
from compas_pbiharmonic.solvers import retrace
from compas_pbiharmonic.solvers import scaled_lambda1

from .checks import Check

DOMAIN_SAMPLES = 1000
PARTITION_TOL = 1e-3


class NodalDomain(SpectralData):
    """A maximal subinterval where the eigenfunction keeps one sign.

    Parameters
    ----------
    a, b : float
        End points, ``0 <= a < b <= 1``.
    sign : int
        ``+1`` or ``-1``.
    weight_admissible : bool, optional
        Whether the (signed) weight is positive somewhere in the domain.

    """

    def __init__(self, a, b, sign, weight_admissible=None, **kwargs):
        super(NodalDomain, self).__init__(**kwargs)
        if not 0.0 <= a < b <= 1.0:
            raise ValueError("Invalid nodal domain ({}, {})".format(a, b))
        self.a = float(a)
        self.b = float(b)
        self.sign = int(sign)
        self.weight_admissible = weight_admissible

    @property
    def length(self):
        return self.b - self.a

    @property
    def __data__(self):
        return {"a": self.a, "b": self.b, "sign": self.sign, "weight_admissible": self.weight_admissible}

    def __repr__(self):
        return "NodalDomain(({!r}, {!r}), sign={:+d})".format(self.a, self.b, self.sign)


def _domain_sign(pair, a, b):
    f = pair.eigenfunction
    x = f.nodes
    inside = (x > a) & (x < b)
    if np.any(inside):
        values = f.values[inside]
        return 1 if values[np.argmax(np.abs(values))] > 0 else -1
    value = np.interp(0.5 * (a + b), np.concatenate(([0.0], x, [1.0])), f.with_boundary())
    return 1 if value > 0 else -1


def nodal_decompose(pair, weight=None):
    """Split [0, 1] at the zeros of an eigenfunction.

    Parameters
    ----------
    pair : :class:`compas_pbiharmonic.results.Eigenpair`
    weight : :class:`compas_pbiharmonic.model.weights._Weight`, optional
        When given, every domain records whether ``sign(lam) m`` is positive
        somewhere in it.

    Returns
    -------
    list[:class:`NodalDomain`]

    Raises
    ------
    :class:`compas_pbiharmonic.errors.NonAlternatingError`
        If two adjacent domains share their sign.

    """
    breaks = [0.0] + list(pair.zeros) + [1.0]
    domains = []
    for a, b in zip(breaks, breaks[1:]):
        admissible = None
        if weight is not None:
            samples = np.sign(pair.lam) * weight.evaluate(np.linspace(a, b, DOMAIN_SAMPLES + 2)[1:-1])
            admissible = bool(np.max(samples) > 0.0)
        domains.append(NodalDomain(a, b, _domain_sign(pair, a, b), admissible))
    for left, right in zip(domains, domains[1:]):
        if left.sign == right.sign:
            raise NonAlternatingError("Adjacent nodal domains {!r} and {!r} share their sign.".format(left, right))
    return domains


def measure_bound_check(pair, domains, weight):
    """Lower bound ``|w| >= (1 / (|lam| max_w |m|))^(1 / 2p)`` on every nodal domain.

    Returns
    -------
    :class:`compas_pbiharmonic.postprocess.Check`
        ``value`` is the smallest margin; ``details`` lists every margin.

    """
    margins = []
    for d in domains:
        sup = weight.sup_norm(d.a, d.b, DOMAIN_SAMPLES)
        bound = (1.0 / (abs(pair.lam) * sup)) ** (1.0 / (2.0 * pair.p)) if sup > 0 else np.inf
        margins.append(d.length - bound)
    smallest = float(min(margins))
    return Check("measure_bound", smallest > 0.0, smallest, 0.0, pair.sign, pair.k, details=[float(m) for m in margins])


def weight_admissible_on_domains(domains, weight, lam=1.0):
    """Every nodal domain holds a point where ``sign(lam) m > 0``."""
    flags = []
    for d in domains:
        if d.weight_admissible is None:
            samples = np.sign(lam) * weight.evaluate(np.linspace(d.a, d.b, DOMAIN_SAMPLES + 2)[1:-1])
            flags.append(bool(np.max(samples) > 0.0))
        else:
            flags.append(bool(d.weight_admissible))
    return Check("weight_admissible_on_domains", all(flags), float(sum(flags)), float(len(flags)), "+" if lam > 0 else "-", len(domains), details=flags)


def _rescaled_seed(pair, trace, a, b):
    # u~(y) = c u(a + l y) with u~'(0) = 1, v~ = phi_p(c l^2) v
    length = b - a
    state = trace.state_at(a) if a > 0.0 else None
    du = trace.du0 if state is None else state.du
    dv = trace.beta if state is None else state.dv
    c = 1.0 / (length * du)
    lam = abs(pair.lam) * length ** (2.0 * pair.p)
    beta = phi_p(c, pair.p) * length ** (2.0 * pair.p - 1.0) * dv
    return lam, beta


def equi_eigenvalue_partition_check(pair, domains, weight, cfg=None, engine="shooting", n=None):
    """Compare ``|lam|`` with the principal eigenvalue of every nodal domain.

    The restriction of ``sign(lam) m`` to a domain ``[a, b]`` is rescaled to
    [0, 1], solved there, and mapped back with ``lam = lam~ / (b - a)^(2p)``.

    Parameters
    ----------
    pair : :class:`compas_pbiharmonic.results.Eigenpair`
    domains : list[:class:`NodalDomain`]
    weight : :class:`compas_pbiharmonic.model.weights._Weight`
        The weight of the original problem.
    cfg : :class:`compas_pbiharmonic.model.ShootConfig`, optional
    engine : str, optional
        ``"shooting"`` or ``"variational"``.
    n : int, optional
        Grid of the variational engine.

    Returns
    -------
    :class:`compas_pbiharmonic.postprocess.Check`
        Advisory; ``details`` holds one relative deviation (or error code) per domain.

    """
    cfg = cfg or ShootConfig()
    signed = weight if pair.lam > 0 else weight.negated()
    trace = retrace(pair, weight, cfg) if engine == "shooting" else None
    deviations = []
    for d in domains:
        try:
            if engine == "shooting":
                lam0, beta0 = _rescaled_seed(pair, trace, d.a, d.b)
                sub = newton_solve(lam0, beta0, signed.restricted(d.a, d.b), pair.p, cfg, resample_n=99)
                if sub.k != 1:
                    deviations.append("BranchJump")
                    continue
                lam = sub.lam / d.length ** (2.0 * pair.p)
            elif engine == "variational":
                lam = scaled_lambda1(signed, d.a, d.b, pair.p, n or 199)
            else:
                raise ValueError("Unknown engine {!r}".format(engine))
        except (NoConvergenceError, SingularJacobianError, IntegrationOverflowError) as e:
            deviations.append(e.code)
            continue
        deviations.append(abs(lam - abs(pair.lam)) / abs(pair.lam))
    numeric = [d for d in deviations if isinstance(d, float)]
    worst = max(numeric) if len(numeric) == len(deviations) else float("inf")
    return Check("equi_partition", worst <= PARTITION_TOL, worst, PARTITION_TOL, pair.sign, pair.k, advisory=True, details=deviations)
