from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math

from compas_pbiharmonic.errors import BranchJumpError
from compas_pbiharmonic.errors import IntegrationOverflowError
from compas_pbiharmonic.errors import NoConvergenceError
from compas_pbiharmonic.errors import SingularJacobianError
from compas_pbiharmonic.errors import StepUnderflowError
from compas_pbiharmonic.model import Exponent
from compas_pbiharmonic.model import ShootConfig
from compas_pbiharmonic.utilities import log
from compas_pbiharmonic.utilities import timer

from .shooting import newton_solve

MIN_STEP = 1e-4
MAX_STEP = 0.25
GROWTH = 1.5
EASY_ITERATIONS = 4


@timer(message="Continuation finished in")
def continue_in_p(pair, p_target, weight, cfg=None, step_init=0.05, resample_n=None, min_step=MIN_STEP, max_step=MAX_STEP, callback=None):
    """Follow an eigenpair from its exponent to ``p_target``.

    Every step predicts ``(lam, beta)`` by secant extrapolation in p and
    corrects with :func:`newton_solve`. A failed correction halves the step;
    an easy one lets it grow. The zero count certifies the branch at every
    accepted step.

    Parameters
    ----------
    pair : :class:`compas_pbiharmonic.results.Eigenpair`
        A converged shooting pair.
    p_target : float
        The exponent to reach, larger than 1.
    weight : :class:`compas_pbiharmonic.model.weights._Weight`
        The weight the pair belongs to.
    cfg : :class:`compas_pbiharmonic.model.ShootConfig`, optional
    step_init : float, optional
        First step in p.
    resample_n : int, optional
        Interior nodes of the reported eigenfunctions.
    min_step, max_step : float, optional
        Step bounds.
    callback : callable, optional
        Called with every accepted pair.

    Returns
    -------
    :class:`compas_pbiharmonic.results.Eigenpair`
        The pair at ``p_target``.

    Raises
    ------
    :class:`compas_pbiharmonic.errors.StepUnderflowError`
        If the step falls below ``min_step``; carries the last accepted p and pair.
    :class:`compas_pbiharmonic.errors.BranchJumpError`
        If the zero count changes.

    """
    cfg = cfg or ShootConfig()
    Exponent(p_target)
    if p_target == pair.p:
        return pair

    direction = 1.0 if p_target > pair.p else -1.0
    step = min(step_init, max_step)
    current = pair
    previous = None

    while current.p != p_target:
        dp = direction * min(step, abs(p_target - current.p))
        p_new = p_target if abs(p_target - current.p) <= step else current.p + dp
        lam0, beta0 = current.lam, current.shoot_beta
        if previous is not None:
            ratio = (p_new - current.p) / (current.p - previous.p)
            lam0 += ratio * (current.lam - previous.lam)
            beta0 += ratio * (current.shoot_beta - previous.shoot_beta)
        try:
            candidate = newton_solve(lam0, beta0, weight, Exponent(p_new), cfg, resample_n)
        except (NoConvergenceError, SingularJacobianError, IntegrationOverflowError) as e:
            step *= 0.5
            log("continuation p={:.6f} -> {:.6f} failed ({}), step halved to {:.2e}", current.p, p_new, e.code, step)
            if step < min_step:
                raise StepUnderflowError("Continuation stuck at p={!r} for k={}".format(current.p, pair.k), last_p=current.p, last_pair=current)
            continue
        if candidate.k != pair.k or math.copysign(1.0, candidate.lam) != math.copysign(1.0, pair.lam):
            raise BranchJumpError(
                "Zero count changed from {} to {} between p={!r} and p={!r}".format(pair.k - 1, candidate.k - 1, current.p, p_new), last_p=current.p, last_pair=current
            )
        previous, current = current, candidate
        if callback:
            callback(current)
        if candidate.iterations <= EASY_ITERATIONS:
            step = min(step * GROWTH, max_step)

    return current
