"""
Variational engine on the uniform finite-difference grid.

The discrete operator is ``L(u) = D phi_p(D u)`` with ``D`` the second
difference with zero boundary values, so that ``D D`` carries the Navier
conditions. ``L`` is inverted exactly by two banded solves with ``D``, which
gives the metric in which the projected gradients below are taken.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np
from scipy.linalg import cho_solve_banded
from scipy.linalg import cholesky_banded
from scipy.linalg import eigh
from scipy.optimize import bisect

import compas_pbiharmonic
from compas_pbiharmonic.base import SpectralData
from compas_pbiharmonic.errors import BracketFailureError
from compas_pbiharmonic.errors import DegenerateWeightError
from compas_pbiharmonic.errors import GridTooSmallError
from compas_pbiharmonic.errors import InfeasibleStartError
from compas_pbiharmonic.model import Exponent
from compas_pbiharmonic.model import GridFunction
from compas_pbiharmonic.model import operator_pairing
from compas_pbiharmonic.model import phi_p
from compas_pbiharmonic.model import phi_p_inv
from compas_pbiharmonic.model import second_difference
from compas_pbiharmonic.model.exponent import _as_exponent
from compas_pbiharmonic.utilities import timer
from compas_pbiharmonic.utilities import warn

SPURIOUS_CAP = 1e10
DEGENERATE_TOL = 1e-14
ARMIJO_C = 1e-4
ARMIJO_FACTOR = 0.5
ARMIJO_TRIALS = 40
STALL_WINDOW = 50
STALL_TOL = 1e-12
MAX_ITER = 20000
BRACKET_DOUBLINGS = 60


class DiscreteProblem(SpectralData):
    """The eigenvalue problem on the grid with ``n`` interior nodes.

    Parameters
    ----------
    n : int
        Interior nodes, at least 7.
    weight : :class:`compas_pbiharmonic.model.weights._Weight`
        The weight, sampled at the nodes.
    e : :class:`compas_pbiharmonic.model.Exponent` | float
        The exponent.

    Attributes
    ----------
    h : float
        Grid spacing.
    m : :class:`compas_pbiharmonic.model.WeightSamples`
        The weight samples.

    """

    def __init__(self, n, weight, e, **kwargs):
        super(DiscreteProblem, self).__init__(**kwargs)
        n = int(n)
        if n < 7:
            raise GridTooSmallError("The discrete engine needs at least 7 interior nodes, got {}".format(n))
        self.n = n
        self.h = 1.0 / (n + 1)
        self.weight = weight
        self.exponent = _as_exponent(e)
        self.m = weight.sample(n)
        # upper banded form of -h^2 D = tridiag(-1, 2, -1)
        band = np.zeros((2, n))
        band[0, 1:] = -1.0
        band[1, :] = 2.0
        self._chol = cholesky_banded(band)

    @property
    def __data__(self):
        return {"n": self.n, "weight": self.weight.to_config(), "p": self.exponent.p}

    @classmethod
    def from_problem(cls, problem, n=None):
        return cls(n or problem.grid_n, problem.weight, problem.exponent)

    @property
    def p(self):
        return self.exponent.p

    @property
    def nodes(self):
        return self.m.nodes

    # ==========================================================================
    # operators
    # ==========================================================================

    def d2(self, values):
        return second_difference(values, self.h)

    def solve_d2(self, values):
        """``D^-1 f`` with zero boundary values."""
        return -self.h * self.h * cho_solve_banded((self._chol, False), values)

    def operator(self, values):
        """``L(u) = D phi_p(D u)``."""
        return self.d2(phi_p(self.d2(values), self.exponent))

    def inverse_operator(self, values):
        """``L^-1(f) = D^-1 phi_p'(D^-1 f)``."""
        return self.solve_d2(phi_p_inv(self.solve_d2(values), self.exponent))

    def stiffness_matrix(self):
        """Dense ``K = D D``, the fourth difference with Navier conditions."""
        n = self.n
        d = (np.diag(-2.0 * np.ones(n)) + np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)) / (self.h * self.h)
        return d @ d

    # ==========================================================================
    # discrete functionals, without the 1/p factor
    # ==========================================================================

    def bending(self, values):
        return float(np.sum(np.abs(self.d2(values)) ** self.p) * self.h)

    def weighted(self, values):
        return float(np.sum(self.m.values * np.abs(values) ** self.p) * self.h)

    def norm_p(self, values):
        return float(np.sum(np.abs(values) ** self.p) * self.h)

    def gradient_a(self, values):
        """Gradient of ``(1/p) sum |D2 u|^p h``."""
        return self.h * self.operator(values)

    def gradient_b(self, values):
        """Gradient of ``(1/p) sum m |u|^p h``."""
        return self.h * self.m.values * phi_p(values, self.exponent)

    def default_start(self):
        """``x (1 - x) m+``, feasible for every admissible weight."""
        x = self.nodes
        start = x * (1.0 - x) * np.maximum(self.m.values, 0.0)
        if not np.any(start > 0):
            raise InfeasibleStartError("The weight is nowhere positive on the grid.")
        return GridFunction(start)


class Mu1Point(SpectralData):
    """One point of the curve ``lam -> mu_1(lam)``.

    Parameters
    ----------
    lam : float
    mu1 : float
    minimizer : :class:`compas_pbiharmonic.model.GridFunction`
        Normalised to ``sum |u|^p h = 1`` and positive.
    stalled : bool, optional
        The minimisation hit its iteration cap.
    iterations : int, optional

    """

    def __init__(self, lam, mu1, minimizer, stalled=False, iterations=0, **kwargs):
        super(Mu1Point, self).__init__(**kwargs)
        self.lam = float(lam)
        self.mu1 = float(mu1)
        self.minimizer = minimizer
        self.stalled = bool(stalled)
        self.iterations = int(iterations)

    @property
    def __data__(self):
        return {"lambda": self.lam, "mu1": self.mu1, "stalled": self.stalled, "iterations": self.iterations}


class VariationalResult(SpectralData):
    """Outcome of :func:`projected_gradient_lambda1`."""

    def __init__(self, lam, minimizer, stalled=False, iterations=0, **kwargs):
        super(VariationalResult, self).__init__(**kwargs)
        self.lam = float(lam)
        self.minimizer = minimizer
        self.stalled = bool(stalled)
        self.iterations = int(iterations)

    @property
    def __data__(self):
        return {"lambda": self.lam, "stalled": self.stalled, "iterations": self.iterations, "minimizer": self.minimizer.__data__["values"]}

    def __iter__(self):
        return iter((self.lam, self.minimizer))


class ProbeReport(SpectralData):
    """Outcome of :func:`discrete_monotonicity_probe`."""

    def __init__(self, trials, min_pairing, seed, augmented=False, **kwargs):
        super(ProbeReport, self).__init__(**kwargs)
        self.trials = int(trials)
        self.min_pairing = float(min_pairing)
        self.seed = seed
        self.augmented = augmented

    @property
    def passed(self):
        return self.min_pairing > 0.0

    @property
    def __data__(self):
        return {"trials": self.trials, "min_pairing": self.min_pairing, "seed": self.seed, "augmented": self.augmented, "passed": self.passed}


# ==============================================================================
# p = 2 oracle
# ==============================================================================


def _sign_normalised(vector):
    big = np.abs(vector) > 1e-12 * np.max(np.abs(vector))
    first = vector[np.argmax(big)]
    return vector if first > 0 else -vector


@timer(message="Dense p=2 oracle solved in")
def oracle_p2(prob):
    """Dense generalized eigensolve of ``K u = lam M u`` at p = 2.

    Parameters
    ----------
    prob : :class:`DiscreteProblem`
        A problem with p = 2 exactly.

    Returns
    -------
    tuple[list, list]
        ``(plus, minus)``: lists of ``(lam, GridFunction)``, positive
        eigenvalues ascending and negative eigenvalues descending. Every
        eigenvector has a positive first node value.

    Raises
    ------
    :class:`compas_pbiharmonic.errors.DegenerateWeightError`
        If all the weight samples vanish.

    """
    if prob.p != 2.0:
        raise ValueError("The dense oracle is linear: p must be 2, got {!r}".format(prob.p))
    m = prob.m.values
    if np.all(np.abs(m) < DEGENERATE_TOL):
        raise DegenerateWeightError("All weight samples are below {:g} in magnitude.".format(DEGENERATE_TOL))
    # M u = sigma K u with K positive definite, sigma = 1 / lam
    sigma, vectors = eigh(np.diag(m), prob.stiffness_matrix())
    plus, minus = [], []
    for s, vector in zip(sigma, vectors.T):
        if abs(s) * SPURIOUS_CAP <= 1.0:
            continue
        pair = (1.0 / s, GridFunction(_sign_normalised(vector)))
        (plus if s > 0 else minus).append(pair)
    plus.sort(key=lambda pair: pair[0])
    minus.sort(key=lambda pair: -pair[0])
    return plus, minus


# ==============================================================================
# projected gradients
# ==============================================================================


def _descend(prob, values, objective, direction, normalise, max_iter):
    """Armijo descent in the metric of ``L`` followed by exact rescaling.

    ``objective`` maps node values to the quotient, ``direction`` returns
    ``(g, slope)``; ``normalise`` rescales onto the constraint surface.
    """
    q = objective(values)
    history = [q]
    for iteration in range(1, max_iter + 1):
        g, slope = direction(values, q)
        if not slope > 0.0:
            return values, q, False, iteration
        tau = 1.0
        for _ in range(ARMIJO_TRIALS):
            trial = normalise(values - tau * g)
            if trial is not None:
                q_trial = objective(trial)
                if q_trial <= q - ARMIJO_C * tau * slope:
                    break
            tau *= ARMIJO_FACTOR
        else:
            return values, q, False, iteration
        values, q = trial, q_trial
        history.append(q)
        if len(history) > STALL_WINDOW and history[-STALL_WINDOW - 1] - q < STALL_TOL * abs(q):
            return values, q, False, iteration
    return values, q, True, max_iter


@timer(message="Projected gradient finished in")
def projected_gradient_lambda1(prob, init=None, max_iter=MAX_ITER):
    """Minimise the Rayleigh quotient on ``{sum m |u|^p h = 1}``.

    The gradient direction is ``u - L^-1(R m phi_p(u))``, ``R`` being the
    current quotient; at p = 2 the unit step is one inverse iteration.
    Steps are chosen by Armijo backtracking and followed by the exact
    rescaling onto the constraint.

    Parameters
    ----------
    prob : :class:`DiscreteProblem`
    init : :class:`compas_pbiharmonic.model.GridFunction`, optional
        Start with ``sum m |u|^p h > 0``; by default ``x (1 - x) m+``.
    max_iter : int, optional

    Returns
    -------
    :class:`VariationalResult`
        Unpacks as ``(lam, minimizer)``; the minimizer is positive.

    Raises
    ------
    :class:`compas_pbiharmonic.errors.InfeasibleStartError`

    """
    init = init if init is not None else prob.default_start()
    e = prob.exponent

    def normalise(values):
        b = prob.weighted(values)
        if not b > 0.0:
            return None
        return values * b ** (-1.0 / e.p)

    def objective(values):
        return prob.bending(values) / prob.weighted(values)

    def direction(values, q):
        target = prob.inverse_operator(q * prob.m.values * phi_p(values, e))
        g = values - target
        slope = e.p * prob.h * float(np.sum((prob.operator(values) - q * prob.m.values * phi_p(values, e)) * g)) / prob.weighted(values)
        return g, slope

    values = normalise(np.array(init.values, dtype=float))
    if values is None:
        raise InfeasibleStartError("The start has sum m|u|^p h <= 0.")
    values, q, stalled, iterations = _descend(prob, values, objective, direction, normalise, max_iter)
    if stalled:
        warn("projected gradient stalled after {} iterations at lam={!r}", iterations, q)
    return VariationalResult(q, GridFunction(_sign_normalised(values)), stalled, iterations)


def _mu1_point(prob, lam, init, max_iter=MAX_ITER):
    e = prob.exponent

    def normalise(values):
        s = prob.norm_p(values)
        if not s > 0.0:
            return None
        return values * s ** (-1.0 / e.p)

    def objective(values):
        return (prob.bending(values) - lam * prob.weighted(values)) / prob.norm_p(values)

    def direction(values, q):
        coefficient = lam * prob.m.values + q
        g = values - prob.inverse_operator(coefficient * phi_p(values, e))
        slope = e.p * prob.h * float(np.sum((prob.operator(values) - coefficient * phi_p(values, e)) * g)) / prob.norm_p(values)
        return g, slope

    values = normalise(np.abs(np.array(init.values, dtype=float)))
    values, q, stalled, iterations = _descend(prob, values, objective, direction, normalise, max_iter)
    if stalled:
        warn("mu_1 minimisation stalled at lam={!r}", lam)
    return Mu1Point(lam, q, GridFunction(_sign_normalised(values)), stalled, iterations)


@timer(message="mu_1 curve computed in")
def mu1_curve(prob, lambdas, init=None):
    """Sample ``mu_1(lam) = min (sum |D2 u|^p - lam sum m |u|^p) h`` on
    ``{sum |u|^p h = 1}``.

    Each point warm-starts from the minimizer of the previous one.

    Parameters
    ----------
    prob : :class:`DiscreteProblem`
    lambdas : list[float]
    init : :class:`compas_pbiharmonic.model.GridFunction`, optional

    Returns
    -------
    list[:class:`Mu1Point`]

    """
    x = prob.nodes
    current = init if init is not None else GridFunction(x * (1.0 - x))
    points = []
    for lam in lambdas:
        lam = float(lam)
        if not np.isfinite(lam):
            raise ValueError("mu_1 needs finite lambdas, got {!r}".format(lam))
        point = _mu1_point(prob, lam, current)
        points.append(point)
        current = point.minimizer
    return points


def principal_via_mu1(prob, rtol=1e-10):
    """The principal eigenvalue as the zero of ``lam -> mu_1(lam)``.

    ``mu_1(0) > 0``; the upper end of the bracket starts at ``2 / max|m|``
    and doubles until ``mu_1`` is negative, then the bracket is bisected.

    Raises
    ------
    :class:`compas_pbiharmonic.errors.BracketFailureError`
        If ``mu_1`` never becomes negative.

    """
    x = prob.nodes
    state = {"init": GridFunction(x * (1.0 - x))}

    def mu1(lam):
        point = _mu1_point(prob, lam, state["init"])
        state["init"] = point.minimizer
        return point.mu1

    lo = 0.0
    if not mu1(lo) > 0.0:
        raise BracketFailureError("mu_1(0) is not positive.")
    hi = 2.0 / float(np.max(np.abs(prob.m.values)))
    for _ in range(BRACKET_DOUBLINGS):
        if mu1(hi) < 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise BracketFailureError("mu_1 stays nonnegative up to lam={!r}".format(hi))
    return float(bisect(mu1, lo, hi, rtol=rtol, maxiter=200))


def discrete_monotonicity_probe(prob, trials, seed=None, potential=None):
    """Probe the strict monotonicity of ``L`` on random pairs of grid functions.

    Parameters
    ----------
    prob : :class:`DiscreteProblem`
    trials : int
        Number of random pairs, at least 1.
    seed : int, optional
        Seed of the random generator, by default the ``SEED`` knob.
    potential : :class:`compas_pbiharmonic.model.weights._Weight`, optional
        Nonnegative ``a(x)``; the operator of ``A(u) + (1/p) int a |u|^p``
        is probed instead.

    Returns
    -------
    :class:`ProbeReport`

    """
    if trials < 1:
        raise ValueError("The probe needs at least one trial.")
    seed = compas_pbiharmonic.SEED if seed is None else seed
    samples = None
    if potential is not None:
        samples = potential.sample(prob.n)
        if np.min(samples.values) < 0.0:
            raise ValueError("The potential must be nonnegative.")
    rng = np.random.default_rng(seed)
    smallest = np.inf
    for _ in range(trials):
        u = GridFunction(rng.standard_normal(prob.n))
        w = GridFunction(rng.standard_normal(prob.n))
        smallest = min(smallest, operator_pairing(u, w, prob.exponent, samples))
    return ProbeReport(trials, smallest, seed, augmented=potential is not None)


def scaled_lambda1(weight, a, b, p, n):
    """Principal eigenvalue on ``[a, b]`` by the variational engine, from the
    problem rescaled to [0, 1]: ``lam = lam~ / (b - a)^(2p)``."""
    prob = DiscreteProblem(n, weight.restricted(a, b), Exponent(p))
    return projected_gradient_lambda1(prob).lam / (b - a) ** (2.0 * p)
