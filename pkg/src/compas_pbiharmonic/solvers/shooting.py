"""
Shooting engine.

The Navier problem is integrated as the first-order system in
``(u, u', v, v')`` with ``v = phi_p(u'')``::

    u'' = phi_p'(v)        v'' = lam * m(x) * phi_p(u)

from ``u(0) = v(0) = 0``, ``u'(0) = 1``, ``v'(0) = beta``. The right-end
conditions ``u(1) = v(1) = 0`` are then solved by Newton iteration in
``(lam, beta)``.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math

import numpy as np
from scipy.integrate import trapezoid
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import bisect

import compas_pbiharmonic
from compas_pbiharmonic.base import SpectralData
from compas_pbiharmonic.errors import IntegrationOverflowError
from compas_pbiharmonic.errors import NoConvergenceError
from compas_pbiharmonic.errors import SingularJacobianError
from compas_pbiharmonic.model import GridFunction
from compas_pbiharmonic.model import ShootConfig
from compas_pbiharmonic.model import phi_p
from compas_pbiharmonic.model import phi_p_inv
from compas_pbiharmonic.model.exponent import _as_exponent
from compas_pbiharmonic.results import Eigenpair
from compas_pbiharmonic.utilities import warn

OVERFLOW_CAP = 1e12
MICRO_STEP_FRACTION = 0.01
HALVING_DEPTH = 3
V_SMALL = 1e-10
CONDITION_CAP = 1e12
BACKTRACKS = 10
ZERO_TOL = 1e-6


class ShootState(SpectralData):
    """State ``(x, u, u', v, v')`` of the shooting system.

    Examples
    --------
    >>> ShootState(0.5, 1.0, 0.0, 4.0, 0.0).u2(3.0)
    2.0

    """

    def __init__(self, x, u, du, v, dv, **kwargs):
        super(ShootState, self).__init__(**kwargs)
        self.x = float(x)
        self.u = float(u)
        self.du = float(du)
        self.v = float(v)
        self.dv = float(dv)
        if not all(math.isfinite(s) for s in (self.x, self.u, self.du, self.v, self.dv)):
            raise ValueError("A shooting state must be finite.")

    @property
    def __data__(self):
        return {"x": self.x, "u": self.u, "du": self.du, "v": self.v, "dv": self.dv}

    def u2(self, e):
        """``u''`` recovered from ``v``."""
        return phi_p_inv(self.v, e)


class ShootTrace(SpectralData):
    """Trajectory of one integration from x = 0 to x = 1.

    Attributes
    ----------
    x : :class:`numpy.ndarray`
        Sample abscissae, starting at 0 and ending at 1.
    y : :class:`numpy.ndarray`
        Samples of ``(u, u', v, v')``, one row per abscissa.
    m : :class:`numpy.ndarray`
        Weight at the sample abscissae.
    zero_crossings : list[float]
        Refined interior zeros of ``u``, strictly increasing.
    tangential_zeros : list[float]
        Sample abscissae where ``|u|`` has a near-zero local minimum without
        a sign change.
    miss_u, miss_v : float
        ``u(1)`` and ``v(1)``.

    """

    def __init__(self, lam, beta, exponent, x, y, m, du0=1.0, **kwargs):
        super(ShootTrace, self).__init__(**kwargs)
        self.lam = lam
        self.beta = beta
        self.exponent = exponent
        self.du0 = du0
        self.x = x
        self.y = y
        self.m = m
        self._u_spline = None
        self._v_spline = None
        self.zero_crossings = self._find_zeros()
        self.tangential_zeros = self._find_tangential_zeros()

    @property
    def __data__(self):
        return {
            "lambda": self.lam,
            "beta": self.beta,
            "p": self.exponent.p,
            "miss_u": self.miss_u,
            "miss_v": self.miss_v,
            "zero_crossings": self.zero_crossings,
        }

    @property
    def states(self):
        return [ShootState(x, *row) for x, row in zip(self.x, self.y)]

    @property
    def miss_u(self):
        return float(self.y[-1, 0])

    @property
    def miss_v(self):
        return float(self.y[-1, 2])

    @property
    def u_scale(self):
        return float(np.max(np.abs(self.y[:, 0])))

    @property
    def v_scale(self):
        return float(np.max(np.abs(self.y[:, 2])))

    @property
    def residual(self):
        """Right-end miss normalised by the trajectory magnitudes."""
        return max(abs(self.miss_u) / (self.u_scale or 1.0), abs(self.miss_v) / (self.v_scale or 1.0))

    @property
    def u_spline(self):
        if self._u_spline is None:
            self._u_spline = CubicHermiteSpline(self.x, self.y[:, 0], self.y[:, 1])
        return self._u_spline

    @property
    def v_spline(self):
        if self._v_spline is None:
            self._v_spline = CubicHermiteSpline(self.x, self.y[:, 2], self.y[:, 3])
        return self._v_spline

    def state_at(self, x):
        """Interpolated state at ``x``."""
        u = self.u_spline
        v = self.v_spline
        return ShootState(x, u(x), u(x, 1), v(x), v(x, 1))

    def _find_zeros(self):
        u = self.y[:, 0]
        zeros = []
        # the first sample is the exact boundary zero, the last interval holds the right-end miss
        for i in range(1, len(u) - 2):
            if u[i] != 0.0 and u[i] * u[i + 1] <= 0.0:
                if u[i + 1] == 0.0:
                    zeros.append(float(self.x[i + 1]))
                else:
                    zeros.append(float(bisect(self.u_spline, self.x[i], self.x[i + 1], xtol=1e-15, maxiter=60, disp=False)))
        return sorted(set(zeros))

    def _find_tangential_zeros(self, tol=1e-8):
        u = np.abs(self.y[:, 0])
        scale = self.u_scale or 1.0
        found = []
        for i in range(2, len(u) - 2):
            if u[i] < tol * scale and u[i] <= u[i - 1] and u[i] <= u[i + 1] and self.y[i - 1, 0] * self.y[i + 1, 0] > 0:
                found.append(float(self.x[i]))
        return found

    def weighted_integral(self, sign=1.0):
        """``int sign * m |u|^p`` by the trapezoidal rule on the samples."""
        return float(trapezoid(sign * self.m * np.abs(self.y[:, 0]) ** self.exponent.p, self.x))


def system_rhs(state, lam, weight, e):
    """Right-hand side of the shooting system.

    Parameters
    ----------
    state : :class:`ShootState`
    lam : float
    weight : :class:`compas_pbiharmonic.model.weights._Weight`
    e : :class:`compas_pbiharmonic.model.Exponent` | float

    Returns
    -------
    tuple
        ``(u', u'', v', v'')``.

    Examples
    --------
    >>> from compas_pbiharmonic.model import ConstantWeight
    >>> system_rhs(ShootState(0.5, 1.0, 0.0, 1.0, 0.0), 2.0, ConstantWeight(1.0), 2.0)
    (0.0, 1.0, 0.0, 2.0)

    """
    e = _as_exponent(e)
    return (state.du, phi_p_inv(state.v, e), state.dv, lam * weight.evaluate(state.x) * phi_p(state.u, e))


def _integrator(lam, q, r, refine, m_at):
    def pw(s, a):
        return math.copysign(abs(s) ** a, s)

    def rk4(y, dx, m0, mh, m1):
        u, du, v, dv = y
        k1 = (du, pw(v, r), dv, lam * m0 * pw(u, q))
        h2 = 0.5 * dx
        a = (u + h2 * k1[0], du + h2 * k1[1], v + h2 * k1[2], dv + h2 * k1[3])
        k2 = (a[1], pw(a[2], r), a[3], lam * mh * pw(a[0], q))
        b = (u + h2 * k2[0], du + h2 * k2[1], v + h2 * k2[2], dv + h2 * k2[3])
        k3 = (b[1], pw(b[2], r), b[3], lam * mh * pw(b[0], q))
        c = (u + dx * k3[0], du + dx * k3[1], v + dx * k3[2], dv + dx * k3[3])
        k4 = (c[1], pw(c[2], r), c[3], lam * m1 * pw(c[0], q))
        s = dx / 6.0
        return tuple(y[i] + s * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) for i in range(4))

    def advance(x, y, dx, m0, mh, m1, depth=0):
        y1 = rk4(y, dx, m0, mh, m1)
        if refine and depth < HALVING_DEPTH and (y[2] * y1[2] < 0.0 or abs(y1[2]) < V_SMALL):
            half = 0.5 * dx
            ym = advance(x, y, half, m0, m_at(x + 0.5 * half), mh, depth + 1)
            return advance(x + half, ym, half, mh, m_at(x + 1.5 * half), m1, depth + 1)
        return y1

    return advance


def integrate(lam, beta, weight, e, cfg=None, du0=1.0):
    """Integrate the shooting system from x = 0 to x = 1.

    The degenerate corner ``u = v = 0`` is left with one micro-step of size
    ``h / 100`` along the leading-order expansion of the solution, after which
    ``step_count`` fixed RK4 steps cover the rest of the interval. For
    ``p > 2`` a step is recursively halved where ``v`` crosses zero.

    Parameters
    ----------
    lam : float
        The spectral parameter, nonzero.
    beta : float
        ``v'(0)``.
    weight : :class:`compas_pbiharmonic.model.weights._Weight`
    e : :class:`compas_pbiharmonic.model.Exponent` | float
    cfg : :class:`compas_pbiharmonic.model.ShootConfig`, optional
    du0 : float, optional
        ``u'(0)``, by default 1.

    Returns
    -------
    :class:`ShootTrace`

    Raises
    ------
    :class:`compas_pbiharmonic.errors.IntegrationOverflowError`
        If the trajectory leaves the magnitude cap.

    """
    e = _as_exponent(e)
    cfg = cfg or ShootConfig()
    lam = float(lam)
    beta = float(beta)
    if lam == 0.0:
        raise ValueError("0 is not an eigenvalue.")
    if not math.isfinite(beta) or not math.isfinite(lam):
        raise ValueError("The shooting parameters must be finite.")

    p, pp = e.p, e.p_prime
    n = cfg.step_count
    x0 = MICRO_STEP_FRACTION / n
    dx = (1.0 - x0) / n
    nodes = x0 + dx * np.arange(n + 1)
    nodes[-1] = 1.0
    m_nodes = weight._evaluate(np.clip(nodes, 0.0, 1.0))
    m_mid = weight._evaluate(np.clip(nodes[:-1] + 0.5 * dx, 0.0, 1.0))
    m0 = float(weight._evaluate(np.zeros(1))[0])

    def m_at(x):
        return float(weight._evaluate(np.array([min(max(x, 0.0), 1.0)]))[0])

    # leading-order expansion: u'' ~ phi_p'(beta x), v'' ~ lam m(0) phi_p(du0 x)
    c_u = phi_p_inv(beta, e)
    c_v = lam * m0 * phi_p(du0, e)
    y = (
        du0 * x0 + c_u * x0 ** (pp + 1.0) / (pp * (pp + 1.0)),
        du0 + c_u * x0**pp / pp,
        beta * x0 + c_v * x0 ** (p + 1.0) / (p * (p + 1.0)),
        beta + c_v * x0**p / p,
    )

    advance = _integrator(lam, p - 1.0, pp - 1.0, p > 2.0, m_at)
    ys = np.empty((n + 2, 4))
    ys[0] = (0.0, du0, 0.0, beta)
    ys[1] = y
    for j in range(n):
        try:
            y = advance(nodes[j], y, dx, m_nodes[j], m_mid[j], m_nodes[j + 1])
        except OverflowError:
            y = (math.inf,) * 4
        if not (abs(y[0]) < OVERFLOW_CAP and abs(y[1]) < OVERFLOW_CAP and abs(y[2]) < OVERFLOW_CAP and abs(y[3]) < OVERFLOW_CAP):
            raise IntegrationOverflowError("The trajectory left the cap {:g} at x={:.6f} (lam={!r}, beta={!r})".format(OVERFLOW_CAP, nodes[j + 1], lam, beta))
        ys[j + 2] = y

    xs = np.concatenate(([0.0], nodes))
    ms = np.concatenate(([m0], m_nodes))
    return ShootTrace(lam, beta, e, xs, ys, ms, du0=du0)


def miss_map(lam, beta, weight, e, cfg=None, du0=1.0):
    """Right-end residuals ``(u(1), v(1))`` of one integration."""
    trace = integrate(lam, beta, weight, e, cfg, du0=du0)
    return trace.miss_u, trace.miss_v


def classify_zeros(trace, tol=ZERO_TOL):
    """Classify the interior zeros of a converged trajectory.

    A zero is generalized simple when ``u'' = 0`` there together with
    ``u' != 0`` or ``v' != 0``. Both conditions are reported separately:
    ``transversal`` (``u'`` or ``v'`` nonzero) and ``navier`` (``v``, hence
    ``u''``, vanishes). All magnitudes are relative to the maximum of the
    quantity along the trajectory.

    Parameters
    ----------
    trace : :class:`ShootTrace`
    tol : float, optional
        Relative threshold.

    Returns
    -------
    list[dict]
        One record per zero with the keys ``location``, ``generalized_simple``,
        ``transversal``, ``navier``, ``du``, ``v``, ``dv``.

    """
    scale_du = float(np.max(np.abs(trace.y[:, 1]))) or 1.0
    scale_v = trace.v_scale or 1.0
    scale_dv = float(np.max(np.abs(trace.y[:, 3]))) or 1.0
    records = []
    for z in trace.zero_crossings:
        s = trace.state_at(z)
        du, v, dv = abs(s.du) / scale_du, abs(s.v) / scale_v, abs(s.dv) / scale_dv
        transversal = du > tol or dv > tol
        navier = v < tol
        records.append(
            {
                "location": z,
                "generalized_simple": bool(transversal and navier),
                "transversal": bool(transversal),
                "navier": bool(navier),
                "du": du,
                "v": v,
                "dv": dv,
            }
        )
    return records


def _jacobian(trace, lam, beta, weight, e, cfg):
    d_lam = cfg.fd_step * max(1.0, abs(lam))
    d_beta = cfg.fd_step * max(1.0, abs(beta))
    t_lam = integrate(lam + d_lam, beta, weight, e, cfg)
    t_beta = integrate(lam, beta + d_beta, weight, e, cfg)
    return np.array(
        [
            [(t_lam.miss_u - trace.miss_u) / d_lam, (t_beta.miss_u - trace.miss_u) / d_beta],
            [(t_lam.miss_v - trace.miss_v) / d_lam, (t_beta.miss_v - trace.miss_v) / d_beta],
        ]
    )


def _solve_miss(lam, beta, weight, e, cfg):
    """Newton iteration on the miss map; returns the converged trace and the iteration count."""
    trace = integrate(lam, beta, weight, e, cfg)
    tol = cfg.newton_tol
    for iteration in range(cfg.newton_max_iter + 1):
        if trace.residual < tol:
            return trace, iteration
        if iteration == cfg.newton_max_iter:
            break
        jac = _jacobian(trace, lam, beta, weight, e, cfg)
        rows = np.array([1.0 / (trace.u_scale or 1.0), 1.0 / (trace.v_scale or 1.0)])
        cols = np.array([max(1.0, abs(lam)), max(1.0, abs(beta))])
        scaled = jac * rows[:, None] * cols[None, :]
        if not np.all(np.isfinite(scaled)) or np.linalg.cond(scaled) > CONDITION_CAP:
            raise SingularJacobianError("The Jacobian of the miss map is singular at lam={!r}, beta={!r}".format(lam, beta))
        d_lam, d_beta = np.linalg.solve(jac, -np.array([trace.miss_u, trace.miss_v]))
        if abs(d_lam) < tol * max(1.0, abs(lam)) and abs(d_beta) < tol * max(1.0, abs(beta)):
            lam, beta = lam + d_lam, beta + d_beta
            return integrate(lam, beta, weight, e, cfg), iteration + 1
        t = cfg.damping
        accepted = None
        for _ in range(BACKTRACKS):
            try:
                trial = integrate(lam + t * d_lam, beta + t * d_beta, weight, e, cfg)
            except (IntegrationOverflowError, ValueError):
                t *= 0.5
                continue
            accepted = (lam + t * d_lam, beta + t * d_beta, trial)
            if trial.residual < trace.residual:
                break
            t *= 0.5
        if accepted is None:
            raise NoConvergenceError("No admissible Newton step from lam={!r}, beta={!r}".format(lam, beta))
        lam, beta, trace = accepted
    raise NoConvergenceError("Newton did not converge in {} iterations (lam={!r}, residual={:.3e})".format(cfg.newton_max_iter, lam, trace.residual))


def _pair_from_trace(trace, weight, cfg, iterations, resample_n=None, zero_tol=ZERO_TOL):
    e = trace.exponent
    resample_n = resample_n or compas_pbiharmonic.RESAMPLE_N
    sign = 1.0 if trace.lam > 0 else -1.0
    integral = trace.weighted_integral(sign)
    if integral > 0:
        c = integral ** (-1.0 / e.p)
        normalisation = "weighted"
    else:
        c = 1.0 / (trace.u_scale or 1.0)
        normalisation = "max"
        warn("int m|u|^p <= 0 for lam={!r}: max-norm normalisation used", trace.lam)
    cv = phi_p(c, e)
    nodes = np.arange(1, resample_n + 1) / (resample_n + 1.0)
    values = c * trace.u_spline(nodes)
    classes = classify_zeros(trace, zero_tol)
    if trace.tangential_zeros:
        warn("tangential zeros at {} for lam={!r}", trace.tangential_zeros, trace.lam)
    return Eigenpair(
        lam=trace.lam,
        k=len(trace.zero_crossings) + 1,
        p=e.p,
        eigenfunction=GridFunction(values),
        u_prime0=c * trace.du0,
        beta=cv * trace.beta,
        zeros=trace.zero_crossings,
        zero_classes=classes,
        tangential_zeros=trace.tangential_zeros,
        residuals={"miss_u": c * trace.miss_u, "miss_v": cv * trace.miss_v, "boundary": trace.residual},
        engine="shooting",
        normalisation=normalisation,
        iterations=iterations,
    )


def newton_solve(lam0, beta0, weight, e, cfg=None, resample_n=None):
    """Solve the right-end conditions by damped Newton iteration in ``(lam, beta)``.

    The Jacobian is a forward-difference approximation. The iteration stops
    when the normalised residual ``max(|u(1)| / max|u|, |v(1)| / max|v|)``
    falls below ``newton_tol``, or when the full Newton update is below
    ``newton_tol`` relative to ``(lam, beta)``.

    Parameters
    ----------
    lam0, beta0 : float
        Initial guess, ``beta0`` for the normalisation ``u'(0) = 1``.
    weight : :class:`compas_pbiharmonic.model.weights._Weight`
    e : :class:`compas_pbiharmonic.model.Exponent` | float
    cfg : :class:`compas_pbiharmonic.model.ShootConfig`, optional
    resample_n : int, optional
        Interior nodes of the reported eigenfunction.

    Returns
    -------
    :class:`compas_pbiharmonic.results.Eigenpair`

    Raises
    ------
    :class:`compas_pbiharmonic.errors.NoConvergenceError`
    :class:`compas_pbiharmonic.errors.SingularJacobianError`
    :class:`compas_pbiharmonic.errors.IntegrationOverflowError`

    """
    e = _as_exponent(e)
    cfg = cfg or ShootConfig()
    trace, iterations = _solve_miss(float(lam0), float(beta0), weight, e, cfg)
    return _pair_from_trace(trace, weight, cfg, iterations, resample_n)


def retrace(pair, weight, cfg=None):
    """Re-integrate the trajectory of a stored eigenpair."""
    return integrate(pair.lam, pair.shoot_beta, weight, pair.p, cfg)
