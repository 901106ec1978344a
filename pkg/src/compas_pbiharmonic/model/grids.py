from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np

from compas_pbiharmonic.base import SpectralData
from compas_pbiharmonic.errors import GridMismatchError
from compas_pbiharmonic.errors import GridTooSmallError
from compas_pbiharmonic.errors import ZeroDenominatorError

from .exponent import _as_exponent
from .exponent import phi_p


class GridFunction(SpectralData):
    """Values of a function at the interior nodes of the uniform grid of [0, 1].

    The nodes are ``x_i = i * h`` for ``i = 1..n`` with ``h = 1 / (n + 1)``;
    the boundary values ``u(0) = u(1) = 0`` are implied.

    Parameters
    ----------
    values : array_like
        The node values, one per interior node.

    Attributes
    ----------
    n : int
        Number of interior nodes.
    h : float
        Grid spacing.
    values : :class:`numpy.ndarray`
        Read-only node values.
    nodes : :class:`numpy.ndarray`
        The node abscissae.

    Notes
    -----
    Grid functions are immutable: every operation returns a new object.

    Examples
    --------
    >>> u = GridFunction([1.0, 2.0, 1.0])
    >>> u.h
    0.25

    """

    def __init__(self, values, name=None, **kwargs):
        super(GridFunction, self).__init__(name=name, **kwargs)
        values = np.array(values, dtype=float).ravel()
        if values.size == 0:
            raise GridTooSmallError("A grid function needs at least one interior node.")
        if not np.all(np.isfinite(values)):
            raise ValueError("Grid function values must be finite.")
        values.setflags(write=False)
        self._values = values
        self._n = values.size
        self._h = 1.0 / (self._n + 1)

    @property
    def __data__(self):
        return {"values": [float(v) for v in self._values]}

    @classmethod
    def from_function(cls, func, n, **kwargs):
        """Sample a vectorised function at the interior nodes.

        Parameters
        ----------
        func : callable
            Function of the abscissae array.
        n : int
            Number of interior nodes.

        Returns
        -------
        :class:`GridFunction`

        """
        x = np.arange(1, n + 1) / (n + 1.0)
        return cls(func(x), **kwargs)

    @property
    def n(self):
        return self._n

    @property
    def h(self):
        return self._h

    @property
    def values(self):
        return self._values

    @property
    def nodes(self):
        return np.arange(1, self._n + 1) * self._h

    def scaled(self, factor):
        return GridFunction(factor * self._values)

    def sign_changes(self, rtol=1e-8):
        """Number of sign changes between node values.

        Values below ``rtol * max|u|`` in magnitude are skipped.

        Examples
        --------
        >>> GridFunction([1.0, -1.0, 1e-12, -2.0, 3.0]).sign_changes()
        2

        """
        big = self._values[np.abs(self._values) > rtol * np.max(np.abs(self._values))]
        return int(np.count_nonzero(np.signbit(big[1:]) != np.signbit(big[:-1])))

    def with_boundary(self):
        """Node values with the two boundary zeros prepended and appended."""
        return np.concatenate(([0.0], self._values, [0.0]))

    def __len__(self):
        return self._n


def second_difference(values, h):
    """Central second difference with zero boundary values.

    Parameters
    ----------
    values : :class:`numpy.ndarray`
        Node values at the interior nodes.
    h : float
        Grid spacing.

    Returns
    -------
    :class:`numpy.ndarray`

    """
    padded = np.concatenate(([0.0], np.asarray(values, dtype=float), [0.0]))
    return (padded[:-2] - 2.0 * padded[1:-1] + padded[2:]) / (h * h)


def _check_same_grid(u, m):
    if u.n != m.n:
        raise GridMismatchError("The weight is sampled on {} nodes, the function on {}.".format(m.n, u.n))


def energy_a(u, e):
    """Discrete bending energy ``(1/p) sum |D2 u|^p h``.

    Parameters
    ----------
    u : :class:`GridFunction`
    e : :class:`compas_pbiharmonic.model.Exponent` | float

    Returns
    -------
    float

    Raises
    ------
    :class:`compas_pbiharmonic.errors.GridTooSmallError`
        If the grid has less than 3 interior nodes.

    """
    e = _as_exponent(e)
    if u.n < 3:
        raise GridTooSmallError("energy_a needs at least 3 interior nodes, got {}".format(u.n))
    d2 = second_difference(u.values, u.h)
    return float(np.sum(np.abs(d2) ** e.p) * u.h / e.p)


def energy_b(u, m, e):
    """Discrete weighted energy ``(1/p) sum m |u|^p h``.

    Parameters
    ----------
    u : :class:`GridFunction`
    m : :class:`GridFunction`
        Weight samples on the same grid.
    e : :class:`compas_pbiharmonic.model.Exponent` | float

    Returns
    -------
    float
        The energy; its sign follows the weight.

    """
    e = _as_exponent(e)
    _check_same_grid(u, m)
    return float(np.sum(m.values * np.abs(u.values) ** e.p) * u.h / e.p)


def rayleigh(u, m, e, eps=1e-12):
    """Rayleigh quotient ``energy_a / energy_b``.

    Parameters
    ----------
    u : :class:`GridFunction`
    m : :class:`GridFunction`
        Weight samples on the same grid.
    e : :class:`compas_pbiharmonic.model.Exponent` | float
    eps : float, optional
        Relative threshold on ``|energy_b|``, measured against the energy
        with ``|m|`` in place of ``m``.

    Returns
    -------
    float

    Raises
    ------
    :class:`compas_pbiharmonic.errors.ZeroDenominatorError`
        If ``u`` is numerically m-orthogonal.

    """
    e = _as_exponent(e)
    b = energy_b(u, m, e)
    scale = float(np.sum(np.abs(m.values) * np.abs(u.values) ** e.p) * u.h / e.p)
    if scale == 0.0 or abs(b) < eps * scale:
        raise ZeroDenominatorError("The weighted energy vanishes: the function is m-orthogonal.")
    return energy_a(u, e) / b


def operator_pairing(u, w, e, potential=None):
    """Discrete pairing ``<L(u) - L(w), u - w>`` of the p-biharmonic operator.

    Parameters
    ----------
    u, w : :class:`GridFunction`
    e : :class:`compas_pbiharmonic.model.Exponent` | float
    potential : :class:`GridFunction`, optional
        Nonnegative samples ``a(x_i)``; when given, the operator of
        ``A(u) + (1/p) int a |u|^p`` is paired instead.

    Returns
    -------
    float

    """
    e = _as_exponent(e)
    _check_same_grid(u, w)
    du = second_difference(u.values, u.h)
    dw = second_difference(w.values, w.h)
    value = np.sum((phi_p(du, e) - phi_p(dw, e)) * (du - dw)) * u.h
    if potential is not None:
        _check_same_grid(u, potential)
        value += np.sum(potential.values * (phi_p(u.values, e) - phi_p(w.values, e)) * (u.values - w.values)) * u.h
    return float(value)
