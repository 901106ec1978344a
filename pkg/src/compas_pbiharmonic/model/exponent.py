from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math

import numpy as np

from compas_pbiharmonic.base import SpectralData


class Exponent(SpectralData):
    """The exponent p of the p-biharmonic operator and its conjugate.

    Parameters
    ----------
    p : float
        The exponent, strictly larger than 1.

    Attributes
    ----------
    p : float
        The exponent.
    p_prime : float
        The conjugate exponent ``p / (p - 1)``.

    Examples
    --------
    >>> e = Exponent(3.0)
    >>> e.p_prime
    1.5

    """

    def __init__(self, p, name=None, **kwargs):
        super(Exponent, self).__init__(name=name, **kwargs)
        p = float(p)
        if not math.isfinite(p) or p <= 1.0:
            raise ValueError("The exponent must be a finite number larger than 1, got {!r}".format(p))
        self._p = p
        self._p_prime = p / (p - 1.0)

    @property
    def __data__(self):
        return {"p": self._p}

    @property
    def p(self):
        return self._p

    @property
    def p_prime(self):
        return self._p_prime

    @property
    def conjugate(self):
        """The exponent p' as an :class:`Exponent`."""
        return Exponent(self._p_prime)

    def __eq__(self, other):
        return isinstance(other, Exponent) and other.p == self.p

    def __hash__(self):
        return hash(("Exponent", self._p))

    def __repr__(self):
        return "Exponent({!r})".format(self._p)


def _as_exponent(e):
    return e if isinstance(e, Exponent) else Exponent(e)


def _power(s, q):
    # |s|^q * sign(s), exactly s for q == 1
    if q == 1.0:
        return s
    return np.sign(s) * np.abs(s) ** q


def phi_p(s, e):
    """The odd power map ``|s|^(p-2) s``.

    Parameters
    ----------
    s : float | array_like
        The argument(s).
    e : :class:`Exponent` | float
        The exponent.

    Returns
    -------
    float | :class:`numpy.ndarray`
        Same shape as ``s``. The value at 0 is 0 for every p > 1.

    Examples
    --------
    >>> phi_p(2.0, 3.0)
    4.0
    >>> phi_p(0.0, 1.5)
    0.0

    """
    e = _as_exponent(e)
    if np.isscalar(s):
        s = float(s)
        if s == 0.0:
            return 0.0
        return math.copysign(abs(s) ** (e.p - 1.0), s)
    return _power(np.asarray(s, dtype=float), e.p - 1.0)


def phi_p_inv(s, e):
    """The inverse of :func:`phi_p`, that is ``phi_p`` for the conjugate exponent.

    Parameters
    ----------
    s : float | array_like
        The argument(s).
    e : :class:`Exponent` | float
        The exponent p (not its conjugate).

    Returns
    -------
    float | :class:`numpy.ndarray`

    Examples
    --------
    >>> phi_p_inv(4.0, 3.0)
    2.0

    """
    e = _as_exponent(e)
    if np.isscalar(s):
        s = float(s)
        if s == 0.0:
            return 0.0
        return math.copysign(abs(s) ** (e.p_prime - 1.0), s)
    return _power(np.asarray(s, dtype=float), e.p_prime - 1.0)
