from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math

import numpy as np
from compas.data import json_dumps
from compas.data import json_loads
from numpy.polynomial import polynomial as P

from compas_pbiharmonic.base import SpectralData
from compas_pbiharmonic.errors import DiscontinuousWeightError
from compas_pbiharmonic.errors import NotAdmissibleError
from compas_pbiharmonic.errors import OutOfDomainError
from compas_pbiharmonic.errors import SchemaError

from .grids import GridFunction

ADMISSIBILITY_THRESHOLD = 1e-10
ADMISSIBILITY_POINTS = 10000
CONTINUITY_TOL = 1e-12


class _Weight(SpectralData):
    """Basic continuous weight function on [0, 1].

    Subclasses implement ``_evaluate``, a vectorised evaluation that does not
    check the domain, and ``to_config``, the schema fragment that rebuilds the
    weight through :func:`parse_weight`.

    Notes
    -----
    Weights are immutable after construction and evaluation is pure.

    """

    kind = None

    def __init__(self, **kwargs):
        super(_Weight, self).__init__(**kwargs)

    @property
    def __data__(self):
        return self.to_config()

    @classmethod
    def __from_data__(cls, data):
        return parse_weight(data, check_admissible=False)

    def to_config(self):
        raise NotImplementedError

    def _evaluate(self, x):
        raise NotImplementedError

    def evaluate(self, x):
        """Evaluate the weight.

        Parameters
        ----------
        x : float | array_like
            Abscissa(e) in [0, 1].

        Returns
        -------
        float | :class:`numpy.ndarray`

        Raises
        ------
        :class:`compas_pbiharmonic.errors.OutOfDomainError`
            If any abscissa lies outside [0, 1].

        """
        scalar = np.isscalar(x)
        xs = np.asarray(x, dtype=float)
        if np.any(~np.isfinite(xs)) or np.any(xs < 0.0) or np.any(xs > 1.0):
            raise OutOfDomainError("The weight is defined on [0, 1] only, got {!r}".format(x))
        values = self._evaluate(np.atleast_1d(xs))
        return float(values[0]) if scalar else values.reshape(xs.shape)

    def __call__(self, x):
        return self.evaluate(x)

    def sample(self, n):
        """Sample the weight at the interior nodes of the grid with ``n`` nodes.

        Returns
        -------
        :class:`WeightSamples`

        """
        return WeightSamples(self, n)

    def is_admissible(self, threshold=ADMISSIBILITY_THRESHOLD, points=ADMISSIBILITY_POINTS):
        """Numerical certificate that ``{m > 0}`` has positive measure."""
        return bool(np.max(self._evaluate(np.linspace(0.0, 1.0, points))) > threshold)

    def sup_norm(self, a=0.0, b=1.0, points=1000):
        """Dense-sampling estimate of ``max |m|`` on ``[a, b]``."""
        return float(np.max(np.abs(self._evaluate(np.linspace(a, b, points)))))

    def negated(self):
        return NegatedWeight(self)

    def shifted(self, c):
        return ShiftedWeight(self, c)

    def restricted(self, a, b):
        return RestrictedWeight(self, a, b)

    def __eq__(self, other):
        return isinstance(other, _Weight) and self.to_config() == other.to_config()

    def __hash__(self):
        return hash(json_dumps(self.to_config()))

    def __repr__(self):
        return "{}({})".format(self.__class__.__name__, ", ".join("{}={!r}".format(k, v) for k, v in self.to_config().items() if k != "kind"))


# ==============================================================================
# catalogue
# ==============================================================================


class ConstantWeight(_Weight):
    """Constant weight ``m(x) = c``.

    Parameters
    ----------
    c : float
        The constant value.

    """

    kind = "constant"

    def __init__(self, c=1.0, **kwargs):
        super(ConstantWeight, self).__init__(**kwargs)
        self._c = float(c)

    @property
    def c(self):
        return self._c

    def to_config(self):
        return {"kind": self.kind, "c": self._c}

    def _evaluate(self, x):
        return np.full(np.shape(x), self._c)

    def negated(self):
        return ConstantWeight(-self._c)

    def shifted(self, c):
        return ConstantWeight(self._c + c)

    def restricted(self, a, b):
        return ConstantWeight(self._c)


class CosineWeight(_Weight):
    """Cosine weight ``m(x) = cos(2 pi f x)``.

    Parameters
    ----------
    f : int
        The frequency, a positive integer.

    Examples
    --------
    >>> CosineWeight(1).evaluate(0.5)
    -1.0

    """

    kind = "cosine"

    def __init__(self, f=1, **kwargs):
        super(CosineWeight, self).__init__(**kwargs)
        self._f = int(f)

    @property
    def f(self):
        return self._f

    def to_config(self):
        return {"kind": self.kind, "f": self._f}

    def _evaluate(self, x):
        return np.cos(2.0 * math.pi * self._f * x)


class LinearShiftWeight(_Weight):
    """Linear weight ``m(x) = x - a`` with its root ``a`` in (0, 1).

    Parameters
    ----------
    a : float
        The root of the weight.

    """

    kind = "linear_shift"

    def __init__(self, a=0.5, **kwargs):
        super(LinearShiftWeight, self).__init__(**kwargs)
        self._a = float(a)

    @property
    def a(self):
        return self._a

    def to_config(self):
        return {"kind": self.kind, "a": self._a}

    def _evaluate(self, x):
        return x - self._a


class PiecewisePolynomialWeight(_Weight):
    """Continuous piecewise polynomial weight.

    Parameters
    ----------
    breakpoints : list[float]
        Strictly increasing abscissae from 0 to 1.
    coeffs : list[list[float]]
        Ascending-power coefficients in ``x`` of every segment.

    Raises
    ------
    :class:`compas_pbiharmonic.errors.DiscontinuousWeightError`
        If two adjacent segments disagree at their common breakpoint.

    """

    kind = "piecewise"

    def __init__(self, breakpoints, coeffs, **kwargs):
        super(PiecewisePolynomialWeight, self).__init__(**kwargs)
        self._breakpoints = [float(b) for b in breakpoints]
        self._coeffs = [[float(c) for c in segment] for segment in coeffs]
        if len(self._coeffs) != len(self._breakpoints) - 1:
            raise SchemaError("A piecewise weight needs one coefficient list per segment.")
        for i, x in enumerate(self._breakpoints[1:-1]):
            left = P.polyval(x, self._coeffs[i])
            right = P.polyval(x, self._coeffs[i + 1])
            if abs(left - right) > CONTINUITY_TOL * max(1.0, abs(left)):
                raise DiscontinuousWeightError("Segments {} and {} disagree at x={}: {} != {}".format(i, i + 1, x, left, right))

    @property
    def breakpoints(self):
        return list(self._breakpoints)

    @property
    def coeffs(self):
        return [list(c) for c in self._coeffs]

    def to_config(self):
        return {"kind": self.kind, "breakpoints": self.breakpoints, "coeffs": self.coeffs}

    def _evaluate(self, x):
        index = np.clip(np.searchsorted(self._breakpoints, x, side="right") - 1, 0, len(self._coeffs) - 1)
        values = np.empty(np.shape(x))
        for i, segment in enumerate(self._coeffs):
            mask = index == i
            values[mask] = P.polyval(x[mask], segment)
        return values


# ==============================================================================
# derived weights
# ==============================================================================


class NegatedWeight(_Weight):
    """The weight ``-m``, used for the negative spectrum."""

    kind = "negated"

    def __init__(self, weight, **kwargs):
        super(NegatedWeight, self).__init__(**kwargs)
        self._weight = weight

    @property
    def weight(self):
        return self._weight

    def to_config(self):
        return {"kind": self.kind, "weight": self._weight.to_config()}

    def _evaluate(self, x):
        return -self._weight._evaluate(x)

    def negated(self):
        return self._weight


class ShiftedWeight(_Weight):
    """The weight ``m + c``."""

    kind = "shifted"

    def __init__(self, weight, c, **kwargs):
        super(ShiftedWeight, self).__init__(**kwargs)
        self._weight = weight
        self._c = float(c)

    @property
    def weight(self):
        return self._weight

    @property
    def c(self):
        return self._c

    def to_config(self):
        return {"kind": self.kind, "weight": self._weight.to_config(), "c": self._c}

    def _evaluate(self, x):
        return self._weight._evaluate(x) + self._c


class RestrictedWeight(_Weight):
    """The weight ``m(a + (b - a) y)`` of the restriction of ``m`` to ``[a, b]``,
    rescaled to ``y`` in [0, 1].

    Parameters
    ----------
    weight : :class:`_Weight`
        The weight on [0, 1].
    a, b : float
        The subinterval, ``0 <= a < b <= 1``.

    """

    kind = "restricted"

    def __init__(self, weight, a, b, **kwargs):
        super(RestrictedWeight, self).__init__(**kwargs)
        a, b = float(a), float(b)
        if not 0.0 <= a < b <= 1.0:
            raise OutOfDomainError("Invalid subinterval [{}, {}] of [0, 1].".format(a, b))
        self._weight = weight
        self._a = a
        self._b = b

    @property
    def weight(self):
        return self._weight

    @property
    def a(self):
        return self._a

    @property
    def b(self):
        return self._b

    @property
    def length(self):
        return self._b - self._a

    def to_config(self):
        return {"kind": self.kind, "weight": self._weight.to_config(), "a": self._a, "b": self._b}

    def _evaluate(self, x):
        return self._weight._evaluate(np.clip(self._a + (self._b - self._a) * x, 0.0, 1.0))


class WeightSamples(GridFunction):
    """Samples ``m(x_i)`` of a weight at the interior grid nodes.

    Parameters
    ----------
    weight : :class:`_Weight`
        The generating weight.
    n : int
        Number of interior nodes.

    """

    def __init__(self, weight, n, **kwargs):
        n = int(n)
        x = np.arange(1, n + 1) / (n + 1.0)
        super(WeightSamples, self).__init__(weight._evaluate(x), **kwargs)
        self._weight = weight

    @property
    def weight(self):
        return self._weight

    @property
    def __data__(self):
        return {"weight": self._weight.to_config(), "n": self.n}


# ==============================================================================
# schema
# ==============================================================================


def _require(fragment, key):
    if key not in fragment:
        raise SchemaError("The '{}' weight needs the field '{}'.".format(fragment.get("kind"), key))
    return fragment[key]


def _real(value, key):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise SchemaError("The weight field '{}' must be a finite number, got {!r}".format(key, value))
    return float(value)


def _build(fragment):
    if not isinstance(fragment, dict):
        raise SchemaError("A weight must be a key-value block, got {!r}".format(fragment))
    kind = fragment.get("kind")
    if kind == "constant":
        return ConstantWeight(_real(_require(fragment, "c"), "c"))
    if kind == "cosine":
        f = _require(fragment, "f")
        if isinstance(f, bool) or not isinstance(f, int) or f < 1:
            raise SchemaError("The cosine frequency must be a positive integer, got {!r}".format(f))
        return CosineWeight(f)
    if kind == "linear_shift":
        a = _real(_require(fragment, "a"), "a")
        if not 0.0 < a < 1.0:
            raise SchemaError("The root of a linear_shift weight must lie in (0, 1), got {!r}".format(a))
        return LinearShiftWeight(a)
    if kind == "piecewise":
        breakpoints = _require(fragment, "breakpoints")
        coeffs = _require(fragment, "coeffs")
        if not isinstance(breakpoints, list) or len(breakpoints) < 2:
            raise SchemaError("The breakpoints must be a list of at least two abscissae.")
        breakpoints = [_real(b, "breakpoints") for b in breakpoints]
        if breakpoints[0] != 0.0 or breakpoints[-1] != 1.0 or any(b1 <= b0 for b0, b1 in zip(breakpoints, breakpoints[1:])):
            raise SchemaError("The breakpoints must increase strictly from 0 to 1, got {!r}".format(breakpoints))
        if not isinstance(coeffs, list) or not all(isinstance(c, list) and c for c in coeffs):
            raise SchemaError("The coefficients must be a list of non-empty lists.")
        coeffs = [[_real(c, "coeffs") for c in segment] for segment in coeffs]
        return PiecewisePolynomialWeight(breakpoints, coeffs)
    if kind == "negated":
        return NegatedWeight(_build(_require(fragment, "weight")))
    if kind == "shifted":
        return ShiftedWeight(_build(_require(fragment, "weight")), _real(_require(fragment, "c"), "c"))
    if kind == "restricted":
        a = _real(_require(fragment, "a"), "a")
        b = _real(_require(fragment, "b"), "b")
        if not 0.0 <= a < b <= 1.0:
            raise SchemaError("Invalid subinterval [{}, {}] of [0, 1].".format(a, b))
        return RestrictedWeight(_build(_require(fragment, "weight")), a, b)
    raise SchemaError("Unknown weight kind {!r}".format(kind))


def parse_weight(fragment, check_admissible=True):
    """Build a weight from its schema fragment.

    Parameters
    ----------
    fragment : dict | str
        The key-value block, or its JSON text.
    check_admissible : bool, optional
        Reject weights that are numerically nonpositive everywhere, by default True.

    Returns
    -------
    :class:`_Weight`

    Raises
    ------
    :class:`compas_pbiharmonic.errors.SchemaError`
    :class:`compas_pbiharmonic.errors.DiscontinuousWeightError`
    :class:`compas_pbiharmonic.errors.NotAdmissibleError`

    Examples
    --------
    >>> parse_weight({"kind": "cosine", "f": 1})
    CosineWeight(f=1)

    """
    if isinstance(fragment, str):
        try:
            fragment = json_loads(fragment)
        except ValueError as e:
            raise SchemaError("The weight is not valid JSON: {}".format(e))
    weight = _build(fragment)
    if check_admissible and not weight.is_admissible():
        raise NotAdmissibleError("The weight {!r} is not positive anywhere on [0, 1].".format(weight))
    return weight


def eval_weight(weight, x):
    """Pointwise value ``m(x)`` for ``x`` in [0, 1]."""
    return weight.evaluate(float(x))


def negate_weight(weight):
    """Return ``-m``.

    Raises
    ------
    :class:`compas_pbiharmonic.errors.NotAdmissibleError`
        If ``m >= 0`` everywhere: the negative spectrum is then empty.

    """
    negated = weight.negated()
    if not negated.is_admissible():
        raise NotAdmissibleError("The weight {!r} is nonnegative everywhere, the negative spectrum is empty.".format(weight))
    return negated
