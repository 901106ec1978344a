from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math

import compas_pbiharmonic
from compas_pbiharmonic.base import SpectralData
from compas_pbiharmonic.errors import GridTooSmallError
from compas_pbiharmonic.errors import SchemaError

from .exponent import Exponent
from .exponent import _as_exponent
from .weights import _Weight
from .weights import parse_weight


class ShootConfig(SpectralData):
    """Settings of the shooting engine.

    Parameters
    ----------
    step_count : int, optional
        Number of fixed RK4 steps on [0, 1], at least 100.
    newton_tol : float, optional
        Tolerance of the Newton iteration.
    newton_max_iter : int, optional
        Iteration cap of the Newton iteration.
    fd_step : float, optional
        Relative step of the forward-difference Jacobian.
    damping : float, optional
        Damping factor of the Newton update, in (0, 1].

    Notes
    -----
    Omitted values are taken from the environment knobs (``STEP_COUNT``,
    ``NEWTON_TOL``, ...) loaded by :mod:`compas_pbiharmonic`.

    """

    def __init__(self, step_count=None, newton_tol=None, newton_max_iter=None, fd_step=None, damping=None, **kwargs):
        super(ShootConfig, self).__init__(**kwargs)
        self.step_count = int(step_count if step_count is not None else compas_pbiharmonic.STEP_COUNT)
        self.newton_tol = float(newton_tol if newton_tol is not None else compas_pbiharmonic.NEWTON_TOL)
        self.newton_max_iter = int(newton_max_iter if newton_max_iter is not None else compas_pbiharmonic.NEWTON_MAX_ITER)
        self.fd_step = float(fd_step if fd_step is not None else compas_pbiharmonic.FD_STEP)
        self.damping = float(damping if damping is not None else compas_pbiharmonic.DAMPING)
        if self.step_count < 100:
            raise ValueError("The shooting engine needs at least 100 steps, got {}".format(self.step_count))
        if not self.newton_tol > 0 or not self.fd_step > 0 or self.newton_max_iter < 1:
            raise ValueError("Newton tolerance, iteration cap and finite-difference step must be positive.")
        if not 0.0 < self.damping <= 1.0:
            raise ValueError("The damping factor must lie in (0, 1], got {}".format(self.damping))

    @property
    def __data__(self):
        return {
            "step_count": self.step_count,
            "newton_tol": self.newton_tol,
            "newton_max_iter": self.newton_max_iter,
            "fd_step": self.fd_step,
            "damping": self.damping,
        }

    @classmethod
    def __from_data__(cls, data):
        return cls(**data)

    def replace(self, **kwargs):
        data = self.__data__
        data.update(kwargs)
        return ShootConfig(**data)


class ProblemSpec(SpectralData):
    """Full definition of an instance of the weighted Navier p-biharmonic
    eigenvalue problem on the unit interval.

    Parameters
    ----------
    p : float | :class:`Exponent`
        The exponent.
    weight : :class:`compas_pbiharmonic.model.weights._Weight` | dict
        The weight, or its schema fragment.
    grid_n : int, optional
        Interior nodes of the discrete engine, at least 7.
    resample_n : int, optional
        Interior nodes of the reported eigenfunctions.
    shooting : :class:`ShootConfig`, optional
        Settings of the shooting engine.
    continuation_step : float, optional
        Initial step of the continuation in p.

    Attributes
    ----------
    exponent : :class:`Exponent`
    p : float
    weight : :class:`compas_pbiharmonic.model.weights._Weight`
    interval : tuple
        Always ``(0.0, 1.0)``; subintervals are handled by rescaling the weight.

    """

    interval = (0.0, 1.0)

    def __init__(self, p, weight, grid_n=None, resample_n=None, shooting=None, continuation_step=0.05, **kwargs):
        super(ProblemSpec, self).__init__(**kwargs)
        self._exponent = _as_exponent(p)
        self._weight = weight if isinstance(weight, _Weight) else parse_weight(weight)
        self.grid_n = int(grid_n if grid_n is not None else compas_pbiharmonic.GRID_N)
        self.resample_n = int(resample_n if resample_n is not None else compas_pbiharmonic.RESAMPLE_N)
        self.shooting = shooting or ShootConfig()
        self.continuation_step = float(continuation_step)
        if self.grid_n < 7:
            raise GridTooSmallError("The discrete engine needs at least 7 interior nodes, got {}".format(self.grid_n))
        if self.resample_n < 3:
            raise GridTooSmallError("Eigenfunctions need at least 3 resampling nodes, got {}".format(self.resample_n))
        if not (math.isfinite(self.continuation_step) and self.continuation_step > 0):
            raise SchemaError("The continuation step must be positive, got {}".format(self.continuation_step))

    @property
    def __data__(self):
        return {
            "p": self.p,
            "weight": self._weight.to_config(),
            "grid_n": self.grid_n,
            "resample_n": self.resample_n,
            "shooting": self.shooting.__data__,
            "continuation_step": self.continuation_step,
        }

    @classmethod
    def __from_data__(cls, data):
        return cls(
            p=data["p"],
            weight=parse_weight(data["weight"], check_admissible=False),
            grid_n=data.get("grid_n"),
            resample_n=data.get("resample_n"),
            shooting=ShootConfig.__from_data__(data["shooting"]) if "shooting" in data else None,
            continuation_step=data.get("continuation_step", 0.05),
        )

    @property
    def exponent(self):
        return self._exponent

    @property
    def p(self):
        return self._exponent.p

    @property
    def weight(self):
        return self._weight

    def with_exponent(self, p):
        """Copy of the problem at another exponent."""
        return ProblemSpec(Exponent(p) if not isinstance(p, Exponent) else p, self._weight, self.grid_n, self.resample_n, self.shooting, self.continuation_step)

    def with_weight(self, weight):
        """Copy of the problem with another weight."""
        return ProblemSpec(self._exponent, weight, self.grid_n, self.resample_n, self.shooting, self.continuation_step)
