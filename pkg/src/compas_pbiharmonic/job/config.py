from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math
import os

from compas.data import json_loads

import compas_pbiharmonic
from compas_pbiharmonic.base import SpectralData
from compas_pbiharmonic.errors import SchemaError
from compas_pbiharmonic.model import ProblemSpec
from compas_pbiharmonic.model import ShootConfig
from compas_pbiharmonic.model import parse_weight

KEYS = {"p", "p_grid", "kmax", "weight", "grid_n", "resample_n", "shooting", "continuation_step", "branches", "lambdas", "seed", "out"}
SHOOTING_KEYS = {"step_count", "newton_tol", "newton_max_iter", "fd_step", "damping"}


def _positive(value, key, kind=float):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
        raise SchemaError("'{}' must be a positive number, got {!r}".format(key, value))
    if kind is int and value != int(value):
        raise SchemaError("'{}' must be an integer, got {!r}".format(key, value))
    return kind(value)


class RunConfig(SpectralData):
    """A run configuration, as read from a JSON document.

    Parameters
    ----------
    weight : dict
        The weight block.
    p : float, optional
        The exponent; exactly one of ``p`` and ``p_grid`` must be given.
    p_grid : list[float], optional
        Exponents of a sweep.
    kmax : int, optional
        Pairs per sign, by default 5.
    grid_n, resample_n : int, optional
        Grids of the discrete engine and of the reported eigenfunctions;
        by default the ``GRID_N`` and ``RESAMPLE_N`` knobs.
    shooting : dict, optional
        Settings of the shooting engine; missing ones fall back to the
        environment knobs.
    continuation_step : float, optional
    branches : list[str], optional
        Signs to compute, by default both.
    lambdas : list[float], optional
        Abscissae of ``mu-curve``.
    seed : int, optional
        Seed of the random probes, by default the ``SEED`` knob.
    out : str, optional
        Output path.

    """

    def __init__(
        self,
        weight,
        p=None,
        p_grid=None,
        kmax=5,
        grid_n=None,
        resample_n=None,
        shooting=None,
        continuation_step=0.05,
        branches=("+", "-"),
        lambdas=None,
        seed=None,
        out=None,
        **kwargs,
    ):
        super(RunConfig, self).__init__(**kwargs)
        if (p is None) == (p_grid is None):
            raise SchemaError("Exactly one of 'p' and 'p_grid' must be given.")
        self.p = _positive(p, "p") if p is not None else None
        self.p_grid = [_positive(q, "p_grid") for q in p_grid] if p_grid is not None else None
        if self.p is not None and self.p <= 1.0:
            raise SchemaError("'p' must be larger than 1, got {!r}".format(self.p))
        if self.p_grid is not None and (not self.p_grid or min(self.p_grid) <= 1.0):
            raise SchemaError("'p_grid' must be a nonempty list of exponents larger than 1.")
        self.weight = parse_weight(weight)
        self.kmax = _positive(kmax, "kmax", int)
        self.grid_n = _positive(grid_n, "grid_n", int) if grid_n is not None else compas_pbiharmonic.GRID_N
        self.resample_n = _positive(resample_n, "resample_n", int) if resample_n is not None else compas_pbiharmonic.RESAMPLE_N
        shooting = dict(shooting or {})
        unknown = set(shooting) - SHOOTING_KEYS
        if unknown:
            raise SchemaError("Unknown shooting settings {}".format(sorted(unknown)))
        for key, value in shooting.items():
            _positive(value, key)
        try:
            self.shooting = ShootConfig(**shooting)
        except ValueError as e:
            raise SchemaError(str(e))
        self.continuation_step = _positive(continuation_step, "continuation_step")
        if not set(branches) <= {"+", "-"} or not branches:
            raise SchemaError("'branches' must be a nonempty subset of ['+', '-'], got {!r}".format(branches))
        self.branches = tuple(b for b in ("+", "-") if b in branches)
        self.lambdas = [float(lam) for lam in lambdas] if lambdas is not None else None
        self.seed = int(seed) if seed is not None else compas_pbiharmonic.SEED
        self.out = out

    @property
    def __data__(self):
        data = {
            "weight": self.weight.to_config(),
            "kmax": self.kmax,
            "grid_n": self.grid_n,
            "resample_n": self.resample_n,
            "shooting": self.shooting.__data__,
            "continuation_step": self.continuation_step,
            "branches": list(self.branches),
            "seed": self.seed,
        }
        if self.p is not None:
            data["p"] = self.p
        else:
            data["p_grid"] = self.p_grid
        if self.lambdas is not None:
            data["lambdas"] = self.lambdas
        return data

    @classmethod
    def __from_data__(cls, data):
        if not isinstance(data, dict):
            raise SchemaError("A run configuration must be a key-value document.")
        unknown = set(data) - KEYS
        if unknown:
            raise SchemaError("Unknown configuration keys {}".format(sorted(unknown)))
        if "weight" not in data:
            raise SchemaError("The configuration has no 'weight' block.")
        return cls(**data)

    @classmethod
    def from_json(cls, text):
        try:
            data = json_loads(text)
        except ValueError as e:
            raise SchemaError("The configuration is not valid JSON: {}".format(e))
        return cls.__from_data__(data)

    @classmethod
    def from_file(cls, path):
        """Read a configuration file.

        Parameters
        ----------
        path : str

        Returns
        -------
        :class:`RunConfig`

        """
        if not os.path.exists(path):
            raise SchemaError("Configuration file not found: {}".format(path))
        with open(path, "r") as f:
            return cls.from_json(f.read())

    def problem(self, p=None):
        """The :class:`ProblemSpec` of the run, at ``p`` or the configured exponent."""
        p = p if p is not None else (self.p if self.p is not None else 2.0)
        return ProblemSpec(p, self.weight, self.grid_n, self.resample_n, self.shooting, self.continuation_step)
