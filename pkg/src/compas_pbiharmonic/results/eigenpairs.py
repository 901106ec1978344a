from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np

from compas_pbiharmonic.base import SpectralData
from compas_pbiharmonic.model import GridFunction
from compas_pbiharmonic.model import ProblemSpec
from compas_pbiharmonic.model import phi_p

ENGINES = ("shooting", "discrete-oracle", "variational")
JUMP_STEP = 0.05


class Eigenpair(SpectralData):
    """An eigenvalue with its sampled eigenfunction.

    Parameters
    ----------
    lam : float
        The eigenvalue.
    k : int
        The branch index, ``k - 1`` being the number of interior zeros.
    p : float
        The exponent.
    eigenfunction : :class:`compas_pbiharmonic.model.GridFunction`
        The normalised eigenfunction, resampled on a uniform grid.
    u_prime0 : float, optional
        ``u'(0)`` of the normalised eigenfunction.
    beta : float, optional
        ``v'(0)`` of the normalised eigenfunction, with ``v = phi_p(u'')``.
    zeros : list[float], optional
        Refined interior zeros.
    zero_classes : list[dict], optional
        Classification of every zero (see
        :func:`compas_pbiharmonic.solvers.classify_zeros`).
    tangential_zeros : list[float], optional
        Locations where ``u`` touches zero without changing sign.
    residuals : dict, optional
        ``miss_u``, ``miss_v`` and the normalised ``boundary`` residual.
    engine : str, optional
        One of ``"shooting"``, ``"discrete-oracle"``, ``"variational"``.
    normalisation : str, optional
        ``"weighted"`` when ``int sign(lam) m |u|^p = 1``, ``"max"`` when the
        max-norm was used instead.
    iterations : int, optional
        Newton iterations of the last solve.
    direct_deviation : float, optional
        Relative deviation from a direct negative-eigenvalue solve.

    Attributes
    ----------
    sign : str
        ``"+"`` or ``"-"``, following the sign of ``lam``.

    """

    def __init__(
        self,
        lam,
        k,
        p,
        eigenfunction,
        u_prime0=1.0,
        beta=0.0,
        zeros=None,
        zero_classes=None,
        tangential_zeros=None,
        residuals=None,
        engine="shooting",
        normalisation="weighted",
        iterations=0,
        direct_deviation=None,
        **kwargs,
    ):
        super(Eigenpair, self).__init__(**kwargs)
        if lam == 0 or not np.isfinite(lam):
            raise ValueError("0 is not an eigenvalue, got {!r}".format(lam))
        if engine not in ENGINES:
            raise ValueError("Unknown engine {!r}".format(engine))
        self.lam = float(lam)
        self.k = int(k)
        self.p = float(p)
        self.eigenfunction = eigenfunction
        self.u_prime0 = float(u_prime0)
        self.beta = float(beta)
        self.zeros = [float(z) for z in (zeros or [])]
        self.zero_classes = list(zero_classes or [])
        self.tangential_zeros = [float(z) for z in (tangential_zeros or [])]
        self.residuals = dict(residuals or {})
        self.engine = engine
        self.normalisation = normalisation
        self.iterations = int(iterations)
        self.direct_deviation = direct_deviation

    @property
    def sign(self):
        return "+" if self.lam > 0 else "-"

    @property
    def shoot_beta(self):
        """``v'(0)`` of the eigenfunction rescaled to ``u'(0) = 1``."""
        return self.beta / phi_p(self.u_prime0, self.p)

    @property
    def __data__(self):
        return {
            "lambda": self.lam,
            "sign": self.sign,
            "k": self.k,
            "p": self.p,
            "engine": self.engine,
            "u_prime0": self.u_prime0,
            "beta": self.beta,
            "zeros": self.zeros,
            "zero_classes": self.zero_classes,
            "tangential_zeros": self.tangential_zeros,
            "residuals": self.residuals,
            "normalisation": self.normalisation,
            "iterations": self.iterations,
            "direct_deviation": self.direct_deviation,
            "eigenfunction": self.eigenfunction.__data__["values"],
        }

    @classmethod
    def __from_data__(cls, data):
        return cls(
            lam=data["lambda"],
            k=data["k"],
            p=data["p"],
            eigenfunction=GridFunction(data["eigenfunction"]),
            u_prime0=data.get("u_prime0", 1.0),
            beta=data.get("beta", 0.0),
            zeros=data.get("zeros"),
            zero_classes=data.get("zero_classes"),
            tangential_zeros=data.get("tangential_zeros"),
            residuals=data.get("residuals"),
            engine=data.get("engine", "shooting"),
            normalisation=data.get("normalisation", "weighted"),
            iterations=data.get("iterations", 0),
            direct_deviation=data.get("direct_deviation"),
        )

    def as_negative(self):
        """The pair of ``lam -> -lam`` for the weight ``-m``: same eigenfunction."""
        data = self.__data__
        data["lambda"] = -self.lam
        return Eigenpair.__from_data__(data)

    def corrupted(self, factor):
        """Copy with the eigenvalue multiplied by ``factor``."""
        data = self.__data__
        data["lambda"] = self.lam * factor
        return Eigenpair.__from_data__(data)

    def __repr__(self):
        return "Eigenpair(sign={!r}, k={}, p={!r}, lam={!r})".format(self.sign, self.k, self.p, self.lam)


class SpectrumTable(SpectralData):
    """Both eigenvalue sequences of a problem, with the status of every slot.

    Parameters
    ----------
    problem : :class:`compas_pbiharmonic.model.ProblemSpec`
    pairs_plus : list[:class:`Eigenpair`]
        Positive eigenpairs, ordered by ``k``.
    pairs_minus : list[:class:`Eigenpair`]
        Negative eigenpairs, ordered by ``k``.
    negative_status : str, optional
        Why the negative branch is empty, e.g. ``"NotAdmissible"``.
    slots : dict, optional
        ``{"+1": "ok", "-3": "NoConvergence", ...}``.
    verify : :class:`compas_pbiharmonic.postprocess.VerifyReport`, optional

    """

    def __init__(self, problem, pairs_plus=None, pairs_minus=None, negative_status=None, slots=None, verify=None, **kwargs):
        super(SpectrumTable, self).__init__(**kwargs)
        self.problem = problem
        self.pairs_plus = list(pairs_plus or [])
        self.pairs_minus = list(pairs_minus or [])
        self.negative_status = negative_status
        self.slots = dict(slots or {})
        self.verify = verify

    @property
    def pairs(self):
        return self.pairs_plus + self.pairs_minus

    def branch(self, sign):
        return self.pairs_plus if sign == "+" else self.pairs_minus

    def eigenvalues(self, sign="+"):
        return [pair.lam for pair in self.branch(sign)]

    @property
    def __data__(self):
        return {
            "format": "compas_pbiharmonic.spectrum",
            "version": 1,
            "problem": self.problem.__data__,
            "pairs_plus": [pair.__data__ for pair in self.pairs_plus],
            "pairs_minus": [pair.__data__ for pair in self.pairs_minus],
            "negative_status": self.negative_status,
            "slots": self.slots,
            "verify": self.verify.__data__ if self.verify is not None else None,
        }

    @classmethod
    def __from_data__(cls, data):
        from compas_pbiharmonic.postprocess import VerifyReport

        if data.get("format") != "compas_pbiharmonic.spectrum":
            raise ValueError("Not a spectrum table document.")
        return cls(
            problem=ProblemSpec.__from_data__(data["problem"]),
            pairs_plus=[Eigenpair.__from_data__(d) for d in data.get("pairs_plus", [])],
            pairs_minus=[Eigenpair.__from_data__(d) for d in data.get("pairs_minus", [])],
            negative_status=data.get("negative_status"),
            slots=data.get("slots"),
            verify=VerifyReport.__from_data__(data["verify"]) if data.get("verify") else None,
        )


class SweepTable(SpectralData):
    """Eigenvalue curves ``p -> lambda_k(p)``.

    Parameters
    ----------
    problem : :class:`compas_pbiharmonic.model.ProblemSpec`
    curves : dict, optional
        ``{(sign, k): [(p, lam, zero_count), ...]}`` ordered by ``p``.
    jump_threshold : float, optional
        Largest admissible relative change between adjacent points.
    errors : dict, optional
        ``{(sign, k): {"error": code, "last_p": p}}`` for interrupted curves.

    """

    def __init__(self, problem, curves=None, jump_threshold=0.05, errors=None, **kwargs):
        super(SweepTable, self).__init__(**kwargs)
        self.problem = problem
        self.curves = dict(curves or {})
        self.jump_threshold = jump_threshold
        self.errors = dict(errors or {})

    def curve(self, sign, k):
        return self.curves[(sign, k)]

    def jumps(self, sign, k):
        """Relative changes of ``|lam|^(1/p)`` between adjacent points of one
        curve, per ``JUMP_STEP`` of p.

        ``lam_k(p)`` grows geometrically in p; its p-th root is the quantity
        that varies on the scale of the operator.
        """
        scaled = [(p, abs(lam) ** (1.0 / p)) for p, lam, _ in self.curves[(sign, k)]]
        return [abs(r1 - r0) / r0 * min(1.0, JUMP_STEP / (p1 - p0)) for (p0, r0), (p1, r1) in zip(scaled, scaled[1:])]

    def zero_count_changes(self, sign, k):
        counts = [z for _, _, z in self.curves[(sign, k)]]
        return [(a, b) for a, b in zip(counts, counts[1:]) if a != b]

    @property
    def violations(self):
        """Adjacent jumps above the threshold, as ``(sign, k, p_left, p_right, jump)``."""
        found = []
        for (sign, k), points in sorted(self.curves.items()):
            for (p0, _, _), (p1, _, _), jump in zip(points, points[1:], self.jumps(sign, k)):
                if jump > self.jump_threshold:
                    found.append((sign, k, p0, p1, jump))
        return found

    @property
    def passed(self):
        return not self.violations and not self.errors and not any(self.zero_count_changes(s, k) for s, k in self.curves)

    @property
    def __data__(self):
        return {
            "format": "compas_pbiharmonic.sweep",
            "version": 1,
            "problem": self.problem.__data__,
            "jump_threshold": self.jump_threshold,
            "curves": [
                {"sign": sign, "k": k, "points": [{"p": p, "lambda": lam, "zero_count": z} for p, lam, z in points]}
                for (sign, k), points in sorted(self.curves.items())
            ],
            "violations": [{"sign": s, "k": k, "p_left": a, "p_right": b, "jump": j} for s, k, a, b, j in self.violations],
            "errors": [dict(sign=sign, k=k, **info) for (sign, k), info in sorted(self.errors.items())],
        }

    @classmethod
    def __from_data__(cls, data):
        curves = {(c["sign"], c["k"]): [(pt["p"], pt["lambda"], pt["zero_count"]) for pt in c["points"]] for c in data["curves"]}
        errors = {(e["sign"], e["k"]): {key: value for key, value in e.items() if key not in ("sign", "k")} for e in data.get("errors", [])}
        return cls(ProblemSpec.__from_data__(data["problem"]), curves, data.get("jump_threshold", 0.05), errors)
