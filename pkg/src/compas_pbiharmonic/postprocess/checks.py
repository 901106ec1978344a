from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math

from compas_pbiharmonic.base import SpectralData


def _clean(value):
    # json has no infinities
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


class Check(SpectralData):
    """Pass/fail record of one verified property.

    Parameters
    ----------
    name : str
        Machine name of the property, e.g. ``"zero_count"``.
    passed : bool
        Outcome.
    value : float, optional
        The measured quantity.
    threshold : float, optional
        The bound the quantity was compared with.
    sign : str, optional
        Branch the check belongs to.
    k : int, optional
        Branch index the check belongs to.
    advisory : bool, optional
        Advisory checks are reported but do not gate the report.
    details : dict | list, optional
        Per-item measurements, e.g. one margin per nodal domain.

    """

    def __init__(self, name, passed, value=None, threshold=None, sign=None, k=None, advisory=False, details=None, **kwargs):
        super(Check, self).__init__(**kwargs)
        self.check = name
        self.passed = bool(passed)
        self.value = value
        self.threshold = threshold
        self.sign = sign
        self.k = k
        self.advisory = bool(advisory)
        self.details = details

    @property
    def margin(self):
        if self.value is None or self.threshold is None:
            return None
        return self.value - self.threshold

    @property
    def __data__(self):
        return {
            "check": self.check,
            "passed": self.passed,
            "value": _clean(self.value),
            "threshold": _clean(self.threshold),
            "sign": self.sign,
            "k": self.k,
            "advisory": self.advisory,
            "details": self.details,
        }

    @classmethod
    def __from_data__(cls, data):
        def number(v):
            return float(v) if isinstance(v, str) else v

        return cls(data["check"], data["passed"], number(data.get("value")), number(data.get("threshold")), data.get("sign"), data.get("k"), data.get("advisory", False), data.get("details"))

    @property
    def label(self):
        slot = "" if self.sign is None else " [{}{}]".format(self.sign, self.k if self.k is not None else "")
        return "{}{}".format(self.check, slot)

    def __repr__(self):
        return "Check({}, passed={})".format(self.label, self.passed)


class VerifyReport(SpectralData):
    """Collection of :class:`Check` records.

    The report passes when every non-advisory check passes.
    """

    def __init__(self, checks=None, **kwargs):
        super(VerifyReport, self).__init__(**kwargs)
        self.checks = list(checks or [])

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, checks):
        for check in checks:
            self.add(check)

    @property
    def passed(self):
        return all(c.passed for c in self.checks if not c.advisory)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed and not c.advisory]

    @property
    def advisories(self):
        return [c for c in self.checks if not c.passed and c.advisory]

    def by_name(self, name):
        return [c for c in self.checks if c.check == name]

    @property
    def __data__(self):
        return {"passed": self.passed, "checks": [c.__data__ for c in self.checks], "failures": [c.label for c in self.failures]}

    @classmethod
    def __from_data__(cls, data):
        return cls([Check.__from_data__(c) for c in data.get("checks", [])])

    def __str__(self):
        lines = ["{:<40} {}".format(c.label, "PASS" if c.passed else ("WARN" if c.advisory else "FAIL")) for c in self.checks]
        return "\n".join(lines + ["passed: {}".format(self.passed)])
