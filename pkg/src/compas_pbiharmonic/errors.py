"""
Errors raised by the eigenvalue toolkit.

Every error subclasses the builtin exception matching its nature, so that it
can be caught either by name or by its builtin base. The ``code`` attribute is
the stable name used in the machine-readable records of the command line.
"""


class SchemaError(ValueError):
    code = "SchemaError"


class DiscontinuousWeightError(ValueError):
    code = "DiscontinuousWeight"


class NotAdmissibleError(ValueError):
    code = "NotAdmissible"


class OutOfDomainError(ValueError):
    code = "OutOfDomain"


class GridTooSmallError(ValueError):
    code = "GridTooSmall"


class GridMismatchError(ValueError):
    code = "GridMismatch"


class ZeroDenominatorError(ZeroDivisionError):
    code = "ZeroDenominator"


class IntegrationOverflowError(OverflowError):
    code = "Overflow"


class NoConvergenceError(RuntimeError):
    code = "NoConvergence"


class SingularJacobianError(RuntimeError):
    code = "SingularJacobian"


class StepUnderflowError(RuntimeError):
    """The continuation step fell below its minimum.

    Parameters
    ----------
    message : str
        Description of the failure.
    last_p : float
        The last exponent where a solution was accepted.
    last_pair : :class:`compas_pbiharmonic.results.Eigenpair`, optional
        The last accepted eigenpair.

    """

    code = "StepUnderflow"

    def __init__(self, message, last_p=None, last_pair=None):
        super(StepUnderflowError, self).__init__(message)
        self.last_p = last_p
        self.last_pair = last_pair


class BranchJumpError(RuntimeError):
    code = "BranchJump"

    def __init__(self, message, last_p=None, last_pair=None):
        super(BranchJumpError, self).__init__(message)
        self.last_p = last_p
        self.last_pair = last_pair


class InfeasibleStartError(ValueError):
    code = "InfeasibleStart"


class DegenerateWeightError(ValueError):
    code = "DegenerateWeight"


class BracketFailureError(RuntimeError):
    code = "BracketFailure"


class NonAlternatingError(ValueError):
    code = "NonAlternating"


def error_code(error):
    """Return the machine name of an error.

    Parameters
    ----------
    error : Exception

    Returns
    -------
    str

    """
    return getattr(error, "code", type(error).__name__)
