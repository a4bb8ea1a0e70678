"""Exception hierarchy.

Each class carries an ``exit_code`` used by the command line front end.
"""

import numpy as np


class DrazinPertError(Exception):
    exit_code = 3


class ShapeError(DrazinPertError, ValueError):
    """Operands are not conformable, or a square matrix was required."""


class Singular(DrazinPertError, np.linalg.LinAlgError):
    """A matrix is numerically singular at the active tolerance."""


class CornerSingular(Singular):
    """``p m p`` is not invertible inside the corner algebra ``pAp``."""


class NumericFailure(DrazinPertError):
    """A computed generalized inverse fails its defining identities."""


class NotGroupInvertible(DrazinPertError):
    """The matrix has Drazin index 2 or more."""

    exit_code = 2

    def __init__(self, index: int, what: str = "matrix"):
        self.index = index
        super().__init__(f"{what} is not group invertible (Drazin index {index})")


class PreconditionViolated(DrazinPertError, ValueError):
    """An algebraic precondition of a formula does not hold.

    ``residual`` is the scaled residual of the offending identity.
    """

    exit_code = 1

    def __init__(self, message: str, residual: float | None = None):
        self.residual = residual
        super().__init__(message if residual is None else f"{message} (residual {residual:.3e})")


class BlockViolation(PreconditionViolated):
    """An operand does not lie in the Peirce corner it was declared in."""


class HypothesisFailed(DrazinPertError):
    """The hypotheses of a perturbation theorem are not met.

    ``report`` is the :class:`~drazinpert.perturb.ConditionReport` (or
    ``None`` when the failure is a derived side condition).
    """

    exit_code = 1

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class NormNotContractive(HypothesisFailed):
    """``|a^D b| >= 1``, so the geometric bound factors are undefined."""


class GenerationFailed(DrazinPertError, RuntimeError):
    """The random instance generator exhausted its retries."""


class MismatchWithPaper(DrazinPertError, AssertionError):
    """A reproduced reference value disagrees with the computed one."""

    exit_code = 4
