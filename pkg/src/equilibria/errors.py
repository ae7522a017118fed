"""Exception hierarchy shared by all modules.

Two families matter to callers: ``InvalidInputError`` (bad arguments, maps to
CLI exit code 2) and ``ComputationError`` (a well-formed request that could not
be completed or certified, maps to exit code 1).
"""


class EquilibriaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(EquilibriaError, ValueError):
    """Malformed or inconsistent input."""


class FormatError(InvalidInputError):
    """Invalid tensor format."""


class FieldError(InvalidInputError):
    """Unsupported or mismatched coefficient field."""


class RingMismatchError(InvalidInputError):
    """Objects living in different rings were combined."""


class ComputationError(EquilibriaError):
    """A computation failed or could not be certified."""


class BudgetExceededError(ComputationError):
    """A Groebner basis computation ran past its reduction-step budget."""


class NotZeroDimensionalError(ComputationError):
    def __init__(self, msg: str = "ideal is not zero-dimensional"):
        super().__init__(msg)


class CannotCertifyError(ComputationError):
    """The solver could not certify a root count exactly."""


class UnboundedPolyhedronError(ComputationError):
    """Vertex enumeration was asked for an unbounded polyhedron."""


class UndefinedMarginalError(ComputationError):
    """A conditional expected payoff was requested at a zero marginal."""
