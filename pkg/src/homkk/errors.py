"""Exception hierarchy for homkk.

Two families matter to callers: :class:`InputValidationError` for data that does
not describe a valid object (CLI exit status 2) and :class:`PreconditionError`
for valid objects that fail the mathematical precondition of an operation
(CLI exit status 3).
"""


class HomkkError(Exception):
    """Base class of all errors raised by the engine."""


class InputValidationError(HomkkError):
    """Input data does not describe a valid object."""


class ShapeError(InputValidationError):
    """Matrix or vector dimensions do not fit together."""


class RelationError(InputValidationError):
    """A map sends some relator outside the relator lattice of its target."""


class CompositionError(InputValidationError):
    """Sources, targets or degrees of two operands do not match."""


class PreconditionError(HomkkError):
    """A valid input violates the precondition of an operation."""


class NotExactError(PreconditionError):
    """A sequence or module is required to be exact but is not."""


class NotInvertibleError(PreconditionError):
    """A map is required to be an isomorphism but is not."""


class ResolutionError(PreconditionError):
    """A projective resolution could not be completed."""


class MatrixTooLargeError(HomkkError):
    """A matrix exceeds the ``HOMKK_MAX_MATRIX`` bound."""


class GenerationError(PreconditionError):
    """No random draw satisfied the sampling constraints within the allowed attempts."""
