"""Exception types shared across the package."""


class PgbError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(PgbError, ValueError):
    """An argument is outside its documented domain."""


class ShapeMismatchError(InvalidArgumentError):
    """Data shape does not match the lattice or a companion array."""


class ModeError(PgbError, ValueError):
    """Coefficients tagged with one mode were handed to another mode's path."""


class IllConditionedError(PgbError, ArithmeticError):
    """A matrix is too ill-conditioned to invert reliably.

    The offending condition estimate, when known, is stored on ``cond``.
    """

    def __init__(self, message, cond=None):
        super().__init__(message)
        self.cond = cond


class ConvergenceError(PgbError, ArithmeticError):
    """An iterative solver hit its iteration cap before reaching tolerance."""

    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class ParseError(PgbError, ValueError):
    """A file failed to parse; ``offset`` is a byte position when known."""

    def __init__(self, message, offset=None):
        super().__init__(message)
        self.offset = offset
