"""Exception types raised across the package."""


class CRMapsError(Exception):
    """Base class for all package errors."""


class StructuralError(CRMapsError, ValueError):
    """Operands are incompatible (different variable spaces, wrong arity, ...)."""


class PreconditionError(CRMapsError, ValueError):
    """An operation was called outside its documented domain."""


class ParameterError(CRMapsError, ValueError):
    """Invalid construction parameters (signature bounds, non-unit modulus, ...)."""


class BranchError(CRMapsError, ValueError):
    """A radical was requested of a series whose constant term is not 1."""


class NonTransversalError(CRMapsError):
    """The mapping quotient vanishes where a transversal map is required."""


class MapCheckError(CRMapsError):
    """The map does not send its source hypersurface into its target."""


class DegenerateMetricError(CRMapsError):
    """The metric determinant vanishes identically."""


class UnsupportedError(CRMapsError):
    """Requested combination is outside what the engine implements."""


class ExpressionError(CRMapsError, ValueError):
    """Syntax or name error in an expression string, with 1-based position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f" at line {line}, column {col}" if line else ""
        super().__init__(f"{message}{where}")
