"""Exception hierarchy shared by the algebra, series and genus layers."""


class AlgebraError(Exception):
    """Base class for every error raised by cp2genus."""


class VarSetMismatchError(AlgebraError, ValueError):
    """Binary operation on polynomials over different generator lists."""


class UnboundGeneratorError(AlgebraError, KeyError):
    pass


class DivisibilityError(AlgebraError, ArithmeticError):
    """Exact division requested where the divisor does not divide."""


class ParseError(AlgebraError, ValueError):
    pass


class TruncationError(AlgebraError, ArithmeticError):
    """A coefficient was requested outside the range where it is known exactly."""


class NotAUnitError(AlgebraError, ArithmeticError):
    """Leading coefficient of a series is not an invertible rational."""


class SolverError(AlgebraError, ArithmeticError):
    pass
