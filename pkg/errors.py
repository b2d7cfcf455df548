"""
Error hierarchy for Nefwall

Every error knows the exit code the CLI returns for it and the HTTP status
the API answers with.
"""


class NefwallError(Exception):
    """Base class for all library errors"""

    exit_code = 1
    http_status = 500


class ConsistencyError(NefwallError):
    """An internal invariant failed (element off its quadratic, negative dimension, ...)"""


class ArgumentError(NefwallError, ValueError):
    """Invalid argument or violated precondition"""

    exit_code = 2
    http_status = 400


class DimensionMismatchError(ArgumentError):
    """Divisors live on surfaces with different numbers of points"""


class SquareInputError(ArgumentError):
    """Operation needs a non-square integer"""

    def __init__(self, n: int):
        super().__init__(f"n={n} is a perfect square")
        self.n = n


class IntegralityError(ArgumentError):
    """A value that must be integral is not"""


class PreconditionError(ArgumentError):
    """Input does not satisfy the operation's precondition"""


class DegenerateWallError(ArgumentError):
    """2d+3 = 0, so the divisor has no finite wall"""


class DegenerateEquationError(ArgumentError):
    """Reduced equation has infinitely many non-chain solutions"""


class ConfigurationError(ArgumentError):
    """Bad value in the environment"""


class UnsupportedSurfaceError(NefwallError):
    """No established case analysis for this number of points"""

    exit_code = 3
    http_status = 422


class WallBoundaryError(NefwallError):
    """Polarization sits exactly on a wall"""

    exit_code = 4
    http_status = 409


class AssumptionRequiredError(NefwallError):
    """Result is conditional on a conjecture the caller did not assume"""

    exit_code = 5
    http_status = 412

    def __init__(self, assumption: str, flag: str):
        super().__init__(f"result requires the {assumption} conjecture; pass {flag}")
        self.assumption = assumption
        self.flag = flag
