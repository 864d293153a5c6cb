"""Exception types raised across the package.

Everything derives from ``ValueError`` so callers that only care about
"bad input" can catch one thing; the CLI maps all of them to exit code 2.
"""


class TrotterError(ValueError):
    """Base class for all user-facing errors."""


class ParseError(TrotterError):
    pass


class MatrixTooLarge(TrotterError):
    pass


class CircuitError(TrotterError):
    pass


class GadgetError(TrotterError):
    pass


class CompileError(TrotterError):
    pass
