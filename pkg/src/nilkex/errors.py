"""Exception hierarchy shared across the package.

Every error raised deliberately by this library derives from NilkexError,
so callers can catch one type at the boundary.  The CLI maps subclasses
to exit codes: bad input 2, refused-by-guard 3, failed internal check 1.
"""


class NilkexError(Exception):
    """Base class for all library errors."""


class ParameterError(NilkexError):
    """Invalid or unrealizable parameters (bad prime, reducible modulus, ...)."""


class ShapeError(NilkexError):
    """Matrix dimensions or underlying fields do not line up."""


class SingularMatrixError(NilkexError):
    """Inversion was requested for a matrix with zero determinant."""


class NotInGroupError(NilkexError):
    """An element failed a group-membership precondition (e.g. its order
    does not divide the stated exponent bound)."""


class SearchExhaustedError(NilkexError):
    """A bounded search (prime search, key candidate stream, exponent
    recovery) ran out of candidates before finding a hit."""


class SizeGuardError(NilkexError):
    """A brute-force operation was refused because the instance exceeds
    the documented size guard."""


class ProtocolError(NilkexError):
    """A protocol run broke down: unusable base or disagreeing keys.

    Carries the offending transcript when one is available.
    """

    def __init__(self, message, transcript=None):
        super().__init__(message)
        self.transcript = transcript


class InternalCheckError(NilkexError):
    """A consistency condition that should be unconditionally true failed.

    Seeing this means a bug in the library, not bad user input.
    """
