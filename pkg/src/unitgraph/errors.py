"""Exception types shared across the package.

Everything that can go wrong falls into three buckets: bad inputs
(ValueError subclasses), computations that exceed a configured size cap,
and internal identities failing (which indicate an implementation bug,
never a user error).
"""


class NonPrimeError(ValueError):
    """A field characteristic that is not a prime number."""


class ReducibleModulusError(ValueError):
    """A modulus polynomial that factors over the prime field."""


class UnsupportedFieldError(ValueError):
    """No modulus available (or checkable) for the requested extension."""


class ContextMismatchError(ValueError):
    """Operands built over different fields, dimensions, or root orders."""


class NotRationalError(ValueError):
    """A cyclotomic value expected to collapse to an integer did not.

    Character sums over unions of full rank classes are Galois-stable and
    must be plain integers; seeing this error means the sum was formed
    incorrectly somewhere upstream.
    """


class SizeTooLargeError(ValueError):
    """An enumeration or graph build would exceed its size cap."""


class InexactDivisionError(ArithmeticError):
    """An integer division that the underlying identity promises to be
    exact left a remainder."""


class EigenvectorMismatchError(ArithmeticError):
    """A character vector failed the eigenvector equation on the ground
    truth adjacency matrix."""

    def __init__(self, message: str, coordinate: int):
        super().__init__(message)
        self.coordinate = coordinate


class TheoremViolationError(RuntimeError):
    """The spectral gap guarantee fired but no witness pair was found.

    This is unreachable if the implementation is correct; it exists as a
    tripwire, not as a recoverable condition.
    """
