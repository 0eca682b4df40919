"""Exception hierarchy.

The CLI maps each class to an exit code, so keep the split meaningful:
usage/parse problems, invalid input algebras, violated theorems, and
resource guards are distinct failure modes.
"""


class BilatticeError(Exception):
    """Base class for all errors raised by this package."""


class SignatureError(BilatticeError, ValueError):
    """Two algebras (or an algebra and a structure) do not share a signature."""


class HomError(BilatticeError, ValueError):
    """A map claimed to be a homomorphism does not preserve some operation."""


class ValidationError(BilatticeError, ValueError):
    """An input algebra is not a member of the variety it is declared in."""


class TheoremViolation(BilatticeError, RuntimeError):
    """A computed object contradicts a structural theorem that should hold."""


class ResourceGuardError(BilatticeError, RuntimeError):
    """A computation would exceed its configured size guard."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate
