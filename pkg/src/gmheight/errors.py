"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GmHeightError(Exception):
    """Base class for all library errors."""


class DomainError(GmHeightError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ParseError(DomainError):
    """Malformed polynomial text.  ``token`` names the offending token."""

    def __init__(self, message: str, token: str = "", position: int = -1):
        super().__init__(message)
        self.token = token
        self.position = position


class PrecisionExhausted(GmHeightError, ArithmeticError):
    """The precision ladder hit its cap before a post-condition certified."""


class IndeterminateDegree(DomainError):
    """Leading coefficient ball contains zero."""


class RamifiedPrime(DomainError):
    """Frobenius requested at a prime dividing the conductor."""


class BoundUnmet(GmHeightError):
    """Siegel construction could not meet its height bound.

    ``best`` carries the best candidate found so it can still be inspected.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class InternalError(GmHeightError, RuntimeError):
    """A mathematical guarantee was violated; indicates a bug."""
