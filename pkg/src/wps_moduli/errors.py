"""Exception types shared across the package."""

from __future__ import annotations


class WpsError(Exception):
    """Base class for every error raised by this package."""


class ConstructionError(WpsError, ValueError):
    """A root system was requested with an invalid family or rank."""


class RangeError(WpsError, ValueError):
    """An integer argument fell outside its admissible range."""


class PreconditionError(WpsError, ValueError):
    """An operation was called on data that does not satisfy its hypothesis."""


class ElementDomainError(WpsError, ValueError):
    """A center element does not belong to the given root datum."""


class CongruenceError(WpsError, ValueError):
    """A degree fails the divisibility condition needed for integral dimensions."""


class InternalInconsistency(WpsError, AssertionError):
    """An identity that must hold by construction failed; indicates a bug."""
