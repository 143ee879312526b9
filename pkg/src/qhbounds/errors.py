"""Exception types shared across the package."""

from __future__ import annotations


class QHError(Exception):
    """Base class for all package errors."""


class ContextMismatch(QHError):
    pass


class InfiniteSupport(QHError):
    """A computation would need a genuinely infinite Laurent series."""


class ParseError(QHError, ValueError):
    pass


class RingMismatch(QHError):
    pass


class NoModuleStructure(QHError):
    pass


class BadParameters(QHError, ValueError):
    pass


class InvalidRing(QHError):
    def __init__(self, message: str, failures: list[str] | None = None):
        super().__init__(message)
        self.failures = failures or []


class NoFactorization(QHError):
    pass


class NotACycle(QHError):
    pass


class InvalidMorseData(QHError):
    pass


class ClassNotFound(QHError):
    pass
