"""Exception types shared across the package."""

from __future__ import annotations


class TermrankError(Exception):
    """Base class for all package-specific failures."""


class InstanceError(TermrankError):
    """Invalid input data: malformed grounds, tables, specs, or files."""


class PreconditionError(TermrankError):
    """A hypothesis required by an operation does not hold for its input."""

    def __init__(self, message: str, cert=None):
        super().__init__(message)
        self.cert = cert


class InfeasibleError(TermrankError):
    """A constructive routine was invoked on an infeasible instance."""

    def __init__(self, message: str, cert):
        super().__init__(message)
        self.cert = cert
