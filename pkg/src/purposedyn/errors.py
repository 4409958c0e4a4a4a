"""Exception types shared across the package."""


class PurposedynError(Exception):
    """Base class for all package errors."""


class ValidationError(PurposedynError):
    """A parameter, distribution or scenario violates a domain constraint.

    The message names the violated constraint and, for scenario files,
    the offending field path.
    """


class InfeasiblePathError(PurposedynError):
    """A requested meaning transition would need a negative purpose flow."""


class UnsupportedOperationError(PurposedynError):
    """The operation is not defined for this distribution type."""
