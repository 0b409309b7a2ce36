"""Shared exception types."""


class SizeLimitError(ValueError):
    """An exhaustive computation was requested beyond its configured size cap."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NoSplitError(ValueError):
    """No split eigenvalue exists for the requested parameters (gap absent)."""
