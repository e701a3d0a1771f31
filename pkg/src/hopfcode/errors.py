"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class ResourceError(RuntimeError):
    """An operation would exceed a configured memory or size cap."""
