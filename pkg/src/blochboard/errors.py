"""Exception types shared across the package."""
from __future__ import annotations


class ConfigurationError(ValueError):
    """Invalid static configuration: bad qubit count, gate pairing, config field.

    `fields` optionally names the offending config fields (dotted paths for
    nested configs) so callers can surface structured validation errors.
    """

    def __init__(self, message: str, fields: list[str] | None = None):
        super().__init__(message)
        self.fields = list(fields or [])


class DomainError(ValueError):
    """Structurally valid input outside an operation's mathematical domain."""
