"""Exceptions shared across modules (the CLI maps them to exit codes)."""


class CapExceeded(Exception):
    """An enumeration or run would exceed its configured cap."""


class InvariantViolation(Exception):
    """A mathematical invariant the library promises was observed to fail."""
