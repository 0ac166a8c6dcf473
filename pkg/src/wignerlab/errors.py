"""Exception types shared across the library."""


class ConfigurationError(ValueError):
    """Unknown distribution/kernel names or a malformed experiment config."""


class DomainError(ValueError):
    """An argument lies outside an operation's mathematical domain."""


class NumericError(RuntimeError):
    """A numerical routine failed (lost bracket, no convergence, ...)."""
