"""Exception hierarchy.

Each class carries the CLI exit code it maps to, so the command layer never
has to pattern-match on messages.
"""


class ItkError(Exception):
    exit_code = 3


class ValidationError(ItkError, ValueError):
    """A cabling tuple violates the iterated torus knot constraints."""

    exit_code = 2

    def __init__(self, message, index=None):
        self.index = index
        if index is not None:
            message = f"pair {index} {message}"
        super().__init__(message)


class ParseError(ItkError, ValueError):
    exit_code = 2


class InvalidSlopeError(ItkError, ValueError):
    exit_code = 2


class DomainError(ItkError, ValueError):
    """Arguments are well-formed but outside an operation's domain."""

    exit_code = 2


class UnsupportedRegimeError(ItkError):
    """The formulas are only established when every P_i is positive."""

    exit_code = 1


class InternalInvariantError(ItkError, AssertionError):
    exit_code = 3
