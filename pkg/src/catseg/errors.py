"""Exception hierarchy shared across the toolkit.

The split mirrors the CLI exit codes: parse errors for malformed input
files, validation errors for well-formed input that breaks a contract
(misaligned tokens, bad configuration, violated invariants).
"""


class CatsegError(Exception):
    """Base class for all toolkit errors."""


class ParseError(CatsegError):
    """A file or string could not be parsed. Messages carry line numbers."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(CatsegError):
    """Well-formed input that violates a documented invariant."""


class AlignmentError(ValidationError):
    """Token sequences that should match do not."""


class ConfigError(ValidationError):
    """A resource references something unknown (guard id, rule name)."""
