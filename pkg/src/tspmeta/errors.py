"""Exception types shared across the toolkit.

Everything user-triggerable (bad files, bad configs, oversized inputs)
derives from TspmetaError so the CLI can map it to exit code 2; anything
else escaping a command is an internal failure (exit code 1).
"""

from __future__ import annotations


class TspmetaError(Exception):
    """Base class for all user-facing toolkit errors."""


class DimensionMismatchError(TspmetaError):
    """A tour, swap sequence, or matrix does not match the instance size."""


class InstanceTooLargeError(TspmetaError):
    """The exact solver was asked for more cities than its hard limit."""


class ConfigError(TspmetaError):
    """An algorithm or experiment configuration is invalid."""


class ParseError(TspmetaError):
    """Input text could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class UnsupportedFormatError(ParseError):
    """The input uses a declared-but-unsupported format feature."""
