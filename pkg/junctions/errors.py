# errors.py
"""
Exception types raised by the junctions package.

Library code raises; only cli.py turns these into exit codes.
"""

from __future__ import annotations

from typing import Optional


class JunctionError(Exception):
    """Base class for every error the package raises on purpose."""


class ParamError(JunctionError, ValueError):
    pass


class EmptyCloudError(JunctionError, ValueError):
    pass


class EigenConvergenceError(JunctionError, ArithmeticError):
    pass


class UnknownScenarioError(JunctionError, KeyError):
    def __str__(self) -> str:
        # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class OracleSizeError(JunctionError, ValueError):
    pass


class CloudFormatError(JunctionError, ValueError):
    """Scan or environment file that cannot be parsed."""

    def __init__(self, path: str, message: str, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")


class EmptyFileError(CloudFormatError):
    pass


__all__ = [
    "JunctionError",
    "ParamError",
    "EmptyCloudError",
    "EigenConvergenceError",
    "UnknownScenarioError",
    "OracleSizeError",
    "CloudFormatError",
    "EmptyFileError",
]
