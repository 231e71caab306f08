"""
Exception hierarchy with CLI exit codes
"""
from typing import Any, Optional


class TropMorseError(Exception):
    """Base error; ``exit_code`` is what the CLI returns for it"""

    exit_code: int = 3

    def __init__(self, detail: str, context: Optional[dict] = None):
        super().__init__(detail)
        self.detail = detail
        self.context = context or {}


class PermissibilityError(TropMorseError):
    """A divisor (or polytope) failed validation"""

    exit_code = 1

    def __init__(self, detail: str, report: Any = None, context: Optional[dict] = None):
        super().__init__(detail, context)
        self.report = report


class NotFullDimensionalError(PermissibilityError):
    """An interior-dependent operation was asked of a lower-dimensional polytope"""


class DegenerateDivisorError(TropMorseError):
    """The linear part of a quadratic divisor (or a lattice basis) is singular"""

    exit_code = 1


class TheoremMismatchError(TropMorseError):
    """Both sides of an identity were computed and disagree"""

    exit_code = 2


class InputError(TropMorseError):
    """Unreadable file, bad JSON or a schema violation"""

    exit_code = 3


class StructuralError(InputError):
    """Malformed references, e.g. an edge citing an unknown vertex"""
