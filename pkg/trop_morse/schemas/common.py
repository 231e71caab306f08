"""
Shared schema pieces: exact rational strings and graded-module tables
"""
from fractions import Fraction
from typing import Annotated, Any, List, Tuple

from pydantic import BaseModel, BeforeValidator, Field

from trop_morse.core.exceptions import InputError
from trop_morse.core.validators import InputValidator
from trop_morse.geometry.graded import GradedModule


def _canonical_rational(value: Any) -> str:
    try:
        return InputValidator.format_rational(InputValidator.parse_rational(value))
    except InputError as e:
        raise ValueError(e.detail)


# "p/q" or integer string (bare ints accepted), normalized on the way in
RationalStr = Annotated[str, BeforeValidator(_canonical_rational)]

Betti = List[Tuple[int, Annotated[int, Field(ge=0)]]]


def to_fraction(value: str) -> Fraction:
    return InputValidator.parse_rational(value)


def module_pairs(module: GradedModule) -> Betti:
    return [(d, r) for d, r in module.to_pairs()]


class PointSchema(BaseModel):
    """One labelled point with its local Morse data"""
    label: str = Field(..., min_length=1)
    lmd: Betti = Field(default_factory=list)

    def module(self) -> GradedModule:
        return GradedModule.from_pairs(self.lmd)
