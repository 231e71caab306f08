"""
Input validation utilities: exact rationals and fixture references
"""
import re
from fractions import Fraction
from typing import Tuple, Union

from trop_morse.core.exceptions import InputError

RationalLike = Union[str, int, Fraction]


class InputValidator:
    """Validators for user input"""

    # "p/q" or an integer, optional sign, no whitespace inside
    RATIONAL_PATTERN = re.compile(r'^[+-]?\d+(/\d+)?$')

    # fixture:<name>/<args>
    FIXTURE_PATTERN = re.compile(r'^fixture:([a-z0-9-]+)(?:/([A-Za-z0-9,.-]*))?$')

    @staticmethod
    def parse_rational(value: RationalLike) -> Fraction:
        """
        Parse an exact rational

        Args:
            value: "p/q" string, integer string, int or Fraction

        Returns:
            Fraction in lowest terms

        Raises:
            InputError: If the value is not an exact rational
        """
        if isinstance(value, bool):
            raise InputError(f"Expected a rational, got boolean {value!r}")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if not isinstance(value, str):
            raise InputError(f"Expected a rational string, got {type(value).__name__}")

        text = value.strip()
        if not InputValidator.RATIONAL_PATTERN.match(text):
            raise InputError(f"Invalid rational {value!r}; use 'p/q' or an integer")

        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise InputError(f"Zero denominator in {value!r}")

    @staticmethod
    def format_rational(value: Fraction) -> str:
        """Canonical "p/q" form with q > 0 and gcd 1; integers print bare"""
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    @staticmethod
    def parse_fixture(reference: str) -> Tuple[str, str]:
        """
        Split a ``fixture:<name>/<args>`` reference

        Raises:
            InputError: If the reference is malformed
        """
        match = InputValidator.FIXTURE_PATTERN.match(reference.strip())
        if not match:
            raise InputError(f"Invalid fixture reference {reference!r}")
        return match.group(1), match.group(2) or ""

    @staticmethod
    def is_fixture(reference: str) -> bool:
        return reference.startswith("fixture:")
