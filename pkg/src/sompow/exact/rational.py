"""Rational scalars.

The scalar everywhere is :class:`fractions.Fraction`: arbitrary precision,
kept in lowest terms with a positive denominator after every operation,
which is exactly the canonical form the rest of the code base assumes.
This module adds only the string form used by the JSON layer: ``"p/q"``,
or just ``"p"`` when the denominator is 1.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def rat(value) -> Fraction:
    """Coerce ints, strings and Fractions to a canonical Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    """Render ``p/q`` with the sign on the numerator, ``p`` when q == 1.

    >>> format_rational(Fraction(-3, 6))
    '-1/2'
    >>> format_rational(Fraction(7))
    '7'
    """
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    """Inverse of :func:`format_rational`; rejects floats and empty input."""
    text = s.strip()
    if not text:
        raise ValueError("empty rational string")
    if "." in text or "e" in text or "E" in text:
        raise ValueError(f"rational strings must be exact, got {text!r}")
    return Fraction(text)
