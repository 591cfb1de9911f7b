"""Exact interval and rectangle arithmetic with rational endpoints.

Used to drive every refinement loop in the algebraic layer: enclosures
are always correct (outward) and all endpoints stay rational, so a bound
proved here is a proof, not an estimate.
"""

from __future__ import annotations

from fractions import Fraction


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: {lo} > {hi}")
        self.lo = lo
        self.hi = hi

    @staticmethod
    def point(v) -> "Interval":
        v = Fraction(v)
        return Interval(v, v)

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, Interval) and (self.lo, self.hi) == (other.lo, other.hi)

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other: "Interval") -> "Interval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    def scale(self, c) -> "Interval":
        c = Fraction(c)
        if c >= 0:
            return Interval(self.lo * c, self.hi * c)
        return Interval(self.hi * c, self.lo * c)

    def square(self) -> "Interval":
        if self.lo >= 0:
            return Interval(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return Interval(self.hi * self.hi, self.lo * self.lo)
        return Interval(0, max(self.lo * self.lo, self.hi * self.hi))

    def recip(self) -> "Interval":
        if self.contains_zero():
            raise ZeroDivisionError("reciprocal of an interval containing zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, v) -> bool:
        return self.lo <= Fraction(v) <= self.hi

    def strictly_positive(self) -> bool:
        return self.lo > 0

    def strictly_negative(self) -> bool:
        return self.hi < 0

    def abs_upper(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def abs_lower(self) -> Fraction:
        if self.contains_zero():
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def is_inside(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi


def poly_interval(coeffs, iv: Interval) -> Interval:
    """Enclosure of a rational-coefficient polynomial over an interval
    (Horner with interval arithmetic; coefficients lowest-first)."""
    acc = Interval.point(0)
    for c in reversed(list(coeffs)):
        acc = acc * iv + Interval.point(c)
    return acc


class Box:
    """Rectangular complex enclosure: re + i*im, both rational intervals."""

    __slots__ = ("re", "im")

    def __init__(self, re: Interval, im: Interval):
        self.re = re
        self.im = im

    @staticmethod
    def point(re, im=0) -> "Box":
        return Box(Interval.point(re), Interval.point(im))

    def __repr__(self) -> str:
        return f"Box(re={self.re}, im={self.im})"

    def __add__(self, other: "Box") -> "Box":
        return Box(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Box") -> "Box":
        return Box(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Box":
        return Box(-self.re, -self.im)

    def __mul__(self, other: "Box") -> "Box":
        return Box(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "Box":
        return Box(self.re, -self.im)

    def modulus_squared(self) -> Interval:
        return self.re.square() + self.im.square()

    def recip(self) -> "Box":
        m = self.modulus_squared()
        inv = m.recip()
        return Box(self.re * inv, (-self.im) * inv)

    def __truediv__(self, other: "Box") -> "Box":
        return self * other.recip()

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def is_inside(self, other: "Box") -> bool:
        return self.re.is_inside(other.re) and self.im.is_inside(other.im)

    def intersects(self, other: "Box") -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)


def poly_box(coeffs, box: Box) -> Box:
    """Enclosure of a rational polynomial at a complex rectangle."""
    acc = Box.point(0)
    for c in reversed(list(coeffs)):
        acc = acc * box + Box.point(c)
    return acc
