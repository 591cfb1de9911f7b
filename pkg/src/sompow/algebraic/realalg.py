"""Exact arithmetic on real algebraic numbers.

A RealAlgebraic is a squarefree rational polynomial plus an isolating
rational interval (a point interval for rational values).  Arithmetic
goes through composed resultant polynomials; the right root of the
composition is re-isolated by shrinking certified interval enclosures.
Instances are immutable: refinement produces new intervals instead of
mutating shared state, so values can be handed around freely.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Callable

from ..exact.intervals import Interval
from ..exact.qpoly import QPoly, poly_gcd, squarefree_part
from ..exact.sturm import isolate_squarefree, refine_interval
from .resultants import (
    neg_poly,
    prod_poly,
    reverse_poly,
    scale_poly,
    shift_poly,
    square_roots_poly,
    strip_zero_roots,
    sum_poly,
)


class DegreeCapExceeded(ArithmeticError):
    """Raised when a composed defining polynomial would exceed the
    configured degree budget; callers treat this as "give up exactly"."""


def degree_cap() -> int:
    return int(os.environ.get("SOMPOW_DEGREE_CAP", "512"))


class RealAlgebraic:
    """An exact real number: root of `poly` isolated by [lo, hi]."""

    __slots__ = ("poly", "lo", "hi")

    def __init__(self, poly: QPoly, lo, hi):
        poly = squarefree_part(poly)
        lo = Fraction(lo)
        hi = Fraction(hi)
        if poly.degree < 1:
            raise ValueError("defining polynomial must have a root")
        if lo > hi:
            raise ValueError("empty interval")
        if poly.degree == 1:
            v = -poly.coeff(0) / poly.coeff(1)
            lo = hi = v
        if lo == hi and poly(lo) != 0:
            raise ValueError("point interval does not hit a root")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("RealAlgebraic is immutable")

    # -- construction ---------------------------------------------------

    @staticmethod
    def from_rational(q) -> "RealAlgebraic":
        q = Fraction(q)
        return RealAlgebraic(QPoly([-q, Fraction(1)]), q, q)

    @staticmethod
    def coerce(v) -> "RealAlgebraic":
        if isinstance(v, RealAlgebraic):
            return v
        return RealAlgebraic.from_rational(v)

    # -- basic queries ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("value is irrational (or not yet pinned)")
        return self.lo

    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def refined(self) -> "RealAlgebraic":
        lo, hi = refine_interval(self.poly, self.lo, self.hi)
        return RealAlgebraic(self.poly, lo, hi)

    def sign(self) -> int:
        if self.is_rational:
            v = self.lo
            return (v > 0) - (v < 0)
        lo, hi = self.lo, self.hi
        if self.poly(Fraction(0)) == 0 and lo < 0 < hi:
            return 0  # the unique isolated root is 0 itself
        while lo < 0 < hi:
            lo, hi = refine_interval(self.poly, lo, hi)
            if lo == hi:
                return (lo > 0) - (lo < 0)
        return 1 if lo >= 0 else -1

    def __bool__(self) -> bool:
        return self.sign() != 0

    def is_root_of(self, g: QPoly) -> bool:
        if g.is_zero():
            return True
        if self.is_rational:
            return g(self.lo) == 0
        h = poly_gcd(self.poly, g)
        if h.degree < 1:
            return False
        cof = self.poly.exact_div(h)
        if cof.degree < 1:
            return True
        lo, hi = self.lo, self.hi
        while True:
            iv = Interval(lo, hi)
            if not _poly_iv(h, iv).contains_zero():
                return False
            if not _poly_iv(cof, iv).contains_zero():
                return True
            lo, hi = refine_interval(self.poly, lo, hi)

    # -- comparisons ------------------------------------------------------

    def compare(self, other) -> int:
        other = RealAlgebraic.coerce(other)
        if self.is_rational and other.is_rational:
            a, b = self.lo, other.lo
            return (a > b) - (a < b)
        if self._same_value(other):
            return 0
        alo, ahi, blo, bhi = self.lo, self.hi, other.lo, other.hi
        while not (ahi < blo or bhi < alo):
            alo, ahi = refine_interval(self.poly, alo, ahi)
            blo, bhi = refine_interval(other.poly, blo, bhi)
        return -1 if ahi < blo else 1

    def _same_value(self, other: "RealAlgebraic") -> bool:
        g = poly_gcd(self.poly, other.poly)
        if g.degree < 1:
            return False
        if not (self.is_root_of(g) and other.is_root_of(g)):
            return False
        # both are roots of the squarefree g; equal iff the same root
        containers = isolate_squarefree(g)
        ca = _locate(g, containers, self)
        cb = _locate(g, containers, other)
        return ca == cb

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RealAlgebraic, Fraction, int)):
            return NotImplemented
        return self.compare(other) == 0

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    __hash__ = None  # value equality + lazy refinement: keep unhashable

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "RealAlgebraic":
        if self.is_rational:
            return RealAlgebraic.from_rational(-self.lo)
        return RealAlgebraic(neg_poly(self.poly), -self.hi, -self.lo)

    def __add__(self, other) -> "RealAlgebraic":
        other = RealAlgebraic.coerce(other)
        if other.is_rational:
            return self._shift(other.lo)
        if self.is_rational:
            return other._shift(self.lo)
        return _binary_op(self, other, sum_poly(self.poly, other.poly),
                          lambda x, y: x + y)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other) -> "RealAlgebraic":
        return self + (-RealAlgebraic.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "RealAlgebraic":
        other = RealAlgebraic.coerce(other)
        if other.is_rational:
            return self._scale(other.lo)
        if self.is_rational:
            return other._scale(self.lo)
        return _binary_op(self, other, prod_poly(self.poly, other.poly),
                          lambda x, y: x * y)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other) -> "RealAlgebraic":
        return self * RealAlgebraic.coerce(other).recip()

    def __rtruediv__(self, other):
        return self.recip() * other

    def _shift(self, c: Fraction) -> "RealAlgebraic":
        if c == 0:
            return self
        if self.is_rational:
            return RealAlgebraic.from_rational(self.lo + c)
        return RealAlgebraic(shift_poly(self.poly, c), self.lo + c, self.hi + c)

    def _scale(self, c: Fraction) -> "RealAlgebraic":
        if c == 0:
            return RealAlgebraic.from_rational(0)
        if self.is_rational:
            return RealAlgebraic.from_rational(self.lo * c)
        lo, hi = self.lo * c, self.hi * c
        if c < 0:
            lo, hi = hi, lo
        return RealAlgebraic(scale_poly(self.poly, c), lo, hi)

    def recip(self) -> "RealAlgebraic":
        s = self.sign()
        if s == 0:
            raise ZeroDivisionError("reciprocal of zero")
        if self.is_rational:
            return RealAlgebraic.from_rational(1 / self.lo)
        stripped, _ = strip_zero_roots(self.poly)
        lo, hi = self.lo, self.hi
        while lo <= 0 <= hi or stripped(lo) == 0 or stripped(hi) == 0:
            lo, hi = refine_interval(self.poly, lo, hi)
        # reciprocals of the nonzero roots are the roots of the reversed
        # polynomial; an isolating interval inverts to an isolating one
        return RealAlgebraic(reverse_poly(stripped), 1 / hi, 1 / lo)

    def square(self) -> "RealAlgebraic":
        if self.is_rational:
            return RealAlgebraic.from_rational(self.lo * self.lo)
        return _unary_op(self, square_roots_poly(self.poly),
                         lambda x: x.square())

    def __abs__(self) -> "RealAlgebraic":
        return -self if self.sign() < 0 else self

    def sqrt(self) -> "RealAlgebraic":
        s = self.sign()
        if s < 0:
            raise ValueError("square root of a negative value")
        if s == 0:
            return RealAlgebraic.from_rational(0)
        if self.is_rational:
            v = self.lo
            num_r = math.isqrt(v.numerator)
            den_r = math.isqrt(v.denominator)
            if num_r * num_r == v.numerator and den_r * den_r == v.denominator:
                return RealAlgebraic.from_rational(Fraction(num_r, den_r))
            defining = QPoly([-v, Fraction(0), Fraction(1)])
            lo, hi = _sqrt_bounds(v, 8)
            return RealAlgebraic(defining, lo, hi)
        defining = squarefree_part(self.poly.inflate(2))
        if defining.degree > degree_cap():
            raise DegreeCapExceeded(f"degree {defining.degree}")
        lo, hi = self.lo, self.hi
        while lo <= 0:
            lo, hi = refine_interval(self.poly, lo, hi)
        prec = 4
        containers = [list(t) for t in isolate_squarefree(defining)]

        def enclose() -> Interval:
            slo, _ = _sqrt_bounds(lo, prec)
            _, shi = _sqrt_bounds(hi, prec)
            return Interval(slo, shi)

        while True:
            iv = enclose()
            hits = [c for c in containers if _touch(c, iv)]
            if len(hits) == 1:
                return RealAlgebraic(defining, hits[0][0], hits[0][1])
            assert hits, "enclosure lost the root"
            for c in containers:
                c[0], c[1] = refine_interval(defining, c[0], c[1])
            lo, hi = refine_interval(self.poly, lo, hi)
            prec += 2

    # -- export -----------------------------------------------------------

    def approx(self, scale: int = 40) -> Fraction:
        """A rational within 2**-scale of the value."""
        eps = Fraction(1, 2 ** scale)
        lo, hi = self.lo, self.hi
        while hi - lo > eps:
            lo, hi = refine_interval(self.poly, lo, hi)
        return (lo + hi) / 2

    def __float__(self) -> float:
        return float(self.approx(64))

    def __repr__(self) -> str:
        if self.is_rational:
            return f"RealAlgebraic({self.lo})"
        return f"RealAlgebraic({self.poly!r} on [{self.lo}, {self.hi}])"


# -- helpers ---------------------------------------------------------------


def _poly_iv(p: QPoly, iv: Interval) -> Interval:
    from ..exact.intervals import poly_interval

    return poly_interval(p.coeffs, iv)


def _touch(container, iv: Interval) -> bool:
    return not (container[1] < iv.lo or iv.hi < container[0])


def _locate(g: QPoly, containers, value: "RealAlgebraic") -> int:
    """Index of the isolating container of g that holds `value` (which
    must be a root of g)."""
    lo, hi = value.lo, value.hi
    boxes = [list(c) for c in containers]
    while True:
        iv = Interval(lo, hi)
        hits = [i for i, c in enumerate(boxes) if _touch(c, iv)]
        if len(hits) == 1:
            return hits[0]
        assert hits, "root escaped every container"
        for c in boxes:
            c[0], c[1] = refine_interval(g, c[0], c[1])
        lo, hi = refine_interval(value.poly, lo, hi)


def real_from_enclosure(
    defining: QPoly,
    enclose: Callable[[], Interval],
    tighten: Callable[[], None],
) -> RealAlgebraic:
    """Build the RealAlgebraic for a value known to be a real root of
    `defining`, given a certified shrinking interval enclosure."""
    sf = squarefree_part(defining)
    if sf.degree > degree_cap():
        raise DegreeCapExceeded(f"degree {sf.degree}")
    containers = [list(t) for t in isolate_squarefree(sf)]
    while True:
        iv = enclose()
        hits = [c for c in containers if _touch(c, iv)]
        if len(hits) == 1:
            return RealAlgebraic(sf, hits[0][0], hits[0][1])
        assert hits, "enclosure excludes every candidate root"
        for c in containers:
            c[0], c[1] = refine_interval(sf, c[0], c[1])
        tighten()


def _binary_op(a: RealAlgebraic, b: RealAlgebraic, defining: QPoly, combine):
    state = {"a": (a.lo, a.hi), "b": (b.lo, b.hi)}

    def enclose() -> Interval:
        alo, ahi = state["a"]
        blo, bhi = state["b"]
        return combine(Interval(alo, ahi), Interval(blo, bhi))

    def tighten() -> None:
        state["a"] = refine_interval(a.poly, *state["a"])
        state["b"] = refine_interval(b.poly, *state["b"])

    return real_from_enclosure(defining, enclose, tighten)


def _unary_op(a: RealAlgebraic, defining: QPoly, combine):
    state = {"a": (a.lo, a.hi)}

    def enclose() -> Interval:
        return combine(Interval(*state["a"]))

    def tighten() -> None:
        state["a"] = refine_interval(a.poly, *state["a"])

    return real_from_enclosure(defining, enclose, tighten)


def _sqrt_bounds(v: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(v) <= hi with hi - lo <= 2**-prec (v >= 0)."""
    if v < 0:
        raise ValueError("negative")
    if v == 0:
        return Fraction(0), Fraction(0)
    n, d = v.numerator, v.denominator
    shift = 1 << prec
    m = math.isqrt(n * d * shift * shift)
    lo = Fraction(m, d * shift)
    hi = Fraction(m + 1, d * shift)
    return lo, hi
