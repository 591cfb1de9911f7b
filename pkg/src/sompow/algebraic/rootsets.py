"""Certified isolation of all complex roots of a squarefree rational
polynomial.

Real roots come from Sturm bisection.  Non-real roots are located on a
candidate grid: candidate real parts are the real roots of the
"half-sum" polynomial (roots (a+b)/2 over all root pairs, which includes
every Re(root)), candidate imaginary parts come from the root-difference
polynomial (every root difference, in particular lambda - conj(lambda) =
2i*Im).  Grid cells are pruned with rational interval arithmetic until
exactly the right number survive; a counting argument makes that loop
terminate, and isolation of the candidate coordinates guarantees each
surviving cell holds exactly one root with positive imaginary part.
"""

from __future__ import annotations

from fractions import Fraction

from ..exact.intervals import Box, Interval, poly_box
from ..exact.qpoly import QPoly, squarefree_part
from ..exact.sturm import isolate_squarefree, refine_interval
from .resultants import halfsum_poly, imag_candidates_poly


def _isolates_positive_root(p: QPoly, lo: Fraction, hi: Fraction) -> bool:
    """Is the single root isolated by (lo, hi) strictly positive?
    Point intervals pin the root; sign-change intervals have non-root
    endpoints, so a sign comparison against 0 settles it."""
    if lo == hi:
        return lo > 0
    if hi <= 0:
        return False
    if lo >= 0:
        return True
    if p(Fraction(0)) == 0:
        return False  # the one root inside must be 0 itself
    return p(Fraction(0)) * p(hi) < 0


class _RealSlot:
    """A refinable isolating interval for one real root of `poly`."""

    __slots__ = ("poly", "lo", "hi")

    def __init__(self, poly: QPoly, lo: Fraction, hi: Fraction):
        self.poly = poly
        self.lo = lo
        self.hi = hi

    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def refine(self) -> None:
        self.lo, self.hi = refine_interval(self.poly, self.lo, self.hi)

    def refine_below_width(self, w: Fraction) -> None:
        while self.hi - self.lo > w:
            self.refine()


class Root:
    """One root of the owning RootSet.

    Real roots carry an interval; non-real roots carry independent
    refinable intervals for the real part and the |imaginary| part plus
    the sign of the imaginary part.  `box()` always returns a rational
    rectangle certified to contain the root, and `refine()` shrinks it.
    """

    __slots__ = ("index", "is_real", "_re", "_im", "im_sign")

    def __init__(self, index: int, re_slot: _RealSlot, im_slot: _RealSlot | None, im_sign: int):
        self.index = index
        self.is_real = im_slot is None
        self._re = re_slot
        self._im = im_slot
        self.im_sign = im_sign  # 0 for real roots, else +1 / -1

    def box(self) -> Box:
        re = self._re.interval()
        if self._im is None:
            return Box(re, Interval.point(Fraction(0)))
        im = self._im.interval()
        if self.im_sign < 0:
            im = -im
        return Box(re, im)

    def real_interval(self) -> tuple[Fraction, Fraction]:
        if not self.is_real:
            raise ValueError("not a real root")
        return self._re.lo, self._re.hi

    def refine(self) -> None:
        self._re.refine()
        if self._im is not None:
            self._im.refine()


class RootSet:
    """All complex roots of a squarefree polynomial, in a canonical
    order: real roots ascending, then conjugate pairs sorted by
    (real part, |imaginary part|), each pair listed +Im before -Im.

    `conjugate_index(i)` maps a root to its complex conjugate (fixed
    point for real roots).
    """

    def __init__(self, poly: QPoly):
        poly = squarefree_part(poly)
        if poly.degree < 1:
            raise ValueError("need a polynomial with at least one root")
        self.poly = poly
        self.roots: list[Root] = []
        self._isolate()

    def __len__(self) -> int:
        return len(self.roots)

    def conjugate_index(self, i: int) -> int:
        r = self.roots[i]
        if r.is_real:
            return i
        partner = i + 1 if r.im_sign > 0 else i - 1
        return partner

    def real_root_values(self) -> list[tuple[Fraction, Fraction]]:
        return [(r._re.lo, r._re.hi) for r in self.roots if r.is_real]

    # -- isolation ------------------------------------------------------

    def _isolate(self) -> None:
        p = self.poly
        real_intervals = isolate_squarefree(p)
        idx = 0
        for lo, hi in real_intervals:
            self.roots.append(Root(idx, _RealSlot(p, lo, hi), None, 0))
            idx += 1

        n_pairs = (p.degree - len(real_intervals)) // 2
        if n_pairs == 0:
            return

        re_poly = squarefree_part(halfsum_poly(p))
        im_poly = squarefree_part(imag_candidates_poly(p))
        re_slots = [_RealSlot(re_poly, lo, hi) for lo, hi in isolate_squarefree(re_poly)]
        im_slots = []
        for lo, hi in isolate_squarefree(im_poly):
            if not _isolates_positive_root(im_poly, lo, hi):
                continue
            slot = _RealSlot(im_poly, lo, hi)
            # make the interval strictly positive so boxes stay honest
            while slot.lo <= 0:
                slot.refine()
            im_slots.append(slot)

        cells = [(r, s) for r in re_slots for s in im_slots]
        while True:
            survivors = []
            for r, s in cells:
                box = Box(r.interval(), s.interval())
                if poly_box(p.coeffs, box).contains_zero():
                    survivors.append((r, s))
            if len(survivors) == n_pairs:
                cells = survivors
                break
            if len(survivors) < n_pairs:
                raise AssertionError("lost a root cell while pruning")
            for r, s in survivors:
                r.refine()
                s.refine()
            cells = survivors

        # deterministic order: by position of the coordinate slots
        re_order = {id(r): k for k, r in enumerate(re_slots)}
        im_order = {id(s): k for k, s in enumerate(im_slots)}
        cells.sort(key=lambda c: (re_order[id(c[0])], im_order[id(c[1])]))
        idx = len(self.roots)
        for r, s in cells:
            self.roots.append(Root(idx, r, s, +1))
            self.roots.append(Root(idx + 1, r, s, -1))
            idx += 2

    # -- membership -----------------------------------------------------

    def is_root_of(self, i: int, g: QPoly) -> bool:
        """Does root i satisfy g = 0?  Exact, via gcd splitting."""
        from ..exact.qpoly import poly_gcd

        if g.is_zero():
            return True
        h = poly_gcd(self.poly, g)
        if h.degree < 1:
            return False
        cof = self.poly.exact_div(h)
        if cof.degree < 1:
            return True
        root = self.roots[i]
        while True:
            box = root.box()
            if not poly_box(h.coeffs, box).contains_zero():
                return False
            if not poly_box(cof.coeffs, box).contains_zero():
                return True
            root.refine()
