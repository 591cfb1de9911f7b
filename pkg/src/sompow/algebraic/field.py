"""Arithmetic in Q[x]/(m) for squarefree m, with lazy splitting.

Working modulo a *squarefree but possibly reducible* m lets us defer
factoring: every ring operation is plain polynomial arithmetic, and only
inversion can discover a zero divisor, in which case it reports the
factorization it found (a Split) so the caller can redo the computation
modulo each factor.  A FieldElement may optionally carry a reference to
a specific root of m, which turns the residue class into a concrete
complex number with a certified box enclosure.

ComplexAlgebraic is the eager counterpart: exact real and imaginary
parts as RealAlgebraic values, used at the API boundary where individual
eigenvalues and coefficients are exposed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exact.intervals import Box, poly_box
from ..exact.qpoly import QPoly, squarefree_part
from .realalg import RealAlgebraic, real_from_enclosure
from .resultants import halfsum_poly, imag_candidates_poly, resultant_in_t
from .rootsets import Root, RootSet


@dataclass(frozen=True)
class Split:
    """A discovered factorization m = m1 * m2 (both nonconstant)."""

    m1: QPoly
    m2: QPoly


class SplitRequired(Exception):
    def __init__(self, split: Split):
        super().__init__(f"modulus splits: {split.m1!r} * {split.m2!r}")
        self.split = split


class FieldElement:
    """rep(alpha) for alpha a root of the squarefree modulus."""

    __slots__ = ("modulus", "rep", "rootset", "root_index")

    def __init__(self, modulus: QPoly, rep: QPoly,
                 rootset: RootSet | None = None, root_index: int | None = None):
        if modulus.degree < 1 or modulus.leading() != 1:
            raise ValueError("modulus must be monic of positive degree")
        self.modulus = modulus
        self.rep = rep % modulus
        self.rootset = rootset
        self.root_index = root_index
        if rootset is not None:
            assert rootset.poly == modulus, "root reference for a different modulus"

    # -- constructors ---------------------------------------------------

    @staticmethod
    def constant(modulus: QPoly, c) -> "FieldElement":
        return FieldElement(modulus, QPoly.constant(Fraction(c)))

    @staticmethod
    def generator(modulus: QPoly) -> "FieldElement":
        return FieldElement(modulus, QPoly.x())

    def with_root(self, rootset: RootSet, index: int) -> "FieldElement":
        return FieldElement(self.modulus, self.rep, rootset, index)

    def _like(self, rep: QPoly) -> "FieldElement":
        return FieldElement(self.modulus, rep, self.rootset, self.root_index)

    # -- ring operations --------------------------------------------------

    def _check(self, other: "FieldElement") -> None:
        if self.modulus != other.modulus:
            raise ValueError("mixed moduli")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self._like(self.rep + other.rep)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self._like(self.rep - other.rep)

    def __neg__(self) -> "FieldElement":
        return self._like(-self.rep)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self._like((self.rep * other.rep) % self.modulus)

    def scale(self, c) -> "FieldElement":
        return self._like(self.rep.scale(Fraction(c)))

    def __eq__(self, other) -> bool:
        # residue-class equality (ignores any root reference)
        return (
            isinstance(other, FieldElement)
            and self.modulus == other.modulus
            and self.rep == other.rep
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"FieldElement({self.rep!r} mod {self.modulus!r})"

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse; raises SplitRequired on a zero divisor."""
        if self.rep.is_zero():
            raise ZeroDivisionError("inverse of zero residue")
        g, s = _half_xgcd(self.rep, self.modulus)
        if g.degree == 0:
            return self._like(s.scale(1 / g.coeff(0)) % self.modulus)
        cof = self.modulus.exact_div(g).monic()
        raise SplitRequired(Split(g.monic(), cof))

    # -- root-level views ---------------------------------------------------

    def _root(self) -> Root:
        if self.rootset is None or self.root_index is None:
            raise ValueError("element carries no root reference")
        return self.rootset.roots[self.root_index]

    def conj(self) -> "FieldElement":
        root = self._root()
        return FieldElement(
            self.modulus, self.rep, self.rootset,
            self.rootset.conjugate_index(root.index),
        )

    def box(self) -> Box:
        return poly_box(self.rep.coeffs, self._root().box())

    def refine(self) -> None:
        self._root().refine()

    def is_zero_value(self) -> bool:
        """Is rep(alpha) == 0 for this element's specific root?"""
        if self.rep.is_zero():
            return True
        return self.rootset.is_root_of(self.root_index, self.rep)


def field_arith(op: str, a: FieldElement, b: FieldElement) -> FieldElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown field operation {op!r}")


def field_inverse(a: FieldElement) -> FieldElement | Split:
    try:
        return a.inverse()
    except SplitRequired as exc:
        return exc.split


def _half_xgcd(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly]:
    """(g, s) with g = gcd(a, b) and s*a = g (mod b)."""
    r0, r1 = a, b
    s0, s1 = QPoly.one(), QPoly.zero()
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    return r0, s0


def value_poly(modulus: QPoly, rep: QPoly) -> QPoly:
    """A rational polynomial vanishing on rep(alpha) for every root
    alpha of the modulus: Res_t(m(t), x - rep(t))."""
    rep = rep % modulus
    coeffs_t: list[QPoly] = [QPoly([-rep.coeff(0), Fraction(1)])]
    coeffs_t += [QPoly.constant(-rep.coeff(i)) for i in range(1, rep.degree + 1)]
    return resultant_in_t(modulus, coeffs_t, modulus.degree)


class ComplexAlgebraic:
    """Exact complex number with RealAlgebraic real and imaginary parts."""

    __slots__ = ("real_part", "imag_part")

    def __init__(self, real_part: RealAlgebraic, imag_part: RealAlgebraic):
        self.real_part = real_part
        self.imag_part = imag_part

    @staticmethod
    def from_rational(q) -> "ComplexAlgebraic":
        return ComplexAlgebraic(
            RealAlgebraic.from_rational(q), RealAlgebraic.from_rational(0)
        )

    @staticmethod
    def from_real(r: RealAlgebraic) -> "ComplexAlgebraic":
        return ComplexAlgebraic(r, RealAlgebraic.from_rational(0))

    @staticmethod
    def from_field_element(fe: FieldElement) -> "ComplexAlgebraic":
        """Exact real/imaginary parts of rep(alpha)."""
        if fe.rep.is_zero():
            return ComplexAlgebraic.from_rational(0)
        if fe.rep.degree == 0:
            return ComplexAlgebraic.from_rational(fe.rep.coeff(0))
        defining = squarefree_part(value_poly(fe.modulus, fe.rep))
        values = RootSet(defining)
        target = _locate_value(fe, values)
        root = values.roots[target]
        if root.is_real:
            lo, hi = root.real_interval()
            return ComplexAlgebraic.from_real(RealAlgebraic(defining, lo, hi))
        re = real_from_enclosure(
            halfsum_poly(defining), lambda: fe.box().re, fe.refine
        )
        im = real_from_enclosure(
            imag_candidates_poly(defining), lambda: fe.box().im, fe.refine
        )
        return ComplexAlgebraic(re, im)

    # -- queries ----------------------------------------------------------

    def is_real(self) -> bool:
        return self.imag_part.sign() == 0

    def is_rational(self) -> bool:
        return self.is_real() and self.real_part.is_rational

    def is_zero(self) -> bool:
        return self.real_part.sign() == 0 and self.imag_part.sign() == 0

    def box(self) -> Box:
        return Box(self.real_part.interval(), self.imag_part.interval())

    def modulus_squared(self) -> RealAlgebraic:
        return self.real_part.square() + self.imag_part.square()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexAlgebraic):
            return NotImplemented
        return (
            self.real_part.compare(other.real_part) == 0
            and self.imag_part.compare(other.imag_part) == 0
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"ComplexAlgebraic({self.real_part!r} + {self.imag_part!r} i)"

    # -- arithmetic ---------------------------------------------------------

    def conjugate(self) -> "ComplexAlgebraic":
        return ComplexAlgebraic(self.real_part, -self.imag_part)

    def __neg__(self) -> "ComplexAlgebraic":
        return ComplexAlgebraic(-self.real_part, -self.imag_part)

    def __add__(self, other: "ComplexAlgebraic") -> "ComplexAlgebraic":
        return ComplexAlgebraic(
            self.real_part + other.real_part, self.imag_part + other.imag_part
        )

    def __sub__(self, other: "ComplexAlgebraic") -> "ComplexAlgebraic":
        return self + (-other)

    def __mul__(self, other: "ComplexAlgebraic") -> "ComplexAlgebraic":
        a, b = self.real_part, self.imag_part
        c, d = other.real_part, other.imag_part
        return ComplexAlgebraic(a * c - b * d, a * d + b * c)


def _locate_value(fe: FieldElement, values: RootSet) -> int:
    """Which root of `values.poly` equals rep(alpha)?  Shrink both sides
    until the value box intersects exactly one candidate box."""
    while True:
        vb = fe.box()
        hits = [
            r.index for r in values.roots if vb.intersects(r.box())
        ]
        if len(hits) == 1:
            return hits[0]
        assert hits, "value box misses every root of its defining polynomial"
        fe.refine()
        for r in values.roots:
            r.refine()
