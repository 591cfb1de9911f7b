"""Univariate polynomials over the rationals.

Coefficients are stored lowest degree first with no trailing zeros, so the
degree is ``len(coeffs) - 1`` and the zero polynomial is the empty tuple.
Every operation returns a new value; gcd/lcm and the squarefree utilities
normalize to monic output, matching the monic convention used for
characteristic polynomials throughout.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class QPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([Fraction(c) for c in coeffs])

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "QPoly":
        return QPoly(())

    @staticmethod
    def one() -> "QPoly":
        return QPoly((1,))

    @staticmethod
    def constant(c) -> "QPoly":
        return QPoly((Fraction(c),))

    @staticmethod
    def x() -> "QPoly":
        return QPoly((0, 1))

    @staticmethod
    def from_roots(roots: Iterable) -> "QPoly":
        p = QPoly.one()
        for r in roots:
            p = p * QPoly((-Fraction(r), 1))
        return p

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial mapped to -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "QPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "QPoly(" + " + ".join(reversed(parts)) + ")"

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def __mul__(self, other: "QPoly") -> "QPoly":
        if self.is_zero() or other.is_zero():
            return QPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(out)

    def scale(self, c) -> "QPoly":
        c = Fraction(c)
        return QPoly([a * c for a in self.coeffs])

    def __divmod__(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return QPoly.zero(), self
        quo = [Fraction(0)] * (dq + 1)
        inv_lead = 1 / other.leading()
        for i in range(dq, -1, -1):
            top = len(other.coeffs) - 1 + i
            if top >= len(rem):
                continue
            q = rem[top] * inv_lead
            if q == 0:
                continue
            quo[i] = q
            for j, b in enumerate(other.coeffs):
                rem[i + j] -= q * b
        return QPoly(quo), QPoly(rem)

    def __floordiv__(self, other: "QPoly") -> "QPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "QPoly") -> "QPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "QPoly") -> "QPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    # -- calculus and evaluation ----------------------------------------

    def derivative(self) -> "QPoly":
        return QPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, value):
        """Horner evaluation; works for any value supporting * and +."""
        if not self.coeffs:
            return Fraction(0) if isinstance(value, (int, Fraction)) else value * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def monic(self) -> "QPoly":
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        lead = self.leading()
        return self if lead == 1 else self.scale(1 / lead)

    def inflate(self, t: int) -> "QPoly":
        """Substitute x^t for x: returns p(x^t)."""
        if t < 1:
            raise ValueError("inflation exponent must be >= 1")
        out = [Fraction(0)] * (len(self.coeffs) * t)
        for i, c in enumerate(self.coeffs):
            out[i * t] = c
        return QPoly(out)

    def compose_linear(self, a, b) -> "QPoly":
        """Return p(a*x + b) by Horner over polynomials."""
        lin = QPoly((Fraction(b), Fraction(a)))
        acc = QPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * lin + QPoly.constant(c)
        return acc


# -- gcd family --------------------------------------------------------


def poly_gcd(p: QPoly, q: QPoly) -> QPoly:
    """Monic gcd by the Euclidean algorithm (re-normalizing each remainder
    keeps coefficient growth harmless at the sizes that occur here)."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.monic()
    return a.monic() if not a.is_zero() else a


def poly_lcm(p: QPoly, q: QPoly) -> QPoly:
    if p.is_zero() or q.is_zero():
        raise ValueError("lcm with the zero polynomial is undefined")
    return (p * q).exact_div(poly_gcd(p, q)).monic()


def squarefree_part(p: QPoly) -> QPoly:
    """p / gcd(p, p'), monic: same roots, all with multiplicity one."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial is undefined")
    if p.degree == 0:
        return QPoly.one()
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()


def squarefree_decomposition(p: QPoly) -> dict[int, QPoly]:
    """Yun's algorithm: return {multiplicity: monic factor}, each factor
    squarefree, factors pairwise coprime, and p = lead * prod f_e^e."""
    if p.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return {}
    out: dict[int, QPoly] = {}
    g = poly_gcd(p, p.derivative())
    w = p.exact_div(g)
    y = p.derivative().exact_div(g)
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        f = poly_gcd(w, z) if not z.is_zero() else w.monic()
        if f.degree > 0:
            out[i] = f.monic()
        w = w.exact_div(f)
        y = z.exact_div(f)
        i += 1
    return out
