"""Exponential sums  sum_r  c_r * lambda_r^n  with exact rational evaluation.

The sum is stored packed: a single monic squarefree ``modulus`` whose roots
are the bases lambda_r, and a ``coeff`` polynomial whose value at each root
is that base's coefficient.  Because the root multiset of a rational
polynomial is closed under conjugation, evaluation at any n is the rational
number

    value(n) = trace(coeff * x^n  mod modulus)

where the trace of a residue class is the sum of its values over all roots
(computable from Newton power sums, no root-finding involved).

Normalisation strips roots at zero (they contribute nothing for n >= 1) and
roots whose coefficient value is zero, so ``value`` is faithful for n >= 1;
terms that only matter at n = 0 are deliberately out of scope here.
"""

from __future__ import annotations

from fractions import Fraction

from .algebraic.field import ComplexAlgebraic, FieldElement, _half_xgcd
from .algebraic.resultants import lagrange_interpolate, resultant_in_t, strip_zero_roots
from .algebraic.rootsets import RootSet
from .exact.qmatrix import QMatrix, solve_linear
from .exact.qpoly import QPoly, poly_gcd, squarefree_part


def newton_power_sums(m: QPoly, count: int) -> list[Fraction]:
    """Power sums p_j = sum of j-th powers of the roots of monic m, j < count."""
    d = m.degree
    if d < 0 or m.leading() != 1:
        raise ValueError("power sums need a monic polynomial")
    sums = [Fraction(d)]
    for j in range(1, count):
        acc = -j * m.coeff(d - j) if j <= d else Fraction(0)
        for i in range(1, min(j, d + 1)):
            acc -= m.coeff(d - i) * sums[j - i]
        sums.append(Fraction(acc))
    return sums


def trace_of(rep: QPoly, power_sums: list[Fraction]) -> Fraction:
    """Sum of rep's values over the modulus roots, given that modulus' power sums."""
    total = Fraction(0)
    for i, c in enumerate(rep.coeffs):
        total += c * power_sums[i]
    return total


def crt_pair(m1: QPoly, c1: QPoly, m2: QPoly, c2: QPoly) -> QPoly:
    """The residue mod m1*m2 that is c1 mod m1 and c2 mod m2 (coprime moduli)."""
    g, s = _half_xgcd(m1, m2)
    if g.degree != 0:
        raise ValueError("crt moduli are not coprime")
    u = s.scale(Fraction(1) / g.coeff(0))  # u*m1 = 1 mod m2
    m = m1 * m2
    return (c1 + (m1 * u * (c2 - c1)) % m) % m


class ExponentialSum:
    """Conjugate-closed sum of c_r * base_r^n, bases distinct and nonzero."""

    __slots__ = ("modulus", "coeff", "_sums", "_rootset", "_terms")

    def __init__(self, modulus: QPoly, coeff: QPoly):
        modulus, coeff = _normalize(modulus, coeff)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "_sums", None)
        object.__setattr__(self, "_rootset", None)
        object.__setattr__(self, "_terms", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExponentialSum is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "ExponentialSum":
        return ExponentialSum(QPoly.one(), QPoly.zero())

    @staticmethod
    def from_rational_terms(pairs) -> "ExponentialSum":
        """Build from (coeff, base) rational pairs; repeated bases accumulate."""
        by_base: dict[Fraction, Fraction] = {}
        for c, b in pairs:
            b = Fraction(b)
            by_base[b] = by_base.get(b, Fraction(0)) + Fraction(c)
        bases = [b for b, c in sorted(by_base.items()) if c != 0 and b != 0]
        if not bases:
            return ExponentialSum.zero()
        modulus = QPoly.from_roots(bases)
        coeff = lagrange_interpolate(bases, [by_base[b] for b in bases])
        return ExponentialSum(modulus, coeff)

    @staticmethod
    def from_lrs(lrs) -> "ExponentialSum":
        """Exact exponential-sum form of a recurrence with squarefree char poly.

        The returned sum matches the sequence for every n >= 1 (a root at
        zero, when the trailing coefficient vanishes, only affects n = 0).
        """
        char = lrs.char_poly().monic()
        if squarefree_part(char) != char:
            raise ValueError("recurrence characteristic polynomial is not squarefree")
        modulus, dropped = strip_zero_roots(char)
        d = modulus.degree
        if d == 0:
            return ExponentialSum.zero()
        start = 1 if dropped else 0
        sums = newton_power_sums(modulus, 2 * d + start)
        need = lrs.terms(start + d)
        rows = [[sums[j + i] for i in range(d)] for j in range(start, start + d)]
        sol = solve_linear(QMatrix(rows), need[start:])
        return ExponentialSum(modulus, QPoly(sol))

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.modulus.degree == 0

    @property
    def degree(self) -> int:
        """Number of distinct bases."""
        return self.modulus.degree

    def _power_sums(self, count: int) -> list[Fraction]:
        cached = self._sums
        if cached is None or len(cached) < count:
            cached = newton_power_sums(self.modulus, max(count, self.modulus.degree))
            object.__setattr__(self, "_sums", cached)
        return cached

    def rootset(self) -> RootSet:
        rs = self._rootset
        if rs is None:
            rs = RootSet(self.modulus)
            object.__setattr__(self, "_rootset", rs)
        return rs

    def coeff_element(self, index: int) -> FieldElement:
        """Coefficient of the index-th base, as a field element at that root."""
        return FieldElement(self.modulus, self.coeff, self.rootset(), index)

    def base_element(self, index: int) -> FieldElement:
        return FieldElement(
            self.modulus, QPoly.x() % self.modulus, self.rootset(), index
        )

    @property
    def terms(self) -> list[tuple[ComplexAlgebraic, ComplexAlgebraic]]:
        """Materialised (coeff, base) views; bases distinct, conjugate-closed."""
        cached = self._terms
        if cached is None:
            cached = [
                (
                    ComplexAlgebraic.from_field_element(self.coeff_element(i)),
                    ComplexAlgebraic.from_field_element(self.base_element(i)),
                )
                for i in range(self.modulus.degree)
            ]
            object.__setattr__(self, "_terms", cached)
        return list(cached)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentialSum):
            return NotImplemented
        return self.modulus == other.modulus and self.coeff == other.coeff

    def __hash__(self) -> int:
        return hash((self.modulus, self.coeff))

    def __repr__(self) -> str:
        return f"ExponentialSum(modulus={self.modulus!r}, coeff={self.coeff!r})"

    # -- evaluation ---------------------------------------------------

    def value(self, n: int) -> Fraction:
        """Exact value sum_r c_r * base_r^n (faithful for n >= 1)."""
        if n < 0:
            raise ValueError("exponential sums are evaluated at n >= 0")
        if self.is_zero():
            return Fraction(0)
        m = self.modulus
        sums = self._power_sums(m.degree)
        power = QPoly.one()
        x = QPoly.x()
        for bit in bin(n)[2:]:
            power = (power * power) % m
            if bit == "1":
                power = (power * x) % m
        return trace_of((self.coeff * power) % m, sums)

    def values(self, start: int, count: int) -> list[Fraction]:
        """value(start), ..., value(start + count - 1) by iterated stepping."""
        if self.is_zero():
            return [Fraction(0)] * count
        m = self.modulus
        sums = self._power_sums(m.degree)
        x = QPoly.x()
        power = QPoly.one()
        for bit in bin(start)[2:]:
            power = (power * power) % m
            if bit == "1":
                power = (power * x) % m
        out = []
        for _ in range(count):
            out.append(trace_of((self.coeff * power) % m, sums))
            power = (power * x) % m
        return out

    # -- algebra ------------------------------------------------------

    def scale(self, w) -> "ExponentialSum":
        w = Fraction(w)
        if w == 0 or self.is_zero():
            return ExponentialSum.zero()
        return ExponentialSum(self.modulus, self.coeff.scale(w))

    def __add__(self, other: "ExponentialSum") -> "ExponentialSum":
        if not isinstance(other, ExponentialSum):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        m1, c1 = self.modulus, self.coeff
        m2, c2 = other.modulus, other.coeff
        shared = poly_gcd(m1, m2)
        parts: list[tuple[QPoly, QPoly]] = []
        if shared.degree >= 1:
            parts.append((shared, (c1 + c2) % shared))
        only1 = m1.exact_div(shared)
        if only1.degree >= 1:
            parts.append((only1, c1 % only1))
        only2 = m2.exact_div(shared)
        if only2.degree >= 1:
            parts.append((only2, c2 % only2))
        modulus, coeff = parts[0]
        for m, c in parts[1:]:
            coeff = crt_pair(modulus, coeff, m, c)
            modulus = modulus * m
        return ExponentialSum(modulus, coeff)

    def __neg__(self) -> "ExponentialSum":
        return self.scale(-1)

    def __sub__(self, other: "ExponentialSum") -> "ExponentialSum":
        return self + (-other)

    def residue_substitute(self, period: int, residue: int) -> "ExponentialSum":
        """The sum q |-> value(period*q + residue), repacked over bases^period.

        Bases mapping to one common power merge (their residue-weighted
        coefficients add), so the result's bases are distinct again.
        """
        if period < 1 or not 0 <= residue < period:
            raise ValueError("need period >= 1 and 0 <= residue < period")
        if self.is_zero():
            return self
        if period == 1:
            return self
        m = self.modulus
        # Res_t(m(t), x - t^period): roots are the period-th powers of the bases.
        lifted = resultant_in_t(
            m,
            [QPoly.x()] + [QPoly.zero()] * (period - 1) + [QPoly.constant(-1)],
            m.degree,
        )
        new_mod = squarefree_part(lifted).monic()
        d = new_mod.degree
        sums = newton_power_sums(new_mod, 2 * d - 1)
        rows = [[sums[a + b] for b in range(d)] for a in range(d)]
        rhs = [self.value(residue + period * a) for a in range(d)]
        sol = solve_linear(QMatrix(rows), rhs)
        out = ExponentialSum(new_mod, QPoly(sol))
        for probe in range(d, d + 2):
            if out.value(probe) != self.value(residue + period * probe):
                raise AssertionError("residue substitution failed self-check")
        return out


def _normalize(modulus: QPoly, coeff: QPoly) -> tuple[QPoly, QPoly]:
    if modulus.is_zero():
        raise ValueError("zero modulus")
    modulus = modulus.monic()
    if squarefree_part(modulus) != modulus:
        raise ValueError("modulus must be squarefree")
    modulus, _ = strip_zero_roots(modulus)
    coeff = coeff % modulus
    dead = poly_gcd(modulus, coeff)
    if dead.degree >= 1:
        modulus = modulus.exact_div(dead).monic()
        coeff = coeff % modulus
    if modulus.degree == 0:
        return QPoly.one(), QPoly.zero()
    return modulus, coeff
