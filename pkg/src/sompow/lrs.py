"""Linear recurrence sequences over Q and the algebra on them:
companion/generator matrices, exact term evaluation, scaling, summing,
and interleaving.

Conventions: an LRS of order k satisfies
    u_n = a_{k-1} u_{n-1} + ... + a_1 u_{n-k+1} + a_0 u_{n-k}
with coefficients stored leading-lag first (a_{k-1}, ..., a_0) and
initial values (u_0, ..., u_{k-1}).  A trailing coefficient a_0 = 0 is
allowed (the stated order is then an upper bound on the true order):
sequences extracted from singular matrices need this.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._accel import lrs_terms
from .exact.qmatrix import QMatrix
from .exact.qpoly import QPoly, poly_lcm


@dataclass(frozen=True)
class LRS:
    order: int
    coeffs: tuple[Fraction, ...]  # (a_{k-1}, ..., a_0)
    initial: tuple[Fraction, ...]  # (u_0, ..., u_{k-1})

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "initial", tuple(Fraction(v) for v in self.initial))
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if len(self.coeffs) != self.order or len(self.initial) != self.order:
            raise ValueError("coefficient and initial lists must match the order")

    @staticmethod
    def from_char_poly(p: QPoly, initial) -> "LRS":
        """Recurrence whose characteristic polynomial is the monic p."""
        p = p.monic()
        k = p.degree
        if k < 1:
            raise ValueError("characteristic polynomial must be nonconstant")
        coeffs = tuple(-p.coeff(k - 1 - i) for i in range(k))
        return LRS(k, coeffs, tuple(initial))

    def char_poly(self) -> QPoly:
        """x^k - a_{k-1} x^{k-1} - ... - a_0."""
        cs = [-self.coeffs[self.order - 1 - i] for i in range(self.order)]
        return QPoly(cs + [Fraction(1)])

    def terms(self, count: int) -> list[Fraction]:
        """The first `count` terms u_0, ..., u_{count-1}."""
        if count <= 0:
            return []
        nums, dens = lrs_terms(
            [c.numerator for c in self.coeffs],
            [c.denominator for c in self.coeffs],
            [v.numerator for v in self.initial],
            [v.denominator for v in self.initial],
            count,
        )
        return [Fraction(n, d) for n, d in zip(nums, dens)]

    def term(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("term index must be non-negative")
        if n < self.order:
            return self.initial[n]
        return self.terms(n + 1)[n]


def term(lrs: LRS, n: int) -> Fraction:
    return lrs.term(n)


def companion_matrix(lrs: LRS) -> QMatrix:
    """k x k matrix with first column (a_{k-1}, ..., a_0) and an identity
    block on the superdiagonal; its eigenvalues are the characteristic
    roots of the recurrence."""
    k = lrs.order
    rows = []
    for i in range(k):
        row = [Fraction(0)] * k
        row[0] = lrs.coeffs[i]
        if i + 1 < k:
            row[i + 1] = Fraction(1)
        rows.append(row)
    return QMatrix(rows)


def generator_matrix(lrs: LRS) -> QMatrix:
    """(k+1) x (k+1) block matrix [[0, u], [0, M]] with the reversed
    initial row u = (u_{k-1}, ..., u_0); its powers read off the
    sequence: term(lrs, n) equals the top-right entry of G^(n+1)."""
    k = lrs.order
    m = companion_matrix(lrs)
    rows = [[Fraction(0)] + [lrs.initial[k - 1 - j] for j in range(k)]]
    for i in range(k):
        rows.append([Fraction(0)] + list(m.row(i)))
    return QMatrix(rows)


def scale(w, lrs: LRS) -> LRS:
    """Same recurrence, every term multiplied by w."""
    w = Fraction(w)
    return LRS(lrs.order, lrs.coeffs, tuple(w * v for v in lrs.initial))


def lrs_sum(x: LRS, y: LRS) -> LRS:
    """An LRS computing term(x, n) + term(y, n); its characteristic
    polynomial is lcm(p_x, p_y)."""
    p = poly_lcm(x.char_poly(), y.char_poly())
    d = p.degree
    xs = x.terms(d)
    ys = y.terms(d)
    return LRS.from_char_poly(p, [a + b for a, b in zip(xs, ys)])


# the operation is called "sum" at the API level; the module-level alias
# keeps that name available without shadowing builtins internally
sum = lrs_sum  # noqa: A001


def interleave(seqs: list[LRS]) -> LRS:
    """Braid t sequences with identical recurrences into one LRS of
    order t*k: term(out, t*n + s) = term(seqs[s], n)."""
    if not seqs:
        raise ValueError("nothing to interleave")
    t = len(seqs)
    k = seqs[0].order
    for s in seqs[1:]:
        if s.order != k or s.coeffs != seqs[0].coeffs:
            raise ValueError("interleaving requires identical recurrences")
    if t == 1:
        return seqs[0]
    p = seqs[0].char_poly().inflate(t)
    initial = [Fraction(0)] * (t * k)
    for i, s in enumerate(seqs):
        for j in range(k):
            initial[t * j + i] = s.initial[j]
    return LRS.from_char_poly(p, initial)
