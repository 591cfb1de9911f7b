"""Resultants and composed polynomials.

This is the workhorse behind every "the sum/product/ratio of algebraic
numbers is algebraic" step: given defining polynomials for a and b, build
a rational polynomial vanishing on a+b, a*b, a/b, ... .  Univariate
resultants go through a fraction-free Bareiss determinant of the
Sylvester matrix; parametric ones are recovered by evaluation and
Lagrange interpolation, skipping sample points where the leading
coefficient degenerates.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import lcm

from ..exact.qpoly import QPoly


def det_bareiss_int(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss, division-free in
    the sense that every division is exact)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot_row = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot_row is None:
                return 0
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_exact(rows: list[list[Fraction]]) -> Fraction:
    """Determinant over Q: clear each row to integers, Bareiss, rescale."""
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        mult = lcm(*(v.denominator for v in row)) if row else 1
        scale *= mult
        int_rows.append([int(v * mult) for v in row])
    return Fraction(det_bareiss_int(int_rows), 1) / scale


def sylvester(p: QPoly, q: QPoly) -> list[list[Fraction]]:
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))  # highest degree first
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (n - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (m - 1 - i))
    assert all(len(r) == size for r in rows)
    return rows


def resultant(p: QPoly, q: QPoly) -> Fraction:
    """Res(p, q) over Q.  Zero iff p and q share a root."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant with the zero polynomial")
    if p.degree == 0:
        return p.leading() ** q.degree
    if q.degree == 0:
        return q.leading() ** p.degree
    return det_exact(sylvester(p, q))


def resultant_in_t(f: QPoly, g_coeffs: list[QPoly], degree_bound: int) -> QPoly:
    """Res_t(f(t), g(x, t)) as a polynomial in x.

    g is given by its coefficients in t (lowest t-degree first), each a
    QPoly in x.  Evaluates at integer sample points x = s and
    interpolates; samples where g's leading t-coefficient vanishes are
    skipped (the Sylvester specialization is wrong there).
    """
    dt = len(g_coeffs) - 1
    while dt >= 0 and g_coeffs[dt].is_zero():
        dt -= 1
    if dt < 0:
        raise ValueError("g vanishes identically")
    lead = g_coeffs[dt]
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    s = 0
    while len(xs) <= degree_bound:
        for cand in ((s, -s) if s else (0,)):
            c = Fraction(cand)
            if lead(c) == 0 or any(v == c for v in xs):
                continue
            g_at = QPoly([coeff(c) for coeff in g_coeffs[: dt + 1]])
            xs.append(c)
            ys.append(resultant(f, g_at))
            if len(xs) > degree_bound:
                break
        s += 1
    return lagrange_interpolate(xs, ys)


def lagrange_interpolate(xs: list[Fraction], ys: list[Fraction]) -> QPoly:
    acc = QPoly.zero()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = QPoly.constant(yi)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = basis * QPoly([-xj, 1]).scale(1 / (xi - xj))
        acc = acc + basis
    return acc


# -- composed polynomials ----------------------------------------------
#
# Each builder returns a *nonzero* rational polynomial whose root set
# contains the advertised combinations; callers take squarefree parts and
# pick their root by interval refinement.


def sum_poly(p: QPoly, q: QPoly) -> QPoly:
    """Roots: a + b for all roots a of p, b of q (Res_t(p(t), q(x - t)))."""
    # q(x - t) as a polynomial in t with QPoly-in-x coefficients:
    # expand via Horner in (x - t)
    coeffs_t: list[QPoly] = [QPoly.zero()] * (q.degree + 1)
    coeffs_t[0] = QPoly.constant(q.coeffs[-1])
    # multiply accumulator by (x - t) repeatedly, adding next coefficient
    for c in reversed(q.coeffs[:-1]):
        nxt = [QPoly.zero()] * (q.degree + 1)
        for i, ci in enumerate(coeffs_t):
            if ci.is_zero():
                continue
            nxt[i] = nxt[i] + ci * QPoly.x()  # * x
            if i + 1 <= q.degree:
                nxt[i + 1] = nxt[i + 1] - ci  # * (-t)
        nxt[0] = nxt[0] + QPoly.constant(c)
        coeffs_t = nxt
    return resultant_in_t(p, coeffs_t, p.degree * q.degree)


def prod_poly(p: QPoly, q: QPoly) -> QPoly:
    """Roots: a * b (Res_t(p(t), t^deg(q) * q(x/t)))."""
    dq = q.degree
    coeffs_t = [QPoly.zero()] * (dq + 1)
    for i, c in enumerate(q.coeffs):
        # term c * x^i * t^(dq - i)
        mono = [Fraction(0)] * (i + 1)
        mono[i] = c
        coeffs_t[dq - i] = QPoly(mono)
    return resultant_in_t(p, coeffs_t, p.degree * dq)


def neg_poly(p: QPoly) -> QPoly:
    """Roots: -a."""
    return QPoly([c if i % 2 == 0 else -c for i, c in enumerate(p.coeffs)])


def reverse_poly(p: QPoly) -> QPoly:
    """Roots: 1/a; requires p(0) != 0."""
    if p.coeff(0) == 0:
        raise ValueError("cannot invert roots of a polynomial vanishing at 0")
    return QPoly(list(reversed(p.coeffs)))


def ratio_poly(p: QPoly, q: QPoly) -> QPoly:
    """Roots: a / b for roots a of p and nonzero roots b of q."""
    qq = q
    while qq.coeff(0) == 0:
        qq = QPoly(qq.coeffs[1:])  # strip zero roots
        if qq.is_zero():
            raise ValueError("all roots of the divisor polynomial are zero")
    return prod_poly(p, reverse_poly(qq))


def scale_poly(p: QPoly, c) -> QPoly:
    """Roots: c * a, for rational c != 0."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("scaling roots by zero")
    # p(x/c) * c^deg
    return QPoly([a * c ** (p.degree - i) for i, a in enumerate(p.coeffs)])


def shift_poly(p: QPoly, c) -> QPoly:
    """Roots: a + c for rational c."""
    return p.compose_linear(1, -Fraction(c))


def even_part(p: QPoly) -> QPoly:
    """For p with p(-x) = +-p(x) and p(0) != 0: the E with E(x^2) = p(x)."""
    if p.coeff(0) == 0:
        raise ValueError("strip zero roots before taking the even part")
    if any(c != 0 for c in p.coeffs[1::2]):
        raise ValueError("polynomial is not even")
    return QPoly(p.coeffs[0::2])


def strip_zero_roots(p: QPoly) -> tuple[QPoly, int]:
    """Divide out x^e; returns (p / x^e, e)."""
    e = 0
    coeffs = list(p.coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        e += 1
    return QPoly(coeffs), e


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: QPoly) -> list[Fraction]:
    """All rational roots of p, ascending (rational root theorem, exact tests)."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    stripped, zeros = strip_zero_roots(p)
    found = [Fraction(0)] if zeros else []
    if stripped.degree >= 1:
        den = 1
        for c in stripped.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in stripped.coeffs]
        content = 0
        for v in ints:
            content = math.gcd(content, v)
        ints = [v // content for v in ints]
        for num in _divisors(ints[0]):
            for d in _divisors(ints[-1]):
                if math.gcd(num, d) != 1:
                    continue
                for cand in (Fraction(num, d), Fraction(-num, d)):
                    if stripped(cand) == 0:
                        found.append(cand)
    return sorted(set(found))


def square_roots_poly(p: QPoly) -> QPoly:
    """Roots: a^2 for every root a of p (degree preserved)."""
    # p(x) * p(-x) is even; its even part has the squares as roots
    prod = p * neg_poly(p)
    stripped, e = strip_zero_roots(prod)
    even = even_part(stripped)
    if e:
        # reattach squared zero roots: (x - 0)^(e/2); e is even since
        # zero roots of p appear in both factors
        even = even * QPoly([Fraction(0)] * (e // 2) + [Fraction(1)])
    return even


def halfsum_poly(p: QPoly) -> QPoly:
    """Roots: (a + b) / 2 over all root pairs of p (real-part candidates)."""
    s = sum_poly(p, p)
    return scale_poly(s, Fraction(1, 2))


def difference_poly(p: QPoly) -> QPoly:
    """Roots: a - b over all root pairs of p."""
    return sum_poly(p, neg_poly(p))


def imag_candidates_poly(p: QPoly) -> QPoly:
    """A polynomial whose positive real roots include every |Im(root)|
    over the non-real roots of p."""
    d = difference_poly(p)
    stripped, _ = strip_zero_roots(d)
    # root differences come in +-pairs, so the stripped part is even
    e = even_part(stripped) if all(c == 0 for c in stripped.coeffs[1::2]) else None
    if e is None:
        # multiplicity bookkeeping can leave an odd cofactor; force the
        # symmetric closure before extracting
        sym = stripped * neg_poly(stripped)
        sym, _ = strip_zero_roots(sym)
        e = even_part(sym)
    # lambda - conj(lambda) = 2bi, so (2bi)^2 = -4b^2 is a root of e;
    # substitute u = -4 y^2
    subs = QPoly.zero()
    for i, c in enumerate(e.coeffs):
        term = [Fraction(0)] * (2 * i) + [c * Fraction(-4) ** i]
        subs = subs + QPoly(term)
    return subs
