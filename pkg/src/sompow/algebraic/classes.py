"""Grouping roots by modulus and detecting root-of-unity ratios.

These are the two questions the asymptotic analysis keeps asking about a
set of eigenvalues: which ones tie in absolute value, and when two tied
ones differ by a root of unity (equivalently, their angle difference is
a rational multiple of pi), what is its exact order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exact.intervals import Box, poly_box
from ..exact.qpoly import QPoly, poly_gcd, squarefree_part
from .realalg import RealAlgebraic, real_from_enclosure
from .resultants import prod_poly, ratio_poly, strip_zero_roots
from .rootsets import RootSet


@dataclass
class ModulusClass:
    modulus_squared: RealAlgebraic
    indices: list[int]  # root indices, in RootSet order


def root_modulus_squared(
    rootset: RootSet, i: int, candidates: QPoly | None = None
) -> RealAlgebraic:
    """|root_i|^2 as an exact real algebraic number."""
    if candidates is None:
        p = rootset.poly
        candidates = squarefree_part(prod_poly(p, p))
    root = rootset.roots[i]
    return real_from_enclosure(
        candidates, lambda: root.box().modulus_squared(), root.refine
    )


def modulus_classes(rootset: RootSet) -> list[ModulusClass]:
    """Partition all roots by |root|, sorted by modulus descending."""
    p = rootset.poly
    candidates = squarefree_part(prod_poly(p, p))
    pairs = [
        (root_modulus_squared(rootset, i, candidates), i)
        for i in range(len(rootset))
    ]
    classes: list[ModulusClass] = []
    for ms, i in pairs:
        for cls in classes:
            if cls.modulus_squared.compare(ms) == 0:
                cls.indices.append(i)
                break
        else:
            classes.append(ModulusClass(ms, [i]))
    classes.sort(key=_DescendingMs)
    for cls in classes:
        cls.indices.sort()
    return classes


class _DescendingMs:
    """sort key adapter: RealAlgebraic compares but does not hash."""

    def __init__(self, cls: ModulusClass):
        self.ms = cls.modulus_squared

    def __lt__(self, other: "_DescendingMs") -> bool:
        return self.ms.compare(other.ms) > 0


def is_zero_root(rootset: RootSet, i: int) -> bool:
    return rootset.is_root_of(i, QPoly.x())


def _pow_mod(e: int, mod: QPoly) -> QPoly:
    """x^e mod `mod` by repeated squaring."""
    result = QPoly.one()
    base = QPoly.x() % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _unity_order_candidates(degree: int) -> list[int]:
    """All n with phi(n) <= degree.  phi(n) >= sqrt(n/2) for n >= 1, so
    enumerating n <= 2*degree^2 is exhaustive."""
    limit = 2 * degree * degree + 1
    return [n for n in range(1, limit + 1) if euler_phi(n) <= degree]


def _ratio_box(rootset: RootSet, i: int, j: int) -> Box:
    num = rootset.roots[i].box()
    den = rootset.roots[j].box()
    return num / den


def ratio_root_of_unity(rootset: RootSet, i: int, j: int) -> int | None:
    """If root_i / root_j is a root of unity, its exact order, else None.

    Requires root_j != 0.  The ratio is a root of the composed ratio
    polynomial R; for each candidate order n (ascending) we split R into
    gcd(R, x^n - 1) and its cofactor and decide by box exclusion which
    side the ratio lies on.  Candidate orders are exhausted because a
    primitive n-th root of unity has degree phi(n) over Q, which must
    divide into R.
    """
    if is_zero_root(rootset, j):
        raise ValueError("ratio base root is zero")
    if i == j:
        return 1
    if is_zero_root(rootset, i):
        return None  # ratio is 0, never a root of unity
    stripped, _ = strip_zero_roots(rootset.poly)
    ratio_def = squarefree_part(ratio_poly(stripped, stripped))

    # make the denominator box safely away from zero once
    while not rootset.roots[j].box().modulus_squared().strictly_positive():
        rootset.roots[j].refine()

    for n in _unity_order_candidates(ratio_def.degree):
        g = poly_gcd(ratio_def, _pow_mod(n, ratio_def) - QPoly.one())
        if g.degree < 1:
            continue
        cof = ratio_def.exact_div(g)
        if cof.degree < 1:
            return n  # every root of R satisfies x^n = 1
        while True:
            rb = _ratio_box(rootset, i, j)
            if not poly_box(g.coeffs, rb).contains_zero():
                break  # not an n-th root of unity; next candidate
            if not poly_box(cof.coeffs, rb).contains_zero():
                return n
            rootset.roots[i].refine()
            rootset.roots[j].refine()
    return None


def power_real_sign(rootset: RootSet, i: int, m: int) -> int:
    """Sign of root_i^m, which the caller guarantees is real and nonzero."""
    root = rootset.roots[i]
    while True:
        b = root.box()
        acc = Box.point(Fraction(1))
        e = m
        while e:
            if e & 1:
                acc = acc * b
            b = b * b
            e >>= 1
        if acc.re.strictly_positive():
            return 1
        if acc.re.strictly_negative():
            return -1
        root.refine()


def angle_order(rootset: RootSet, i: int) -> int | None:
    """Order of root_i / |root_i| as a root of unity (None if not one).

    Real positive roots give 1, real negative give 2.  For a non-real
    root, let m be the order of root/conj(root); then root/|root| has
    order m when root^m > 0 and 2m when root^m < 0.
    """
    if is_zero_root(rootset, i):
        raise ValueError("angle of zero")
    root = rootset.roots[i]
    if root.is_real:
        while True:
            iv = root.box().re
            if iv.strictly_positive():
                return 1
            if iv.strictly_negative():
                return 2
            root.refine()
    m = ratio_root_of_unity(rootset, i, rootset.conjugate_index(i))
    if m is None:
        return None
    return m if power_real_sign(rootset, i, m) > 0 else 2 * m
