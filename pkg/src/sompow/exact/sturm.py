"""Real root counting and isolation via Sturm chains.

All interval endpoints produced here are dyadic (the initial bound is a
power of two and refinement only ever bisects), so midpoint tests stay
cheap and exact.
"""

from __future__ import annotations

from fractions import Fraction

from .qpoly import QPoly, squarefree_decomposition, squarefree_part


def sturm_chain(p: QPoly) -> list[QPoly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()
    return chain


def _variations(chain: list[QPoly], x: Fraction) -> int:
    signs = []
    for q in chain:
        v = q(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_half_open(chain: list[QPoly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b] for the squarefree polynomial
    the chain was built from."""
    return _variations(chain, a) - _variations(chain, b)


def cauchy_bound(p: QPoly) -> Fraction:
    """Power-of-two bound B with every real root strictly inside (-B, B)."""
    lead = abs(p.leading())
    raw = 1 + max(abs(c) for c in p.coeffs) / lead
    b = Fraction(1)
    while b <= raw:
        b *= 2
    return b


def isolate_squarefree(p: QPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for all real roots of squarefree p.

    Each returned (lo, hi) either has lo == hi (an exact rational root hit
    by a midpoint) or satisfies sign(p(lo)) != sign(p(hi)) with exactly one
    root inside.  Work-queue intervals keep the invariant that neither
    endpoint is a root, so half-open Sturm counts equal open-interval
    counts and bisection always terminates.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    chain = sturm_chain(p)
    bound = cauchy_bound(p)
    out: list[tuple[Fraction, Fraction]] = []
    work = [(-bound, bound, count_roots_half_open(chain, -bound, bound))]
    while work:
        lo, hi, count = work.pop()
        if count == 0:
            continue
        if count == 1 and p(lo) * p(hi) < 0:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if p(mid) == 0:
            out.append((mid, mid))
            # step off the root on both sides without skipping neighbours
            step = (hi - lo) / 4
            m1 = mid - step
            while p(m1) == 0 or count_roots_half_open(chain, m1, mid) != 1:
                step /= 2
                m1 = mid - step
            left = count_roots_half_open(chain, lo, m1)
            step = (hi - mid) / 2
            m2 = mid + step
            while p(m2) == 0 or count_roots_half_open(chain, mid, m2) != 0:
                step /= 2
                m2 = mid + step
            work.append((lo, m1, left))
            work.append((m2, hi, count - left - 1))
        else:
            left = count_roots_half_open(chain, lo, mid)
            work.append((lo, mid, left))
            work.append((mid, hi, count - left))
    out.sort()
    return out


def refine_interval(
    p: QPoly, lo: Fraction, hi: Fraction
) -> tuple[Fraction, Fraction]:
    """One bisection step preserving the isolation invariant."""
    if lo == hi:
        return lo, hi
    mid = (lo + hi) / 2
    v = p(mid)
    if v == 0:
        return mid, mid
    if p(lo) * v < 0:
        return lo, mid
    return mid, hi


def _root_sets_overlap(iv1, iv2) -> bool:
    """Could iv1 and iv2 contain a common root?  A sign-change interval
    holds its root strictly inside, so touching endpoints do not count."""
    lo = max(iv1[0], iv2[0])
    hi = min(iv1[1], iv2[1])
    if lo > hi:
        return False
    if lo < hi:
        return True
    in1 = iv1[0] == iv1[1] or iv1[0] < lo < iv1[1]
    in2 = iv2[0] == iv2[1] or iv2[0] < lo < iv2[1]
    return in1 and in2


def sturm_isolate_real_roots(
    p: QPoly,
) -> list[tuple[tuple[Fraction, Fraction], int]]:
    """Isolate the real roots of an arbitrary nonzero polynomial.

    Returns ((lo, hi), multiplicity) pairs sorted by position; the root
    containers are pairwise disjoint even across different multiplicities.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    by_mult: list[tuple[tuple[Fraction, Fraction], int, QPoly]] = []
    for mult, factor in sorted(squarefree_decomposition(p).items()):
        for iv in isolate_squarefree(factor):
            by_mult.append((iv, mult, factor))
    # roots of distinct Yun factors are distinct; shrink until the
    # intervals' root containers are visibly disjoint
    changed = True
    while changed:
        changed = False
        for i in range(len(by_mult)):
            for j in range(i + 1, len(by_mult)):
                (iv1, m1, f1), (iv2, m2, f2) = by_mult[i], by_mult[j]
                if f1 is f2:
                    continue
                if _root_sets_overlap(iv1, iv2):
                    by_mult[i] = (refine_interval(f1, *iv1), m1, f1)
                    by_mult[j] = (refine_interval(f2, *iv2), m2, f2)
                    changed = True
    result = [(iv, mult) for iv, mult, _ in by_mult]
    result.sort(key=lambda t: (t[0][0], t[0][1]))
    return result


def count_real_roots(p: QPoly) -> int:
    """Distinct real roots of p (multiplicities ignored)."""
    q = squarefree_part(p)
    if q.degree == 0:
        return 0
    chain = sturm_chain(q)
    bound = cauchy_bound(q)
    return count_roots_half_open(chain, -bound, bound)
