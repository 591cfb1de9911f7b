import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sompow.exact import QMatrix, QPoly, char_poly, mat_mul, mat_pow
from sompow.exact.qmatrix import poly_at_matrix, solve_linear
from sompow.exact.qpoly import (
    poly_gcd,
    poly_lcm,
    squarefree_decomposition,
    squarefree_part,
)
from sompow.exact.sturm import count_real_roots, sturm_isolate_real_roots

FIG2 = QMatrix([[5, 12, -6], [-3, -10, 6], [-3, -12, 8]])
SEC3 = QMatrix([[2, 1], [-1, 0]])


# --- mat_mul / mat_pow -------------------------------------------------


def test_mat_mul_identity():
    i2 = QMatrix.identity(2)
    assert mat_mul(i2, i2) == i2


def test_mat_mul_sec3_square():
    assert mat_mul(SEC3, SEC3) == QMatrix([[3, 2], [-2, -1]])


def test_mat_mul_permutation():
    a = QMatrix([[1, 2], [3, 4]])
    swap = QMatrix([[0, 1], [1, 0]])
    assert mat_mul(a, swap) == QMatrix([[2, 1], [4, 3]])


def test_mat_mul_dimension_mismatch():
    with pytest.raises(ValueError):
        mat_mul(QMatrix([[1, 2]]), QMatrix([[1, 2]]))


def test_mat_pow_zero_is_identity():
    assert mat_pow(SEC3, 0) == QMatrix.identity(2)


def test_mat_pow_sec3_fifth():
    assert mat_pow(SEC3, 5) == QMatrix([[6, 5], [-5, -4]])


def test_mat_pow_involution_odd():
    swap = QMatrix([[0, 1], [1, 0]])
    assert mat_pow(swap, 7) == swap


def test_mat_pow_additivity_random():
    rng = random.Random(11)
    for _ in range(10):
        a = QMatrix(
            [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)] for _ in range(3)]
        )
        m, n = rng.randint(0, 10), rng.randint(0, 10)
        assert mat_pow(a, m + n) == mat_mul(mat_pow(a, m), mat_pow(a, n))


# --- char_poly ---------------------------------------------------------


def test_char_poly_identity2():
    assert char_poly(QMatrix.identity(2)) == QPoly([1, -2, 1])


def test_char_poly_fig2():
    assert char_poly(FIG2) == QPoly([4, 0, -3, 1])  # x^3 - 3x^2 + 4


def test_char_poly_sec3():
    assert char_poly(SEC3) == QPoly([1, -2, 1])  # x^2 - 2x + 1


def test_cayley_hamilton_random():
    rng = random.Random(7)
    for k in (2, 3, 4, 5):
        a = QMatrix([[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)])
        assert poly_at_matrix(char_poly(a), a) == QMatrix.zeros(k, k)


def test_char_poly_matches_sympy_cofactors():
    sympy = pytest.importorskip("sympy")
    x = sympy.symbols("x")
    rng = random.Random(23)
    for _ in range(5):
        rows = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        ours = char_poly(QMatrix(rows))
        theirs = sympy.Matrix(rows).charpoly(x).all_coeffs()
        assert [Fraction(int(c)) for c in reversed(theirs)] == list(ours.coeffs)


# --- gcd family --------------------------------------------------------


def _poly_from_roots(*roots):
    return QPoly.from_roots(roots)


def test_poly_gcd_shared_factor():
    p = _poly_from_roots(2, 2, -1)
    q = _poly_from_roots(2, 3)
    assert poly_gcd(p, q) == QPoly([-2, 1])


def test_squarefree_part():
    p = _poly_from_roots(2, 2, -1)
    assert squarefree_part(p) == _poly_from_roots(2, -1)


def test_poly_lcm_coprime():
    p = QPoly([-2, 0, 1])  # x^2 - 2
    q = QPoly([-1, 1])
    assert poly_lcm(p, q) == (p * q).monic()


def test_squarefree_part_coprime_with_derivative():
    rng = random.Random(3)
    for _ in range(20):
        roots = [rng.randint(-3, 3) for _ in range(rng.randint(1, 4))]
        p = QPoly.from_roots(roots)
        sf = squarefree_part(p)
        assert poly_gcd(sf, sf.derivative()).degree == 0


def test_squarefree_decomposition_fig2_char():
    dec = squarefree_decomposition(char_poly(FIG2))
    assert dec == {1: QPoly([1, 1]), 2: QPoly([-2, 1])}


# --- sturm isolation ---------------------------------------------------


def _contains_sqrt(iv, target):
    # does [lo, hi] contain sqrt(target)?  exact, via sign-aware squaring
    lo, hi = iv
    lo_ok = lo <= 0 or lo * lo <= target
    hi_ok = hi >= 0 and hi * hi >= target
    return lo_ok and hi_ok


def test_sturm_sqrt2():
    p = QPoly([-2, 0, 1])
    roots = sturm_isolate_real_roots(p)
    assert [m for _, m in roots] == [1, 1]
    (lo1, hi1), _ = roots[0]
    (lo2, hi2), _ = roots[1]
    assert hi1 <= lo2  # ordered, disjoint
    assert _contains_sqrt((-hi1, -lo1), 2)  # first bracket holds -sqrt(2)
    assert _contains_sqrt((lo2, hi2), 2)
    for lo, hi in ((lo1, hi1), (lo2, hi2)):
        assert p(lo) * p(hi) < 0


def test_sturm_multiplicities():
    p = QPoly.from_roots([2, 2, -1])
    roots = sturm_isolate_real_roots(p)
    assert [(m, iv[0] < 0) for iv, m in roots] == [(1, True), (2, False)]
    for (lo, hi), mult in roots:
        target = Fraction(-1) if lo < 0 else Fraction(2)
        assert lo <= target <= hi


def test_sturm_no_real_roots():
    assert sturm_isolate_real_roots(QPoly([1, 0, 1])) == []


def test_sturm_close_roots_disjoint():
    # roots 1 and 1 + 1/64 from different multiplicity classes
    near = QPoly.from_roots([Fraction(65, 64)])
    p = QPoly.from_roots([1]) * near * near
    roots = sturm_isolate_real_roots(p)
    assert [m for _, m in roots] == [1, 2]
    (a, b), _ = roots[0]
    (c, d), _ = roots[1]
    assert b <= c  # containers ordered and disjoint
    assert a <= 1 <= b and c <= Fraction(65, 64) <= d


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=3
    )
)
def test_real_root_count_of_quadratic_products(quads):
    # product of x^2 + bx + c factors: real root multiplicities plus twice
    # the conjugate-pair count must equal the degree, and each quadratic
    # contributes real roots exactly when its discriminant is >= 0
    p = QPoly.one()
    expected_real = 0
    for b, c in quads:
        p = p * QPoly([c, b, 1])
        if b * b - 4 * c >= 0:
            expected_real += 2
    isolated = sturm_isolate_real_roots(p)
    total_real = sum(m for _, m in isolated)
    assert total_real == expected_real
    assert (p.degree - total_real) % 2 == 0
    # containers must be pairwise disjoint as root sets
    spans = sorted(iv for iv, _ in isolated)
    for (a1, b1), (a2, b2) in zip(spans, spans[1:]):
        assert b1 <= a2


# --- solve_linear ------------------------------------------------------


def test_solve_linear_roundtrip():
    rng = random.Random(5)
    for _ in range(10):
        a = QMatrix([[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)])
        try:
            x = solve_linear(a, [1, 2, 3])
        except ValueError:
            continue
        got = [sum(a[(i, j)] * x[j] for j in range(3)) for i in range(3)]
        assert got == [1, 2, 3]
