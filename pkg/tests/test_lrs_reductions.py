"""Recurrence algebra and the matrix-set reductions in both directions."""

import random
import unittest
from fractions import Fraction as F
from math import ceil

from sompow.exact.qmatrix import QMatrix, mat_pow
from sompow.lrs import (
    LRS,
    companion_matrix,
    generator_matrix,
    interleave,
    lrs_sum,
    scale,
)
from sompow.reductions import (
    WeightedMatrixSet,
    entry_subset_lrs,
    matrix_entry_lrs,
    matrix_to_interleaved_lrs,
    somset_to_lrs,
    unnlrs_to_ennsom,
    uplrs_to_epsom,
    weighted_power_sum,
)

# u_n = n - 1: recurrence u_n = 2u_{n-1} - u_{n-2}, u_0 = -1, u_1 = 0
RAMP = LRS(2, (F(2), F(-1)), (F(-1), F(0)))
TWO_POW = LRS(1, (F(2),), (F(1),))
ALT = LRS(1, (F(-1),), (F(1),))


def random_lrs(rng: random.Random, max_order: int = 4) -> LRS:
    k = rng.randint(1, max_order)
    coeffs = [F(rng.randint(-3, 3)) for _ in range(k)]
    initial = [F(rng.randint(-4, 4)) for _ in range(k)]
    return LRS(k, tuple(coeffs), tuple(initial))


class TermEvaluation(unittest.TestCase):
    def test_ramp_terms(self):
        self.assertEqual(RAMP.terms(12), [F(n - 1) for n in range(12)])
        self.assertEqual(RAMP.term(4), F(3))

    def test_constant(self):
        const = LRS(1, (F(1),), (F(7),))
        self.assertEqual(const.term(100), F(7))

    def test_fibonacci(self):
        fib = LRS(2, (F(1), F(1)), (F(0), F(1)))
        self.assertEqual(fib.term(10), F(55))

    def test_three_routes_agree(self):
        rng = random.Random(20240817)
        for _ in range(12):
            lrs = random_lrs(rng)
            k = lrs.order
            m = companion_matrix(lrs)
            g = generator_matrix(lrs)
            terms = lrs.terms(21)
            u = QMatrix([[lrs.initial[k - 1 - j] for j in range(k)]])
            for n in range(21):
                via_companion = (u * mat_pow(m, n))[0, k - 1]
                via_generator = mat_pow(g, n + 1)[0, k]
                self.assertEqual(terms[n], via_companion)
                self.assertEqual(terms[n], via_generator)


class CompanionAndGenerator(unittest.TestCase):
    def test_companion_layout(self):
        self.assertEqual(companion_matrix(RAMP), QMatrix([[2, 1], [-1, 0]]))
        self.assertEqual(companion_matrix(LRS(1, (F(3),), (F(1),))), QMatrix([[3]]))
        m3 = companion_matrix(LRS(3, (F(1), F(1), F(1)), (F(0), F(0), F(1))))
        self.assertEqual(m3, QMatrix([[1, 1, 0], [1, 0, 1], [1, 0, 0]]))

    def test_generator_embeds_sequence(self):
        g = generator_matrix(RAMP)
        self.assertEqual(g, QMatrix([[0, 0, -1], [0, 2, 1], [0, -1, 0]]))
        self.assertEqual(g[0, 2], F(-1))  # u_0
        self.assertEqual((g * g)[0, 2], F(0))  # u_1
        self.assertEqual(mat_pow(g, 4)[0, 2], F(2))  # u_3


class Combinators(unittest.TestCase):
    def test_scale(self):
        self.assertEqual(scale(1, RAMP), RAMP)
        doubled = scale(-2, TWO_POW)
        self.assertEqual(doubled.terms(3), [F(-2), F(-4), F(-8)])
        zero = scale(0, RAMP)
        self.assertEqual(zero.terms(5), [F(0)] * 5)
        self.assertEqual(zero.coeffs, RAMP.coeffs)

    def test_sum_distinct_roots(self):
        s = lrs_sum(TWO_POW, ALT)
        self.assertEqual(s.order, 2)
        self.assertEqual(s.char_poly().coeffs, (F(-2), F(-1), F(1)))  # (x-2)(x+1)
        self.assertEqual(s.terms(5), [F(2), F(1), F(5), F(7), F(17)])

    def test_sum_zero_is_identity(self):
        zero = LRS(1, (F(2),), (F(0),))
        self.assertEqual(lrs_sum(TWO_POW, zero).terms(6), TWO_POW.terms(6))

    def test_sum_shared_roots_stays_small(self):
        s = lrs_sum(TWO_POW, scale(3, TWO_POW))
        self.assertEqual(s.order, 1)
        self.assertEqual(s.terms(3), [F(4), F(8), F(16)])

    def test_sum_scale_linearity(self):
        rng = random.Random(7)
        for _ in range(8):
            x, y = random_lrs(rng, 3), random_lrs(rng, 3)
            a, b = F(rng.randint(-3, 3)), F(rng.randint(-3, 3))
            combo = lrs_sum(scale(a, x), scale(b, y))
            xs, ys, cs = x.terms(25), y.terms(25), combo.terms(25)
            for n in range(25):
                self.assertEqual(cs[n], a * xs[n] + b * ys[n])

    def test_interleave_single_is_identity(self):
        self.assertEqual(interleave([RAMP]), RAMP)

    def test_interleave_order_one(self):
        il = interleave([TWO_POW, scale(3, TWO_POW)])
        self.assertEqual(il.order, 2)
        self.assertEqual(il.coeffs, (F(0), F(2)))  # v_n = 2 v_{n-2}
        self.assertEqual(il.terms(6), [F(1), F(3), F(2), F(6), F(4), F(12)])

    def test_interleave_char_poly_inflation(self):
        il = interleave([RAMP, RAMP])
        self.assertEqual(il.order, 4)
        self.assertEqual(il.char_poly().coeffs, (F(1), F(0), F(-2), F(0), F(1)))

    def test_interleave_projection(self):
        rng = random.Random(99)
        base = random_lrs(rng, 3)
        others = [scale(F(rng.randint(-2, 2)), base) for _ in range(2)]
        seqs = [base] + others
        il = interleave(seqs)
        t = len(seqs)
        flat = il.terms(t * 30)
        for s, seq in enumerate(seqs):
            expected = seq.terms(30)
            for n in range(30):
                self.assertEqual(flat[t * n + s], expected[n])

    def test_interleave_rejects_mismatch(self):
        with self.assertRaises(ValueError):
            interleave([TWO_POW, ALT])
        with self.assertRaises(ValueError):
            interleave([])

    def test_interleave_prefix_sign_equivalence(self):
        # braided prefix is non-negative from N iff every component is
        # non-negative from ceil((N - s) / t)
        u = LRS(2, (F(2), F(-1)), (F(-3), F(-2)))  # n - 3
        v = LRS(2, (F(2), F(-1)), (F(-1), F(0)))  # n - 1
        il = interleave([u, v])
        flat = il.terms(40)
        comps = [u.terms(25), v.terms(25)]
        for big_n in range(12):
            braided_ok = all(x >= 0 for x in flat[big_n:40])
            component_ok = all(
                all(x >= 0 for x in comps[s][ceil((big_n - s) / 2):25])
                for s in range(2)
            )
            self.assertEqual(braided_ok, component_ok, msg=f"N={big_n}")


class SequenceToMatrixSet(unittest.TestCase):
    def test_power_sum_examples(self):
        ident = WeightedMatrixSet.of((1, QMatrix.identity(2)))
        self.assertEqual(weighted_power_sum(ident, 5), QMatrix.identity(2))
        mix = WeightedMatrixSet.of(
            (1, QMatrix.identity(2).scale(2)), (-1, QMatrix.identity(2))
        )
        self.assertEqual(weighted_power_sum(mix, 3), QMatrix([[7, 0], [0, 7]]))
        with self.assertRaises(ValueError):
            weighted_power_sum(ident, 0)

    def test_nonneg_construction_shape(self):
        wset = unnlrs_to_ennsom(RAMP)
        (w1, a1), (w2, a2) = wset.pairs
        self.assertEqual((w1, w2), (F(1), F(1)))
        self.assertEqual(a1, generator_matrix(RAMP))
        self.assertEqual(a2, QMatrix([[0, 0, 0], [0, 2, 1], [0, 2, 0]]))

    def test_nonneg_construction_order_one(self):
        wset = unnlrs_to_ennsom(LRS(1, (F(3),), (F(1),)))
        self.assertEqual(wset.pairs[0][1], QMatrix([[0, 1], [0, 3]]))
        self.assertEqual(wset.pairs[1][1], QMatrix([[0, 0], [0, 3]]))

    def test_nonneg_sum_exposes_sequence(self):
        wset = unnlrs_to_ennsom(RAMP)
        top = weighted_power_sum(wset, 2).row(0)
        self.assertEqual(top, (F(0), F(1), F(0)))  # (0, u_2, u_1)

    def test_nonneg_block_structure(self):
        # A1^n + A2^n = [[0, u M^(n-1)], [0, M^n + P^n]]
        wset = unnlrs_to_ennsom(RAMP)
        m = companion_matrix(RAMP)
        p = QMatrix([[2, 1], [2, 0]])
        u = QMatrix([[RAMP.initial[1], RAMP.initial[0]]])
        for n in range(1, 26):
            total = weighted_power_sum(wset, n)
            top = u * mat_pow(m, n - 1)
            block = mat_pow(m, n) + mat_pow(p, n)
            self.assertEqual(total[0, 0], F(0))
            self.assertEqual(total.column(0), (F(0),) * 3)
            self.assertEqual((total[0, 1], total[0, 2]), (top[0, 0], top[0, 1]))
            for i in range(2):
                for j in range(2):
                    self.assertEqual(total[i + 1, j + 1], block[i, j])
            # the masking block really dominates: M^n + P^n >= 0
            self.assertTrue(block.entrywise(lambda v: v >= 0))

    def test_positive_construction_shape(self):
        wset = uplrs_to_epsom(RAMP)
        a2 = wset.pairs[1][1]
        self.assertEqual(a2, QMatrix([[1, 0, 0], [1, 3, 3], [1, 3, 3]]))
        self.assertEqual(a2.row(0), (F(1), F(0), F(0)))
        self.assertEqual(a2.column(0), (F(1), F(1), F(1)))

    def test_positive_blocks_dominate(self):
        wset = uplrs_to_epsom(RAMP)
        m = companion_matrix(RAMP)
        p = QMatrix([[3, 3], [3, 3]])
        a2 = wset.pairs[1][1]
        ones = QMatrix([[1], [1]])
        col = QMatrix([[0], [0]])
        for n in range(1, 26):
            block = mat_pow(m, n) + mat_pow(p, n)
            self.assertTrue(block.entrywise(lambda v: v > 0))
            # lower-left column of A2^n satisfies c_n = P c_{n-1} + 1
            col = p * col + ones
            a2n = mat_pow(a2, n)
            self.assertEqual((a2n[1, 0], a2n[2, 0]), (col[0, 0], col[1, 0]))

    def test_generator_alone_goes_negative(self):
        # with only the generator, some entry is negative at every power
        a1 = generator_matrix(RAMP)
        power = a1
        for n in range(1, 101):
            self.assertTrue(any(v < 0 for row in power.entries for v in row))
            power = power * a1


class MatrixSetToSequence(unittest.TestCase):
    def test_entry_lrs_examples(self):
        m = QMatrix([[2, 1], [-1, 0]])
        e = matrix_entry_lrs(m, 1, 1)
        self.assertEqual(e.coeffs, (F(2), F(-1)))
        self.assertEqual(e.initial, (F(2), F(3)))
        self.assertEqual(e.terms(5), [F(n + 2) for n in range(5)])
        zero = matrix_entry_lrs(QMatrix.identity(2), 1, 2)
        self.assertEqual(zero.terms(6), [F(0)] * 6)
        with self.assertRaises(IndexError):
            matrix_entry_lrs(m, 3, 1)

    def test_entry_lrs_fig_matrix(self):
        a = QMatrix([[5, 12, -6], [-3, -10, 6], [-3, -12, 8]])
        e = matrix_entry_lrs(a, 1, 1)
        self.assertEqual(e.coeffs, (F(3), F(0), F(-4)))  # x^3 - 3x^2 + 4
        self.assertEqual(e.initial, (F(5), F(7), F(17)))

    def test_interleaved_matrix_lrs(self):
        one = matrix_to_interleaved_lrs(QMatrix([[3]]))
        self.assertEqual(one.terms(4), [F(3), F(9), F(27), F(81)])

        m = QMatrix([[2, 1], [-1, 0]])
        il = matrix_to_interleaved_lrs(m)
        self.assertEqual(il.order, 8)
        flat = il.terms(24)
        for r in range(5):
            self.assertEqual(flat[4 * r + 2], F(-(r + 1)))  # entry (2,1)
        self.assertEqual(
            il.char_poly().coeffs,
            (F(1), F(0), F(0), F(0), F(-2), F(0), F(0), F(0), F(1)),
        )

    def test_somset_identity(self):
        sl = somset_to_lrs(WeightedMatrixSet.of((1, QMatrix.identity(2))))
        self.assertEqual(sl.terms(8), [F(v) for v in (1, 0, 0, 1, 1, 0, 0, 1)])

    def test_somset_scalar(self):
        sl = somset_to_lrs(
            WeightedMatrixSet.of((1, QMatrix([[2]])), (-1, QMatrix([[1]])))
        )
        self.assertEqual(sl.terms(4), [F(1), F(3), F(7), F(15)])

    def test_somset_matches_power_sums(self):
        rng = random.Random(424242)
        for _ in range(6):
            k = rng.randint(1, 3)
            m_count = rng.randint(1, 3)
            pairs = []
            for _ in range(m_count):
                w = F(rng.randint(-3, 3))
                if w == 0:
                    w = F(1)
                mat = QMatrix(
                    [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)]
                )
                pairs.append((w, mat))
            wset = WeightedMatrixSet.of(*pairs)
            flat = somset_to_lrs(wset).terms(k * k * 25)
            for r in range(25):
                expected = weighted_power_sum(wset, r + 1)
                for s in range(k):
                    for t in range(k):
                        self.assertEqual(
                            flat[r * k * k + s * k + t], expected[s, t]
                        )

    def test_entry_subset(self):
        m = QMatrix([[2, 1], [-1, 0]])
        wset = WeightedMatrixSet.of((1, m))
        full = entry_subset_lrs(wset, [(1, 1), (1, 2), (2, 1), (2, 2)])
        self.assertEqual(full.terms(20), somset_to_lrs(wset).terms(20))
        single = entry_subset_lrs(wset, [(1, 1)])
        self.assertEqual(single.terms(5), [F(n + 2) for n in range(5)])
        two = entry_subset_lrs(wset, [(1, 2), (2, 1)])
        self.assertEqual(
            two.terms(8), [F(v) for v in (1, -1, 2, -2, 3, -3, 4, -4)]
        )
        with self.assertRaises(ValueError):
            entry_subset_lrs(wset, [])


if __name__ == "__main__":
    unittest.main()
