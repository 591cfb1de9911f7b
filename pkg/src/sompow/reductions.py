"""Reductions between recurrence-sign problems and matrix-power-sum
problems, in both directions.

One direction embeds an LRS into a pair of matrices whose weighted power
sums are eventually non-negative (or positive) exactly when the sequence
is ultimately non-negative (positive): the generator matrix carries the
sequence in its top row, and a dominating partner matrix masks every
other entry.  The other direction flattens a weighted matrix set into a
single LRS by interleaving the per-entry recurrences of each matrix and
summing with weights, so one sign question about the sequence answers
the entrywise question about the whole set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact.qmatrix import QMatrix, char_poly, mat_pow
from .lrs import LRS, generator_matrix, interleave, lrs_sum, scale


@dataclass(frozen=True)
class WeightedMatrixSet:
    dim: int
    pairs: tuple[tuple[Fraction, QMatrix], ...]

    def __post_init__(self):
        pairs = tuple((Fraction(w), m) for w, m in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValueError("need at least one weighted matrix")
        for _, m in pairs:
            if m.rows != self.dim or m.cols != self.dim:
                raise ValueError("all matrices must be square of the set dimension")

    @staticmethod
    def of(*pairs) -> "WeightedMatrixSet":
        pairs = tuple((Fraction(w), m) for w, m in pairs)
        return WeightedMatrixSet(pairs[0][1].rows, pairs)


def weighted_power_sum(wset: WeightedMatrixSet, n: int) -> QMatrix:
    """Exact sum_i w_i * A_i^n for n >= 1."""
    if n < 1:
        raise ValueError("power sums are defined for n >= 1")
    acc = QMatrix.zeros(wset.dim, wset.dim)
    for w, a in wset.pairs:
        acc = acc + mat_pow(a, n).scale(w)
    return acc


def _companion_abs_max(lrs: LRS) -> Fraction:
    return max(abs(c) for c in lrs.coeffs)


def unnlrs_to_ennsom(lrs: LRS) -> WeightedMatrixSet:
    """Two matrices whose power sum is eventually non-negative iff the
    sequence is ultimately non-negative (with an index shift of one:
    entries of the n-th power expose terms from index n-1 on).

    A1 is the generator matrix.  A2 zeroes the first row and column and
    carries P: the companion matrix with its first column replaced by
    a_max = max |a_i|, so that P^n dominates |M^n| entrywise and the sum
    masks everything except the embedded sequence values.
    """
    k = lrs.order
    a_max = _companion_abs_max(lrs)
    a1 = generator_matrix(lrs)
    rows = [[Fraction(0)] * (k + 1)]
    for i in range(k):
        row = [Fraction(0)] * (k + 1)
        row[1] = a_max
        if i + 1 < k:
            row[i + 2] = Fraction(1)
        rows.append(row)
    a2 = QMatrix(rows)
    return WeightedMatrixSet(k + 1, ((Fraction(1), a1), (Fraction(1), a2)))


def uplrs_to_epsom(lrs: LRS) -> WeightedMatrixSet:
    """Two matrices whose power sum is eventually positive iff the
    sequence is ultimately positive (same index shift as above).

    A2 = [[1, 0], [1, P]] where P[i,j] = max(|M[i,j]|, a_max) + 1
    strictly dominates the companion matrix M entrywise, and the
    all-ones first column keeps every masked entry strictly positive.
    """
    k = lrs.order
    from .lrs import companion_matrix

    m = companion_matrix(lrs)
    a_max = _companion_abs_max(lrs)
    a1 = generator_matrix(lrs)
    rows = [[Fraction(1)] + [Fraction(0)] * k]
    for i in range(k):
        row = [Fraction(1)]
        row += [max(abs(m[i, j]), a_max) + 1 for j in range(k)]
        rows.append(row)
    a2 = QMatrix(rows)
    return WeightedMatrixSet(k + 1, ((Fraction(1), a1), (Fraction(1), a2)))


def matrix_entry_lrs(a: QMatrix, i: int, j: int) -> LRS:
    """The sequence n -> A^(n+1)[i, j] (1-indexed entries) as an LRS of
    order k, with coefficients read from the characteristic polynomial."""
    if not a.is_square():
        raise ValueError("need a square matrix")
    k = a.rows
    if not (1 <= i <= k and 1 <= j <= k):
        raise IndexError("entry indices out of range")
    p = char_poly(a)
    powers = []
    acc = a
    for _ in range(k):
        powers.append(acc[i - 1, j - 1])
        acc = acc * a
    return LRS.from_char_poly(p, powers)


def matrix_to_interleaved_lrs(a: QMatrix) -> LRS:
    """All k^2 entry sequences of A braided row-major into one LRS of
    order k^3: term at r*k^2 + s*k + t equals A^(r+1)[s+1, t+1]."""
    if not a.is_square():
        raise ValueError("need a square matrix")
    k = a.rows
    entries = [
        matrix_entry_lrs(a, s + 1, t + 1) for s in range(k) for t in range(k)
    ]
    return interleave(entries)


def somset_to_lrs(wset: WeightedMatrixSet) -> LRS:
    """One LRS encoding all entries of the weighted power sums:
    term at r*k^2 + s*k + t is sum_i w_i * A_i^(r+1)[s+1, t+1].  The set
    is eventually non-negative (positive) iff this sequence is
    ultimately non-negative (positive)."""
    acc: LRS | None = None
    for w, a in wset.pairs:
        piece = scale(w, matrix_to_interleaved_lrs(a))
        acc = piece if acc is None else lrs_sum(acc, piece)
    return acc


def entry_subset_lrs(
    wset: WeightedMatrixSet, entries: list[tuple[int, int]]
) -> LRS:
    """Like somset_to_lrs but braiding only the chosen (i, j) entries
    (1-indexed); the stride becomes len(entries)."""
    if not entries:
        raise ValueError("need at least one entry position")
    acc: LRS | None = None
    for w, a in wset.pairs:
        seqs = [matrix_entry_lrs(a, i, j) for i, j in entries]
        piece = scale(w, interleave(seqs))
        acc = piece if acc is None else lrs_sum(acc, piece)
    return acc
