"""Dense exact matrices over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .qpoly import QPoly


class QMatrix:
    """Immutable row-major matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(Fraction(v) for v in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrices must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self.entries = rows
        self.rows = len(rows)
        self.cols = width

    @staticmethod
    def identity(k: int) -> "QMatrix":
        return QMatrix([[1 if i == j else 0 for j in range(k)] for i in range(k)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "QMatrix":
        return QMatrix([[0] * cols for _ in range(rows)])

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self.entries)
        return f"QMatrix[{body}]"

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix addition")
        return QMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix subtraction")
        return QMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def scale(self, c) -> "QMatrix":
        c = Fraction(c)
        return QMatrix([[c * v for v in row] for row in self.entries])

    def __mul__(self, other: "QMatrix") -> "QMatrix":
        return mat_mul(self, other)

    def transpose(self) -> "QMatrix":
        return QMatrix(list(zip(*self.entries)))

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def entrywise(self, pred) -> bool:
        return all(pred(v) for row in self.entries for v in row)

    def min_entry(self) -> Fraction:
        return min(v for row in self.entries for v in row)


def mat_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = list(zip(*b.entries))
    return QMatrix(
        [
            [sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt]
            for row in a.entries
        ]
    )


def mat_pow(a: QMatrix, n: int) -> QMatrix:
    """A^n by binary powering; A^0 = I."""
    if not a.is_square():
        raise ValueError("powers need a square matrix")
    if n < 0:
        raise ValueError("negative powers are not defined here")
    result = QMatrix.identity(a.rows)
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base_needed = n >> 1
        if base_needed:
            base = mat_mul(base, base)
        n = base_needed
    return result


def char_poly(a: QMatrix) -> QPoly:
    """Monic characteristic polynomial det(xI - A) via the Faddeev-LeVerrier
    recurrence (the only divisions are by the integers 1..k)."""
    if not a.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    k = a.rows
    coeffs = [Fraction(1)] + [Fraction(0)] * k  # c_0 = 1, then c_1..c_k
    m = QMatrix.zeros(k, k)
    ident = QMatrix.identity(k)
    for i in range(1, k + 1):
        m = mat_mul(a, m + ident.scale(coeffs[i - 1]))
        coeffs[i] = -m.trace() / i
    # char(x) = x^k + c_1 x^{k-1} + ... + c_k
    return QPoly(list(reversed(coeffs)))


def poly_at_matrix(p: QPoly, a: QMatrix) -> QMatrix:
    """Evaluate p at a square matrix by Horner."""
    if not a.is_square():
        raise ValueError("polynomial evaluation needs a square matrix")
    acc = QMatrix.zeros(a.rows, a.rows)
    ident = QMatrix.identity(a.rows)
    for c in reversed(p.coeffs):
        acc = mat_mul(acc, a) + ident.scale(c)
    return acc


def solve_linear(a: QMatrix, rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a.x = rhs exactly by Gaussian elimination with exact pivots.

    Raises ValueError when the system is singular.
    """
    if not a.is_square() or a.rows != len(rhs):
        raise ValueError("solve_linear needs a square system")
    n = a.rows
    aug = [list(row) + [Fraction(rhs[i])] for i, row in enumerate(a.entries)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular linear system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]
