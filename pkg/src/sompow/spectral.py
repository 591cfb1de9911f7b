"""Exact spectral classification and eigendecomposition of rational matrices.

Eigenvalues are never approximated and never require factoring polynomials:
each squarefree-multiplicity factor of the characteristic polynomial is kept
whole, and all eigenvector computations run over the quotient ring
Q[t]/(factor).  When elimination hits a zero divisor the factor splits and
the computation restarts on the pieces (dynamic evaluation), so the end
result is a list of blocks, each a genuinely field-like quotient carrying

  * ``left``:  rows spanning the left eigenvectors of every root at once,
  * ``right_adj``: the matching right eigenvector columns, normalised so
    that left @ right_adj = I in the quotient ring.

A diagonal slot of the decomposition is (block, root of block.poly, copy
index); S columns / S_inv rows are those vectors bound to the specific root.
The whole decomposition is verified by rational trace identities before it
is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key

from .algebraic.field import ComplexAlgebraic, FieldElement, SplitRequired, _half_xgcd
from .algebraic.resultants import rational_roots
from .algebraic.rootsets import RootSet
from .exact.qmatrix import QMatrix, char_poly, mat_mul
from .exact.qpoly import QPoly, squarefree_decomposition, squarefree_part
from .expsum import newton_power_sums, trace_of


class SpectralClass(Enum):
    SIMPLE = "Simple"
    DIAGONALIZABLE_NOT_SIMPLE = "DiagonalizableNotSimple"
    DEFECTIVE = "Defective"


def minimal_poly(a: QMatrix) -> QPoly:
    """Monic least-degree p with p(a) = 0 (first dependence among I, a, a², …)."""
    if not a.is_square():
        raise ValueError("minimal polynomial needs a square matrix")
    k = a.rows
    width = k + 1
    basis: list[tuple[int, list[Fraction], list[Fraction]]] = []
    power = QMatrix.identity(k)
    for degree in range(width):
        vec = [entry for row in power.entries for entry in row]
        combo = [Fraction(0)] * width
        combo[degree] = Fraction(1)
        for pivot, pvec, pcombo in basis:
            factor = vec[pivot]
            if factor:
                vec = [x - factor * y for x, y in zip(vec, pvec)]
                combo = [x - factor * y for x, y in zip(combo, pcombo)]
        pivot = next((i for i, x in enumerate(vec) if x), None)
        if pivot is None:
            return QPoly(combo[: degree + 1])
        inv = Fraction(1) / vec[pivot]
        basis.append((pivot, [x * inv for x in vec], [x * inv for x in combo]))
        power = mat_mul(power, a)
    raise AssertionError("no dependence among matrix powers up to the dimension")


def classify(a: QMatrix) -> SpectralClass:
    """Simple / DiagonalizableNotSimple / Defective, decided exactly."""
    m = minimal_poly(a)
    if squarefree_part(m) != m:
        return SpectralClass.DEFECTIVE
    if squarefree_part(char_poly(a)) == char_poly(a).monic():
        return SpectralClass.SIMPLE
    return SpectralClass.DIAGONALIZABLE_NOT_SIMPLE


# ---------------------------------------------------------------------------
# arithmetic in Q[t]/(g) on raw representative polynomials


def _inverse_mod(rep: QPoly, g: QPoly) -> QPoly:
    """Inverse of rep in Q[t]/(g); raises SplitRequired on a zero divisor."""
    shared, s = _half_xgcd(rep, g)
    if shared.degree == 0:
        return s.scale(Fraction(1) / shared.coeff(0)) % g
    from .algebraic.field import Split

    raise SplitRequired(Split(shared.monic(), g.exact_div(shared).monic()))


def _nullspace_mod(grid: list[list[QPoly]], g: QPoly) -> list[list[QPoly]]:
    """Basis of the nullspace of grid over Q[t]/(g), as rows.

    Uniform behaviour over every root of g is required; a pivot that is
    invertible at some roots only raises SplitRequired.
    """
    k = len(grid)
    rows = [[entry % g for entry in row] for row in grid]
    pivots: list[tuple[int, int]] = []  # (row, col)
    rank = 0
    for col in range(k):
        pivot_row = next(
            (r for r in range(rank, k) if not rows[r][col].is_zero()), None
        )
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = _inverse_mod(rows[rank][col], g)
        rows[rank] = [(entry * inv) % g for entry in rows[rank]]
        for r in range(k):
            if r != rank and not rows[r][col].is_zero():
                factor = rows[r][col]
                rows[r] = [
                    (entry - factor * lead) % g
                    for entry, lead in zip(rows[r], rows[rank])
                ]
        pivots.append((rank, col))
        rank += 1
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(k) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = [QPoly.zero()] * k
        vec[f] = QPoly.one()
        for r, c in pivots:
            vec[c] = (-rows[r][f]) % g
        basis.append(vec)
    return basis


def _invert_grid_mod(grid: list[list[QPoly]], g: QPoly) -> list[list[QPoly]]:
    """Inverse of a square grid over Q[t]/(g) by Gauss-Jordan."""
    e = len(grid)
    work = [
        [entry % g for entry in row]
        + [QPoly.one() if i == j else QPoly.zero() for j in range(e)]
        for i, row in enumerate(grid)
    ]
    for col in range(e):
        pivot_row = next(
            (r for r in range(col, e) if not work[r][col].is_zero()), None
        )
        if pivot_row is None:
            raise ArithmeticError("grid is singular over the quotient ring")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        inv = _inverse_mod(work[col][col], g)
        work[col] = [(entry * inv) % g for entry in work[col]]
        for r in range(e):
            if r != col and not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [
                    (entry - factor * lead) % g
                    for entry, lead in zip(work[r], work[col])
                ]
    return [row[e:] for row in work]


# ---------------------------------------------------------------------------
# factor blocks


@dataclass(frozen=True)
class FactorBlock:
    """All eigendata attached to one squarefree factor of the char poly."""

    poly: QPoly  # monic squarefree; every root has this multiplicity
    multiplicity: int
    left: tuple[tuple[QPoly, ...], ...]  # e x k rows: left eigenvectors
    right_adj: tuple[tuple[QPoly, ...], ...]  # k x e cols: S columns
    rootset: RootSet

    def projector_rep(self, i: int, j: int) -> QPoly:
        """sum_l right_adj[i][l] * left[l][j]  mod poly."""
        acc = QPoly.zero()
        for l in range(self.multiplicity):
            acc = acc + self.right_adj[i][l] * self.left[l][j]
        return acc % self.poly

    def copy_rep(self, copy: int, i: int, j: int) -> QPoly:
        """right_adj[i][copy] * left[copy][j]  mod poly (single diagonal copy)."""
        return (self.right_adj[i][copy] * self.left[copy][j]) % self.poly


def _build_blocks(a: QMatrix, factor: QPoly, mult: int) -> list[FactorBlock]:
    k = a.rows
    x = QPoly.x()
    work = [factor.monic()]
    done: list[FactorBlock] = []
    while work:
        g = work.pop()
        try:
            shifted = [
                [
                    QPoly.constant(a.entries[j][i]) - (x if i == j else QPoly.zero())
                    for j in range(k)
                ]
                for i in range(k)
            ]  # (A^T - tI) rows
            left = _nullspace_mod(shifted, g)
            plain = [
                [
                    QPoly.constant(a.entries[i][j]) - (x if i == j else QPoly.zero())
                    for j in range(k)
                ]
                for i in range(k)
            ]
            right = _nullspace_mod(plain, g)
            if len(left) != mult or len(right) != mult:
                raise ArithmeticError(
                    "eigenspace dimension mismatch (matrix not diagonalizable?)"
                )
            gram = [
                [
                    sum(
                        (left[i][s] * right[j][s] for s in range(k)), QPoly.zero()
                    )
                    % g
                    for j in range(mult)
                ]
                for i in range(mult)
            ]
            gram_inv = _invert_grid_mod(gram, g)
            right_adj = [
                [
                    sum(
                        (right[j][s] * gram_inv[j][l] for j in range(mult)),
                        QPoly.zero(),
                    )
                    % g
                    for l in range(mult)
                ]
                for s in range(k)
            ]
            done.append(
                FactorBlock(
                    poly=g,
                    multiplicity=mult,
                    left=tuple(tuple(row) for row in left),
                    right_adj=tuple(tuple(row) for row in right_adj),
                    rootset=RootSet(g),
                )
            )
        except SplitRequired as exc:
            work.append(exc.split.m1)
            work.append(exc.split.m2)
    return done


# ---------------------------------------------------------------------------
# the decomposition


@dataclass(frozen=True)
class Slot:
    """One diagonal position: a root of a block, at a copy index."""

    block: int
    root: int
    copy: int
    segment: int


@dataclass(frozen=True)
class EigenDecomposition:
    dim: int
    spectral_class: SpectralClass
    eigenvalues: tuple[tuple[ComplexAlgebraic, int], ...]  # (value, multiplicity)
    d: tuple[ComplexAlgebraic, ...]  # diagonal, length dim
    s: tuple[tuple[FieldElement, ...], ...]  # columns are right eigenvectors
    s_inv: tuple[tuple[FieldElement, ...], ...]  # rows are left eigenvectors
    sigma: tuple[int, ...]  # 0-indexed conjugation permutation of slots
    segment_offsets: tuple[int, ...]
    blocks: tuple[FactorBlock, ...]
    slots: tuple[Slot, ...]
    matrix: QMatrix


def _verify_blocks(a: QMatrix, blocks: list[FactorBlock]) -> None:
    k = a.rows
    sums = {
        id(b): newton_power_sums(b.poly, b.poly.degree + 1) for b in blocks
    }
    for i in range(k):
        for j in range(k):
            ident = Fraction(0)
            image = Fraction(0)
            for b in blocks:
                rep = b.projector_rep(i, j)
                ident += trace_of(rep, sums[id(b)])
                image += trace_of((QPoly.x() * rep) % b.poly, sums[id(b)])
            if ident != (1 if i == j else 0) or image != a.entries[i][j]:
                raise AssertionError("eigendecomposition failed trace verification")


def eigendecompose(a: QMatrix) -> EigenDecomposition:
    """Exact S · D · S⁻¹ with paper layout (descending-multiplicity segments)."""
    cls = classify(a)
    if cls is SpectralClass.DEFECTIVE:
        m = minimal_poly(a)
        repeated = [
            fac for e, fac in squarefree_decomposition(m).items() if e >= 2
        ]
        raise ValueError(
            f"matrix is defective: minimal polynomial {m!r} has repeated "
            f"factor(s) {repeated!r}"
        )
    k = a.rows
    blocks: list[FactorBlock] = []
    for mult, factor in sorted(squarefree_decomposition(char_poly(a)).items()):
        if factor.degree >= 1:
            blocks.extend(_build_blocks(a, factor, mult))
    _verify_blocks(a, blocks)

    # one "unit" = a real eigenvalue, or an adjacent conjugate pair (+im first)
    units: list[tuple[int, list[int], ComplexAlgebraic, list[ComplexAlgebraic]]] = []
    for bi, block in enumerate(blocks):
        rs = block.rootset
        candidates = rational_roots(block.poly)
        idx = 0
        while idx < block.poly.degree:
            conj = rs.conjugate_index(idx)
            value = None
            if conj == idx:
                for r in candidates:
                    if rs.is_root_of(idx, QPoly([-r, Fraction(1)])):
                        value = ComplexAlgebraic.from_rational(r)
                        break
            if value is None:
                fe = FieldElement.generator(block.poly).with_root(rs, idx)
                value = ComplexAlgebraic.from_field_element(fe)
            if conj == idx:
                units.append((bi, [idx], value, [value]))
                idx += 1
            else:
                units.append((bi, [idx, conj], value, [value, value.conjugate()]))
                idx += 2

    def unit_cmp(ua, ub) -> int:
        ma = blocks[ua[0]].multiplicity
        mb = blocks[ub[0]].multiplicity
        if ma != mb:
            return -1 if ma > mb else 1
        c = ua[2].real_part.compare(ub[2].real_part)
        if c:
            return c
        return ua[2].imag_part.compare(ub[2].imag_part)

    units.sort(key=cmp_to_key(unit_cmp))

    eigenvalues: list[tuple[ComplexAlgebraic, int]] = []
    slots: list[Slot] = []
    segment_offsets: list[int] = []
    seg_of_slot: list[int] = []
    segment_partner: list[int] = []
    for bi, roots, _value, values in units:
        mult = blocks[bi].multiplicity
        first_segment = len(segment_offsets)
        for pos, (root, value) in enumerate(zip(roots, values)):
            seg = len(segment_offsets)
            segment_offsets.append(len(slots))
            eigenvalues.append((value, mult))
            if len(roots) == 2:
                segment_partner.append(first_segment + (1 - pos))
            else:
                segment_partner.append(seg)
            for copy in range(mult):
                slots.append(Slot(block=bi, root=root, copy=copy, segment=seg))
                seg_of_slot.append(seg)
    if len(slots) != k:
        raise AssertionError("segment layout does not fill the diagonal")

    sigma = [0] * k
    for i, slot in enumerate(slots):
        partner_seg = segment_partner[slot.segment]
        sigma[i] = segment_offsets[partner_seg] + slot.copy

    d = tuple(eigenvalues[slot.segment][0] for slot in slots)
    s_grid = []
    for i in range(k):
        row = []
        for slot in slots:
            block = blocks[slot.block]
            row.append(
                FieldElement(
                    block.poly,
                    block.right_adj[i][slot.copy],
                    block.rootset,
                    slot.root,
                )
            )
        s_grid.append(tuple(row))
    sinv_grid = []
    for slot in slots:
        block = blocks[slot.block]
        sinv_grid.append(
            tuple(
                FieldElement(block.poly, block.left[slot.copy][j], block.rootset, slot.root)
                for j in range(k)
            )
        )

    return EigenDecomposition(
        dim=k,
        spectral_class=cls,
        eigenvalues=tuple(eigenvalues),
        d=d,
        s=tuple(s_grid),
        s_inv=tuple(sinv_grid),
        sigma=tuple(sigma),
        segment_offsets=tuple(segment_offsets),
        blocks=tuple(blocks),
        slots=tuple(slots),
        matrix=a,
    )


def entry_exponential_sum(
    dec: EigenDecomposition, p: int, q: int
) -> list[tuple[ComplexAlgebraic, ComplexAlgebraic]]:
    """Constant-coefficient exponential form of n -> Aⁿ[p,q] (1-indexed p, q).

    Returns (coefficient, eigenvalue) pairs over the distinct eigenvalues,
    zero coefficients dropped, conjugate-closed; valid for every n >= 0.
    """
    if not (1 <= p <= dec.dim and 1 <= q <= dec.dim):
        raise IndexError("entry indices are 1-based and must lie in the matrix")
    i, j = p - 1, q - 1
    out: list[tuple[ComplexAlgebraic, ComplexAlgebraic]] = []
    for seg, (value, _mult) in enumerate(dec.eigenvalues):
        slot = dec.slots[dec.segment_offsets[seg]]
        block = dec.blocks[slot.block]
        rep = block.projector_rep(i, j)
        fe = FieldElement(block.poly, rep, block.rootset, slot.root)
        if fe.is_zero_value():
            continue
        out.append((ComplexAlgebraic.from_field_element(fe), value))
    return out


def packed_entry_pairs(
    dec: EigenDecomposition, p: int, q: int
) -> list[tuple[QPoly, QPoly]]:
    """(modulus, coefficient-rep) pairs describing n -> Aⁿ[p,q], one per block."""
    if not (1 <= p <= dec.dim and 1 <= q <= dec.dim):
        raise IndexError("entry indices are 1-based and must lie in the matrix")
    i, j = p - 1, q - 1
    return [(b.poly, b.projector_rep(i, j)) for b in dec.blocks]


def entry_power_value(dec: EigenDecomposition, p: int, q: int, n: int) -> Fraction:
    """Aⁿ[p,q] (1-indexed, n >= 0) evaluated through the decomposition."""
    if n < 0:
        raise ValueError("matrix powers need n >= 0")
    total = Fraction(0)
    x = QPoly.x()
    for modulus, rep in packed_entry_pairs(dec, p, q):
        power = QPoly.one()
        for bit in bin(n)[2:]:
            power = (power * power) % modulus
            if bit == "1":
                power = (power * x) % modulus
        sums = newton_power_sums(modulus, modulus.degree)
        total += trace_of((rep * power) % modulus, sums)
    return total
