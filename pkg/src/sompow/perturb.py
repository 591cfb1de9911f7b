"""Eigenvalue perturbations: segmented scalings, rotations, and the reduction
of a diagonalizable weighted matrix set to a simple one.

A perturbation multiplies the diagonal of an eigendecomposition slot-wise by
nonzero rationals that respect conjugation (equal values on conjugate
slots).  Segmented perturbations additionally repeat the first segment's
values as a prefix across every segment; those keep all arithmetic rational:
the perturbed variant of a rational matrix is again an exact rational
matrix, computed by per-copy trace sums, no algebraic numbers involved.

The reduction scales each input matrix by blocks of distinct positive
rationals chosen so that no perturbed eigenvalue collides with another: the
ratio of two chosen epsilons must avoid every rational modulus ratio of the
matrix's eigenvalues.  The outputs are simple matrices, and the original
weighted power sum is recovered exactly after dividing by the scalar
sequence f(n) = sum_j eps_j^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebraic.realalg import RealAlgebraic
from .algebraic.resultants import rational_roots
from .exact.qmatrix import QMatrix, mat_pow
from .exact.qpoly import QPoly
from .expsum import newton_power_sums, trace_of
from .reductions import WeightedMatrixSet
from .spectral import EigenDecomposition, eigendecompose


@dataclass(frozen=True)
class Perturbation:
    """Slot-wise nonzero rational scalings of a decomposition's diagonal."""

    eps: tuple[Fraction, ...]
    dec: EigenDecomposition

    def __post_init__(self):
        eps = tuple(Fraction(e) for e in self.eps)
        object.__setattr__(self, "eps", eps)
        if len(eps) != self.dec.dim:
            raise ValueError("perturbation length must match the dimension")
        if any(e == 0 for e in eps):
            raise ValueError("perturbation entries must be nonzero")
        for i, s in enumerate(self.dec.sigma):
            if eps[s] != eps[i]:
                raise ValueError("conjugate slots must carry equal entries")


def _segments(dec: EigenDecomposition) -> list[tuple[int, int]]:
    """(offset, length) per segment, in diagonal order."""
    return [
        (off, dec.eigenvalues[seg][1])
        for seg, off in enumerate(dec.segment_offsets)
    ]


def is_segmented(e: Perturbation) -> bool:
    """True iff every segment repeats the first segment's prefix."""
    template = e.eps[: e.dec.eigenvalues[0][1]]
    for off, length in _segments(e.dec):
        if e.eps[off : off + length] != template[:length]:
            return False
    return True


def build_segmented(dec: EigenDecomposition, template) -> Perturbation:
    """The segmented perturbation whose first segment is ``template``."""
    template = tuple(Fraction(t) for t in template)
    lead = dec.eigenvalues[0][1]
    if len(template) < lead:
        raise ValueError("template shorter than the leading segment")
    eps: list[Fraction] = []
    for _off, length in _segments(dec):
        eps.extend(template[:length])
    return Perturbation(tuple(eps), dec)


def rotate(e: Perturbation) -> Perturbation:
    """Cyclically shift the first segment one step; re-derive the rest."""
    if not is_segmented(e):
        raise ValueError("only segmented perturbations rotate")
    lead = e.dec.eigenvalues[0][1]
    template = e.eps[:lead]
    return build_segmented(e.dec, (template[-1],) + template[:-1])


def _segmented_variant_matrix(dec: EigenDecomposition, e: Perturbation) -> QMatrix:
    """Exact rational perturbed variant (segmented perturbations only)."""
    template = e.eps[: dec.eigenvalues[0][1]]
    k = dec.dim
    x = QPoly.x()
    rows = [[Fraction(0)] * k for _ in range(k)]
    for block in dec.blocks:
        sums = newton_power_sums(block.poly, block.poly.degree + 1)
        for copy in range(block.multiplicity):
            w = template[copy]
            for i in range(k):
                for j in range(k):
                    rep = (x * block.copy_rep(copy, i, j)) % block.poly
                    rows[i][j] += w * trace_of(rep, sums)
    return QMatrix(rows)


def perturbed_variant(
    dec: EigenDecomposition, e: Perturbation
) -> list[list[RealAlgebraic]]:
    """S · (eps ⊙ D) · S⁻¹, entrywise; always exactly real.

    Segmented perturbations take the all-rational route; general ones are
    assembled slot-by-slot in the field representation, pairing each complex
    slot with its conjugate so the imaginary parts cancel identically.
    """
    if e.dec is not dec:
        raise ValueError("perturbation was built for a different decomposition")
    if is_segmented(e):
        m = _segmented_variant_matrix(dec, e)
        return [
            [RealAlgebraic.from_rational(v) for v in row] for row in m.entries
        ]
    return _general_variant(dec, e)


def _general_variant(
    dec: EigenDecomposition, e: Perturbation
) -> list[list[RealAlgebraic]]:
    """Slot-by-slot assembly; works for every perturbation."""
    from .algebraic.field import ComplexAlgebraic

    k = dec.dim
    out: list[list[RealAlgebraic]] = []
    for i in range(k):
        row: list[RealAlgebraic] = []
        for j in range(k):
            total = ComplexAlgebraic.from_rational(0)
            for slot in range(k):
                partner = dec.sigma[slot]
                if partner < slot:
                    continue  # handled together with its conjugate below
                fe = (dec.s[i][slot] * dec.s_inv[slot][j]).scale(e.eps[slot])
                block = dec.blocks[dec.slots[slot].block]
                fe = fe * type(fe).generator(block.poly).with_root(
                    block.rootset, dec.slots[slot].root
                )
                value = ComplexAlgebraic.from_field_element(fe)
                if partner == slot:
                    if value.imag_part.sign() != 0:
                        raise AssertionError("real slot produced imaginary mass")
                    total = total + value
                else:
                    total = total + value + value.conjugate()
            if total.imag_part.sign() != 0:
                raise AssertionError("perturbed variant has an imaginary part")
            row.append(total.real_part)
        out.append(row)
    return out


def variant_as_qmatrix(grid: list[list[RealAlgebraic]]) -> QMatrix:
    """Convert an all-rational variant grid back to a QMatrix."""
    return QMatrix([[v.rational_value() for v in row] for row in grid])


def lemma7_fold(
    dec: EigenDecomposition, e: Perturbation, n: int
) -> tuple[QMatrix, Fraction]:
    """(sum over rotations u of variant_uⁿ,  sum_j eps_jⁿ over the first segment).

    The two returned values satisfy  sum_u variant_uⁿ = (sum_j eps_jⁿ) · Aⁿ.
    """
    if not is_segmented(e):
        raise ValueError("the fold needs a segmented perturbation")
    lead = dec.eigenvalues[0][1]
    template = e.eps[:lead]
    signs = {1 if t > 0 else -1 for t in template}
    if len(signs) > 1:
        raise ValueError("all template entries must share one sign")
    if n < 1:
        raise ValueError("the fold identity is for n >= 1")
    total: QMatrix | None = None
    current = e
    for _ in range(lead):
        powered = mat_pow(_segmented_variant_matrix(dec, current), n)
        total = powered if total is None else total + powered
        current = rotate(current)
    scalar = sum((t**n for t in template), Fraction(0))
    return total, scalar


# ---------------------------------------------------------------------------
# epsilon selection


@dataclass(frozen=True)
class PlanEntry:
    dec: EigenDecomposition
    mu_i: int
    eta_i: int
    base_perturbations: tuple[Perturbation, ...]  # one per epsilon block


@dataclass(frozen=True)
class PerturbationPlan:
    mu: int
    epsilons: tuple[Fraction, ...]
    forbidden: frozenset[Fraction]
    entries: tuple[PlanEntry, ...]


@dataclass(frozen=True)
class ScaleSequence:
    """f(n) = sum_j eps_jⁿ over the plan's epsilon list."""

    epsilons: tuple[Fraction, ...]

    def value(self, n: int) -> Fraction:
        return sum((e**n for e in self.epsilons), Fraction(0))


def _rational_sqrt(v: Fraction) -> Fraction | None:
    if v < 0:
        return None
    num = math.isqrt(v.numerator)
    den = math.isqrt(v.denominator)
    if num * num == v.numerator and den * den == v.denominator:
        return Fraction(num, den)
    return None


def _ceil_sqrt(v: Fraction) -> Fraction:
    """A rational upper bound on sqrt(v), v >= 0."""
    exact = _rational_sqrt(v)
    if exact is not None:
        return exact
    scale = 10**8
    return Fraction(math.isqrt(v.numerator * scale * scale // v.denominator) + 1, scale)


def _forbidden_ratios(decs) -> frozenset[Fraction]:
    """Rational members of {1} ∪ {|α_j / α_l|}, per matrix, both orders.

    Rationality of a modulus ratio is decided exactly: candidate values are
    the rational roots of the quotient's defining polynomial, each compared
    against the quotient itself.  (The quotient's isolating interval alone
    cannot be trusted to land on a point for rational values.)
    """
    out = {Fraction(1)}
    for dec in decs:
        moduli = [value.modulus_squared() for value, _ in dec.eigenvalues]
        for j, mj in enumerate(moduli):
            for l, ml in enumerate(moduli):
                if j == l or ml.sign() == 0 or mj.sign() == 0:
                    continue
                ratio_sq = mj / ml
                for cand in rational_roots(ratio_sq.poly):
                    if cand <= 0 or ratio_sq != cand:
                        continue
                    root = _rational_sqrt(cand)
                    if root is not None:
                        out.add(root)
                    break
    return frozenset(out)


def _gamma_upper(decs) -> Fraction:
    worst = Fraction(0)
    for dec in decs:
        k = dec.dim
        for p in range(k):
            for r in range(k):
                for q in range(k):
                    box = dec.s[p][r].box() * dec.s_inv[r][q].box()
                    worst = max(worst, _ceil_sqrt(box.modulus_squared().hi))
    return worst


def _alpha_upper(decs) -> Fraction:
    worst = Fraction(0)
    for dec in decs:
        for value, _ in dec.eigenvalues:
            worst = max(worst, _ceil_sqrt(value.modulus_squared().interval().hi))
    return worst


def choose_epsilons(
    decs,
    precision_eps: Fraction | None = None,
    weights=None,
) -> PerturbationPlan:
    """Distinct positive epsilons avoiding the forbidden ratio set.

    With ``precision_eps`` the first epsilon is 1 and the rest are chosen
    below the deviation bound, so the reduced set tracks the original
    weighted power sum to within precision_eps**n entrywise.
    """
    decs = list(decs)
    if not decs:
        raise ValueError("no decompositions given")
    for dec in decs:
        for value, mult in dec.eigenvalues:
            if mult >= 2 and value.is_zero():
                raise ValueError(
                    "a zero eigenvalue of multiplicity >= 2 cannot be separated "
                    "by scaling perturbations"
                )
    mus = [dec.eigenvalues[0][1] for dec in decs]
    mu = math.lcm(*mus)
    forbidden = _forbidden_ratios(decs)

    bound: Fraction | None = None
    if precision_eps is not None:
        precision_eps = Fraction(precision_eps)
        if precision_eps <= 0:
            raise ValueError("precision must be positive")
        k = max(dec.dim for dec in decs)
        gamma = max(Fraction(1), _gamma_upper(decs))
        alpha = max(Fraction(1), _alpha_upper(decs))
        mass = Fraction(1)
        if weights is not None:
            mass = max(
                Fraction(1), sum((abs(Fraction(w)) for w in weights), Fraction(0))
            )
        bound = min(Fraction(1), precision_eps / (mu * k * alpha * gamma * mass))

    chosen: list[Fraction] = []
    denom = 0
    while len(chosen) < mu:
        denom += 1
        cand = Fraction(1, denom)
        if bound is not None and chosen and cand >= bound:
            continue
        if any(
            cand / prev in forbidden or prev / cand in forbidden for prev in chosen
        ):
            continue
        chosen.append(cand)

    entries = []
    for dec, mu_i in zip(decs, mus):
        eta_i = mu // mu_i
        blocks = tuple(
            build_segmented(dec, chosen[j * mu_i : (j + 1) * mu_i])
            for j in range(eta_i)
        )
        entries.append(
            PlanEntry(dec=dec, mu_i=mu_i, eta_i=eta_i, base_perturbations=blocks)
        )
    return PerturbationPlan(
        mu=mu,
        epsilons=tuple(chosen),
        forbidden=forbidden,
        entries=tuple(entries),
    )


def _as_pairs(wset) -> list[tuple[Fraction, QMatrix]]:
    """Accept a WeightedMatrixSet or any iterable of (weight, matrix)."""
    if isinstance(wset, WeightedMatrixSet):
        return list(wset.pairs)
    return [(Fraction(w), m) for w, m in wset]


def algorithm1_reduce(
    wset, plan: PerturbationPlan
) -> tuple[list[tuple[Fraction, QMatrix]], ScaleSequence]:
    """All rotated perturbed variants, with the exact scale sequence.

    Every output matrix is simple.  Matrix i's mu variants (grouped
    consecutively) satisfy, for every n >= 1:
        sum over its variants of variantⁿ = f(n) · A_iⁿ ,
    so for a common-dimension set the weighted aggregate identity
        sum over outputs of w · variantⁿ = f(n) · sum_i w_i · A_iⁿ
    holds as well.  Plain (weight, matrix) pair lists are accepted too:
    the reduction itself never adds matrices of different inputs.
    """
    in_pairs = _as_pairs(wset)
    if len(plan.entries) != len(in_pairs):
        raise ValueError("plan does not match the matrix set")
    out: list[tuple[Fraction, QMatrix]] = []
    for (weight, matrix), entry in zip(in_pairs, plan.entries):
        if entry.dec.matrix != matrix:
            raise ValueError("plan entry decomposed a different matrix")
        for base in entry.base_perturbations:
            current = base
            for _ in range(entry.mu_i):
                out.append(
                    (weight, _segmented_variant_matrix(entry.dec, current))
                )
                current = rotate(current)
    return out, ScaleSequence(plan.epsilons)


def reduce_to_simple(
    wset, precision_eps: Fraction | None = None
) -> tuple[list[tuple[Fraction, QMatrix]], ScaleSequence, PerturbationPlan]:
    """Decompose, pick epsilons, and run the reduction in one call."""
    in_pairs = _as_pairs(wset)
    decs = [eigendecompose(a) for _, a in in_pairs]
    plan = choose_epsilons(
        decs,
        precision_eps=precision_eps,
        weights=[w for w, _ in in_pairs],
    )
    pairs, f = algorithm1_reduce(in_pairs, plan)
    return pairs, f, plan


def check_reduction_identity(
    wset,
    pairs: list[tuple[Fraction, QMatrix]],
    f: ScaleSequence,
    n_max: int = 20,
) -> bool:
    """Exact per-matrix check of  sum over variants of Bⁿ = f(n) · Aⁿ.

    Each input matrix owns the next mu consecutive output pairs.  The
    per-matrix identity implies the weighted aggregate one whenever the
    input dimensions agree.
    """
    in_pairs = _as_pairs(wset)
    mu, rem = divmod(len(pairs), len(in_pairs))
    if rem:
        raise ValueError("outputs do not group evenly over the inputs")
    for idx, (_w, a) in enumerate(in_pairs):
        group = pairs[idx * mu : (idx + 1) * mu]
        for n in range(1, n_max + 1):
            lhs: QMatrix | None = None
            for _, b in group:
                term = mat_pow(b, n)
                lhs = term if lhs is None else lhs + term
            if lhs != mat_pow(a, n).scale(f.value(n)):
                return False
    return True
