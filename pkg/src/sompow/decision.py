"""Verdict engine: eventual non-negativity / positivity of weighted sums
of matrix powers, and single-matrix eventual positivity.

The decision pipeline per entry (p, q):

  1. build the exact exponential sum  sum_i w_i · A_i^n[p,q]  from the
     eigendecompositions (or from the simple matrices the perturbation
     reduction produces — the scalar f(n) > 0 never changes a sign);
  2. substitute n = L·q + r, with L chosen so every root-of-unity ratio
     and every rational rotation collapses; afterwards each residue class
     has at most one positive real dominant base plus conjugate pairs
     with irrational rotation;
  3. compare the real dominant mass against the total oscillation; a
     strict margin decides, a strict deficit with a single pair (or a
     negative mean) refutes, and the critical boundary stays Unknown.

Analytic Yes/No verdicts are always cross-checked against an exact
simulation over a guard window; a disagreement raises, it is never
papered over.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from ._accel import weighted_scan
from .algebraic.classes import (
    angle_order,
    modulus_classes,
    ratio_root_of_unity,
    root_modulus_squared,
)
from .algebraic.field import ComplexAlgebraic, FieldElement, SplitRequired
from .algebraic.realalg import DegreeCapExceeded, RealAlgebraic
from .algebraic.rootsets import RootSet
from .exact.qmatrix import QMatrix, char_poly
from .exact.qpoly import QPoly, squarefree_decomposition
from .expsum import ExponentialSum
from .perturb import _ceil_sqrt, reduce_to_simple
from .reductions import WeightedMatrixSet
from .spectral import _nullspace_mod, eigendecompose, packed_entry_pairs

MODES = ("nonneg", "pos")
ROUTES = ("auto", "direct", "perturb")


@dataclass(frozen=True)
class Verdict:
    """yes(threshold) | no(witness) | unknown(reason, undecided classes)."""

    kind: str
    threshold: int | None = None
    witness: dict | None = None
    undecided: tuple = ()
    reason: str | None = None

    @staticmethod
    def yes(threshold: int) -> "Verdict":
        return Verdict("yes", threshold=threshold)

    @staticmethod
    def no(witness: dict | None = None, reason: str | None = None) -> "Verdict":
        return Verdict("no", witness=witness, reason=reason)

    @staticmethod
    def unknown(reason: str, undecided=()) -> "Verdict":
        return Verdict("unknown", reason=reason, undecided=tuple(undecided))

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.threshold is not None:
            out["threshold"] = self.threshold
        if self.witness is not None:
            out["witness"] = self.witness
        if self.undecided:
            out["undecided_classes"] = list(self.undecided)
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


# ---------------------------------------------------------------------------
# exact bounded simulation


def _flatten(wset: WeightedMatrixSet):
    mat_nums = [
        [e.numerator for row in a.entries for e in row] for _, a in wset.pairs
    ]
    mat_dens = [
        [e.denominator for row in a.entries for e in row] for _, a in wset.pairs
    ]
    w_nums = [w.numerator for w, _ in wset.pairs]
    w_dens = [w.denominator for w, _ in wset.pairs]
    return mat_nums, mat_dens, w_nums, w_dens, wset.dim


def simulate_prefix(wset: WeightedMatrixSet, horizon: int, mode: str):
    """Smallest n <= horizon violating the mode, as (n, (row, col), value)
    with 1-indexed entries; None when the whole prefix is clean."""
    _check_mode(mode)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    hits = weighted_scan(*_flatten(wset), horizon, mode == "pos", False)
    if not hits:
        return None
    n, r, c, num, den = hits[0]
    return n, (r + 1, c + 1), Fraction(num, den)


def violation_log(wset: WeightedMatrixSet, horizon: int, mode: str):
    """Every violating n <= horizon (first bad entry each), 1-indexed."""
    _check_mode(mode)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    hits = weighted_scan(*_flatten(wset), horizon, mode == "pos", True)
    return [(n, (r + 1, c + 1), Fraction(num, den)) for n, r, c, num, den in hits]


# ---------------------------------------------------------------------------
# the dominant-term engine


def _substitution_period(s: ExponentialSum) -> int:
    """lcm of all rotation orders and same-modulus ratio orders.

    Taken over every modulus class (not only the top one): lower classes
    become dominant in residue classes where the top coefficients cancel,
    so they need the same collapsing."""
    rs = s.rootset()
    period = 1
    for cls in modulus_classes(rs):
        idx = cls.indices
        for i in idx:
            m = angle_order(rs, i)
            if m:
                period = lcm(period, m)
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                m = ratio_root_of_unity(rs, idx[a], idx[b])
                if m:
                    period = lcm(period, m)
    return period


def _real_root_sign(root) -> int:
    lo, hi = root.real_interval()
    while lo <= 0 <= hi:
        root.refine()
        lo, hi = root.real_interval()
    return 1 if lo > 0 else -1


def _real_coeff(s: ExponentialSum, index: int) -> RealAlgebraic:
    value = ComplexAlgebraic.from_field_element(s.coeff_element(index))
    if not value.is_real():
        raise AssertionError("coefficient of a real base is not real")
    return value.real_part


@dataclass
class _ClassOutcome:
    kind: str  # "yes" | "no" | "unknown"
    q_start: int = 0
    reason: str | None = None


def _class_threshold(s_r: ExponentialSum, classes, margin: RealAlgebraic) -> int:
    """Smallest q with  margin·rho^q > (subdominant mass)·sub^q, certified
    through rational bounds; 0 when there is no subdominant mass."""
    if len(classes) == 1:
        return 0
    ratio = classes[1].modulus_squared / classes[0].modulus_squared
    while True:
        u = _ceil_sqrt(ratio.interval().hi)
        if u < 1:
            break
        ratio = ratio.refined()
    mass_up = Fraction(0)
    for cls in classes[1:]:
        for i in cls.indices:
            box = s_r.coeff_element(i).box()
            mass_up += _ceil_sqrt(box.modulus_squared().hi)
    while margin.interval().lo <= 0:
        margin = margin.refined()
    floor = margin.interval().lo
    q = 0
    remaining = mass_up
    while remaining >= floor:
        q += 1
        remaining *= u
    return q


def _analyse_class(s_r: ExponentialSum, mode: str) -> _ClassOutcome:
    """Dominant-term analysis of one (nonzero) residue-class sum."""
    rs = s_r.rootset()
    classes = modulus_classes(rs)
    top = classes[0].indices

    real_idx = [i for i in top if rs.conjugate_index(i) == i]
    if len(real_idx) > 1:
        raise AssertionError("two distinct real bases share the top modulus")
    pair_plus = [
        i for i in top if not rs.roots[i].is_real and rs.roots[i].im_sign > 0
    ]

    if real_idx:
        i = real_idx[0]
        if _real_root_sign(rs.roots[i]) < 0:
            raise AssertionError("negative real base survived substitution")
        c0 = _real_coeff(s_r, i)
    else:
        c0 = RealAlgebraic.from_rational(0)

    if not pair_plus:
        # a single positive real dominant base; its coefficient decides
        if c0.sign() > 0:
            return _ClassOutcome("yes", _class_threshold(s_r, classes, c0))
        return _ClassOutcome(
            "no", reason="dominant positive real base carries a negative coefficient"
        )

    oscillation = RealAlgebraic.from_rational(0)
    for j in pair_plus:
        cj = ComplexAlgebraic.from_field_element(s_r.coeff_element(j))
        oscillation = oscillation + cj.modulus_squared().sqrt() * Fraction(2)
    margin = c0 - oscillation

    if margin.sign() > 0:
        return _ClassOutcome("yes", _class_threshold(s_r, classes, margin))

    if c0.sign() < 0:
        # oscillation averages to zero over irrational rotations, so the
        # normalized values accumulate near c0 < 0 infinitely often
        for j in pair_plus:
            if angle_order(rs, j) is not None:
                raise AssertionError("rational rotation survived substitution")
        return _ClassOutcome("no", reason="dominant mean is negative")

    if len(pair_plus) == 1 and margin.sign() < 0:
        if angle_order(rs, pair_plus[0]) is not None:
            raise AssertionError("rational rotation survived substitution")
        return _ClassOutcome(
            "no",
            reason="single irrational rotation dips below the real dominant mass",
        )

    return _ClassOutcome(
        "unknown",
        reason=(
            "critical boundary (dominant mass equals oscillation)"
            if margin.sign() == 0
            else "multiple dominant rotations without a sign margin"
        ),
    )


def decide_ultimate_sign(s: ExponentialSum, mode: str) -> Verdict:
    """Verdict for ``s.value(n) >= 0`` (nonneg) / ``> 0`` (pos) eventually."""
    _check_mode(mode)
    if s.is_zero():
        if mode == "nonneg":
            return Verdict.yes(1)
        return Verdict.no(
            witness={"kind": "residue", "residue": 0, "modulus": 1},
            reason="the sum is identically zero",
        )

    period = _substitution_period(s)
    outcomes: list[tuple[int, _ClassOutcome]] = []
    for r in range(period):
        s_r = s if period == 1 else s.residue_substitute(period, r)
        if s_r.is_zero():
            if mode == "nonneg":
                outcomes.append((r, _ClassOutcome("yes", 0)))
                continue
            return Verdict.no(
                witness={"kind": "residue", "residue": r, "modulus": period},
                reason="the sum vanishes identically on this residue class",
            )
        try:
            outcome = _analyse_class(s_r, mode)
        except DegreeCapExceeded as exc:
            outcome = _ClassOutcome(
                "unknown", reason=f"algebraic degree budget exceeded ({exc})"
            )
        if outcome.kind == "no":
            return Verdict.no(
                witness={"kind": "residue", "residue": r, "modulus": period},
                reason=outcome.reason,
            )
        outcomes.append((r, outcome))

    if all(o.kind == "yes" for _, o in outcomes):
        threshold = max(
            (period * o.q_start + r for r, o in outcomes), default=1
        )
        return Verdict.yes(max(1, threshold))
    undecided = [
        {"residue": r, "modulus": period, "reason": o.reason}
        for r, o in outcomes
        if o.kind == "unknown"
    ]
    return Verdict.unknown("some residue classes stay undecided", undecided)


# ---------------------------------------------------------------------------
# whole-set decision


def _entry_sum(decorated, p: int, q: int) -> ExponentialSum:
    total = ExponentialSum.zero()
    for weight, dec in decorated:
        part = ExponentialSum.zero()
        for g, rep in packed_entry_pairs(dec, p, q):
            part = part + ExponentialSum(g, rep)
        total = total + part.scale(weight)
    return total


def _entry_grid(decorated, dim: int) -> dict:
    return {
        (p, q): _entry_sum(decorated, p, q)
        for p in range(1, dim + 1)
        for q in range(1, dim + 1)
    }


def _combine_entries(grid: dict, mode: str) -> Verdict:
    thresholds: list[int] = []
    undecided: list[dict] = []
    for (p, q) in sorted(grid):
        v = decide_ultimate_sign(grid[(p, q)], mode)
        if v.kind == "no":
            witness = dict(v.witness or {})
            witness["entry"] = [p, q]
            return Verdict.no(witness=witness, reason=v.reason)
        if v.kind == "yes":
            thresholds.append(v.threshold)
        else:
            listed = v.undecided or ({"reason": v.reason},)
            undecided.extend({**u, "entry": [p, q]} for u in listed)
    if undecided:
        return Verdict.unknown("some entries stay undecided", undecided)
    return Verdict.yes(max(thresholds, default=1))


def _decompose_all(wset: WeightedMatrixSet):
    out = []
    for i, (w, a) in enumerate(wset.pairs):
        try:
            out.append((w, eigendecompose(a)))
        except ValueError as exc:
            raise ValueError(f"matrix {i + 1} of the set: {exc}") from None
    return out


def _perturb_grid(wset: WeightedMatrixSet) -> dict:
    pairs, _f, _plan = reduce_to_simple(wset)
    decorated = [(w, eigendecompose(b)) for w, b in pairs]
    return _entry_grid(decorated, wset.dim)


def decide(
    wset: WeightedMatrixSet,
    mode: str,
    route: str = "auto",
    guard_horizon: int = 500,
) -> tuple[Verdict, dict]:
    """Decide the eventual sign of  sum_i w_i A_i^n  over all entries.

    Returns the verdict and a JSON-ready report.  Analytic Yes/No verdicts
    are cross-validated against exact simulation; a contradiction raises
    RuntimeError (it would be an engine bug, not an input property).
    """
    _check_mode(mode)
    if route not in ROUTES:
        raise ValueError(f"route must be one of {ROUTES}, got {route!r}")
    if guard_horizon < 1:
        raise ValueError("guard horizon must be >= 1")

    decorated = _decompose_all(wset)
    if route == "perturb":
        grid = _perturb_grid(wset)
    else:
        grid = _entry_grid(decorated, wset.dim)
    verdict = _combine_entries(grid, mode)

    if route == "auto" and wset.dim <= 3 and len(wset.pairs) <= 2:
        try:
            other = _combine_entries(_perturb_grid(wset), mode)
        except ValueError:
            other = None  # not perturbable (e.g. repeated zero eigenvalue)
        if (
            other is not None
            and "unknown" not in (verdict.kind, other.kind)
            and verdict.kind != other.kind
        ):
            raise RuntimeError(
                "internal contradiction: direct route says "
                f"{verdict.kind}, perturb route says {other.kind}"
            )

    verdict = _guard_check(wset, mode, verdict, guard_horizon)
    report = {
        "property": "enn" if mode == "nonneg" else "ep",
        **verdict.to_json(),
        "route": route,
        "guard_horizon": guard_horizon,
        "cross_check": "passed",
    }
    return verdict, report


def _guard_check(
    wset: WeightedMatrixSet, mode: str, verdict: Verdict, guard_horizon: int
) -> Verdict:
    if verdict.kind == "yes":
        horizon = verdict.threshold + guard_horizon
        for n, entry, value in violation_log(wset, horizon, mode):
            if n >= verdict.threshold:
                raise RuntimeError(
                    "internal contradiction: analytic threshold "
                    f"{verdict.threshold} but violation at n={n}, "
                    f"entry {entry}, value {value}"
                )
        return verdict
    if verdict.kind == "no":
        first = simulate_prefix(wset, guard_horizon, mode)
        if first is not None:
            n, entry, value = first
            return Verdict.no(
                witness={
                    "kind": "index",
                    "n": n,
                    "entry": list(entry),
                    "value": str(value),
                },
                reason=verdict.reason,
            )
        return verdict
    return verdict


# ---------------------------------------------------------------------------
# single-matrix eventual positivity


def _shifted_grid(a: QMatrix, transpose: bool):
    k = a.rows
    x = QPoly.x()
    return [
        [
            QPoly.constant(a.entries[j][i] if transpose else a.entries[i][j])
            - (x if i == j else QPoly.zero())
            for j in range(k)
        ]
        for i in range(k)
    ]


def _locate_real_root(poly: QPoly, target: RealAlgebraic, rootset: RootSet) -> int:
    for j in range(poly.degree):
        root = rootset.roots[j]
        if not root.is_real:
            continue
        lo, hi = root.real_interval()
        if RealAlgebraic(poly, lo, hi) == target:
            return j
    raise AssertionError("dominant root lost while splitting its factor")


def _uniform_sign(vec, modulus: QPoly, rootset: RootSet, index: int) -> int | None:
    """+1/-1 when every entry of the eigenvector is strictly of that sign
    at the chosen root; None on a zero entry or mixed signs."""
    signs = set()
    for entry in vec:
        fe = FieldElement(modulus, entry % modulus, rootset, index)
        if fe.is_zero_value():
            return None
        box = fe.box()
        while box.re.contains_zero():
            fe.refine()
            box = fe.box()
        signs.add(1 if box.re.lo > 0 else -1)
        if len(signs) > 1:
            return None
    return signs.pop()


def ep_mat(a: QMatrix, guard_horizon: int = 500) -> Verdict:
    """Eventual positivity of a single matrix via strong Perron-Frobenius:
    Yes iff the matrix has a strictly dominant, simple, positive real
    eigenvalue whose left and right eigenvectors can be chosen strictly
    positive.  Defectiveness elsewhere in the spectrum is irrelevant."""
    if not a.is_square():
        raise ValueError("a square matrix is required")
    factors = [
        (mult, fac)
        for mult, fac in sorted(squarefree_decomposition(char_poly(a)).items())
        if fac.degree >= 1
    ]
    candidates = []  # (modulus_squared, mult, factor, rootset, index)
    for mult, fac in factors:
        rs = RootSet(fac)
        for i in range(fac.degree):
            candidates.append((root_modulus_squared(rs, i), mult, fac, rs, i))

    best = None
    tied = []
    for item in candidates:
        if best is None or item[0].compare(best[0]) > 0:
            best, tied = item, [item]
        elif item[0].compare(best[0]) == 0:
            tied.append(item)
    ms, mult, fac, rs, idx = best
    if ms.sign() == 0:
        return Verdict.no(reason="every eigenvalue is zero")
    if len(tied) > 1:
        return Verdict.no(reason="the dominant eigenvalue modulus is tied")
    if not rs.roots[idx].is_real:
        return Verdict.no(reason="the dominant eigenvalue modulus is tied")
    if _real_root_sign(rs.roots[idx]) < 0:
        return Verdict.no(reason="the dominant eigenvalue is negative")
    if mult != 1:
        return Verdict.no(reason="the dominant eigenvalue is repeated")

    g = fac
    while True:
        try:
            right = _nullspace_mod(_shifted_grid(a, transpose=False), g)
            left = _nullspace_mod(_shifted_grid(a, transpose=True), g)
            break
        except SplitRequired as exc:
            lo, hi = rs.roots[idx].real_interval()
            target = RealAlgebraic(g, lo, hi)
            half = (
                exc.split.m1
                if rs.is_root_of(idx, exc.split.m1)
                else exc.split.m2
            )
            g = half
            rs = RootSet(g)
            idx = _locate_real_root(g, target, rs)
    if len(right) != 1 or len(left) != 1:
        raise AssertionError("simple dominant eigenvalue with eigenspace != 1")

    if _uniform_sign(right[0], g, rs, idx) is None:
        return Verdict.no(reason="the right eigenvector has a zero or sign change")
    if _uniform_sign(left[0], g, rs, idx) is None:
        return Verdict.no(reason="the left eigenvector has a zero or sign change")

    wset = WeightedMatrixSet.of((Fraction(1), a))
    hits = violation_log(wset, guard_horizon, "pos")
    if hits and hits[-1][0] >= guard_horizon:
        raise RuntimeError(
            "guard horizon too small to certify a positivity threshold; "
            "raise it and retry"
        )
    return Verdict.yes(hits[-1][0] + 1 if hits else 1)
