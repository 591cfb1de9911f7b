"""End-to-end acceptance checks: one test per shipped guarantee.

Every check is exact (Fraction arithmetic, tolerance zero) unless a runtime
budget is stated.  Ground truth for the decision corpus is computed inside
this file from first principles (spectral projectors of companion matrices
with known rational roots), independently of the decision engine.

Run with ``pytest tests/test_acceptance.py -v`` for one pass/fail line per
guarantee; add ``-s`` to see the printed summaries.
"""

import math
import random
import time
from fractions import Fraction

from sompow.decision import decide, ep_mat, simulate_prefix, violation_log
from sompow.exact.qmatrix import QMatrix, char_poly, mat_pow, solve_linear
from sompow.exact.qpoly import QPoly
from sompow.lrs import LRS, companion_matrix, generator_matrix
from sompow.perturb import (
    build_segmented,
    check_reduction_identity,
    lemma7_fold,
    reduce_to_simple,
)
from sompow.reductions import (
    WeightedMatrixSet,
    matrix_to_interleaved_lrs,
    somset_to_lrs,
    unnlrs_to_ennsom,
    uplrs_to_epsom,
    weighted_power_sum,
)
from sompow.spectral import SpectralClass, classify, eigendecompose, minimal_poly

# the ramp sequence -1, 0, 1, 2, 3, ...: u_n = 2u_{n-1} - u_{n-2}
RAMP = LRS(2, (2, -1), (-1, 0))

# diagonalizable with a repeated dominant eigenvalue: spectrum 2, 2, -1
REPEATED = QMatrix([[5, 12, -6], [-3, -10, 6], [-3, -12, 8]])


def _ok(label: str, detail: str = "") -> None:
    suffix = f"  ({detail})" if detail else ""
    print(f"acceptance PASS — {label}{suffix}")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _rand_frac(rng: random.Random, span: int = 3) -> Fraction:
    den = rng.choice((1, 1, 2))
    return Fraction(rng.randint(-span * den, span * den), den)


def _rand_matrix(rng: random.Random, k: int) -> QMatrix:
    return QMatrix([[_rand_frac(rng) for _ in range(k)] for _ in range(k)])


def _rand_weight(rng: random.Random) -> Fraction:
    w = Fraction(0)
    while w == 0:
        w = _rand_frac(rng, span=2)
    return w


# ---------------------------------------------------------------------------
# 1. closed form of the ramp companion's powers


def test_01_companion_powers_closed_form():
    m = companion_matrix(RAMP)
    assert m == QMatrix([[2, 1], [-1, 0]])
    start = time.perf_counter()
    for n in range(1, 101):
        assert mat_pow(m, n) == QMatrix([[n + 1, n], [-n, 1 - n]])
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _ok("companion powers match the closed form", f"n = 1..100 in {elapsed:.3f}s")


# ---------------------------------------------------------------------------
# 2. generator matrix reads off the sequence


def _check_generator_identity(lrs: LRS, n_max: int) -> None:
    g = generator_matrix(lrs)
    k = lrs.order
    values = lrs.terms(n_max + 1)
    acc = g  # G^(n+1) for n = 0
    for n in range(n_max + 1):
        assert acc[0, k] == values[n], f"n={n}"
        acc = acc * g


def test_02_generator_matrix_reads_off_terms():
    assert generator_matrix(RAMP) == QMatrix([[0, 0, -1], [0, 2, 1], [0, -1, 0]])
    _check_generator_identity(RAMP, 50)
    rng = random.Random(211)
    for _ in range(50):
        k = rng.randint(1, 4)
        lrs = LRS(
            k,
            tuple(_rand_frac(rng) for _ in range(k)),
            tuple(_rand_frac(rng) for _ in range(k)),
        )
        _check_generator_identity(lrs, 50)
    _ok("generator identity", "ramp sequence + 50 random recurrences, n <= 50")


# ---------------------------------------------------------------------------
# 3. braided embedding of one matrix indexes its powers


def test_03_interleaved_embedding_indexing():
    rng = random.Random(307)
    start = time.perf_counter()
    for _ in range(25):
        k = rng.randint(1, 3)
        a = _rand_matrix(rng, k)
        braided = matrix_to_interleaved_lrs(a)
        terms = braided.terms(20 * k * k)
        power = a
        for r in range(20):
            for s in range(k):
                for t in range(k):
                    assert terms[r * k * k + s * k + t] == power[s, t]
            power = power * a
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    _ok("braided embedding indexing", f"25 matrices, r < 20 in {elapsed:.2f}s")


# ---------------------------------------------------------------------------
# 4. braided recurrence of a weighted set tracks the power-sum signs


def test_04_braided_recurrence_tracks_weighted_sum_signs():
    rng = random.Random(401)
    for _ in range(25):
        k = rng.randint(1, 3)
        m = rng.randint(1, 3)
        wset = WeightedMatrixSet(
            k,
            tuple((_rand_weight(rng), _rand_matrix(rng, k)) for _ in range(m)),
        )
        braided = somset_to_lrs(wset)
        terms = braided.terms(20 * k * k)
        for r in range(20):
            total = weighted_power_sum(wset, r + 1)
            for s in range(k):
                for t in range(k):
                    got = terms[r * k * k + s * k + t]
                    want = total[s, t]
                    assert _sign(got) == _sign(want)
                    assert got == want  # the embedding is exact, not just sign-true
    _ok("braided recurrence sign agreement", "25 random sets, horizon 20")


# ---------------------------------------------------------------------------
# 5. sequence-to-matrix-set embeddings keep their block structure


def test_05_sequence_embedding_block_structure():
    k = RAMP.order
    m = companion_matrix(RAMP)
    nn_set = unnlrs_to_ennsom(RAMP)
    (_, a1), (_, a2) = nn_set.pairs
    p = QMatrix([[a2[i + 1, j + 1] for j in range(k)] for i in range(k)])
    assert p == QMatrix([[2, 1], [2, 0]])

    u_row = QMatrix([[RAMP.initial[k - 1 - j] for j in range(k)]])
    for n in range(1, 26):
        total = mat_pow(a1, n) + mat_pow(a2, n)
        window = (u_row * mat_pow(m, n - 1)).row(0)
        lower = mat_pow(m, n) + mat_pow(p, n)
        expected = QMatrix(
            [[Fraction(0)] + list(window)]
            + [[Fraction(0)] + list(lower.row(i)) for i in range(k)]
        )
        assert total == expected
        assert lower.entrywise(lambda v: v >= 0)

    pos_set = uplrs_to_epsom(RAMP)
    (_, _), (_, b2) = pos_set.pairs
    p2 = QMatrix([[b2[i + 1, j + 1] for j in range(k)] for i in range(k)])
    assert p2 == QMatrix([[3, 3], [3, 3]])
    for n in range(1, 26):
        assert (mat_pow(m, n) + mat_pow(p2, n)).entrywise(lambda v: v > 0)

    # verdict-level equivalence at horizon 50: the embedded set violates the
    # sign condition at exactly the steps whose exposed window of sequence
    # values does.  (The embedded matrices are defective, so the analytic
    # engine refuses them; the equivalence is checked by exact simulation.)
    values = RAMP.terms(52)
    nn_hits = {n for n, _, _ in violation_log(nn_set, 50, "nonneg")}
    want_nn = {n for n in range(1, 51) if min(values[n - 1], values[n]) < 0}
    assert nn_hits == want_nn == {1}

    pos_hits = {n for n, _, _ in violation_log(pos_set, 50, "pos")}
    want_pos = {n for n in range(1, 51) if min(values[n - 1], values[n]) <= 0}
    assert pos_hits == want_pos == {1, 2}
    _ok("sequence embeddings", "block identity n <= 25, window equivalence n <= 50")


# ---------------------------------------------------------------------------
# 6. the repeated-spectrum fixture


def test_06_repeated_spectrum_fixture():
    a = REPEATED
    assert classify(a) is SpectralClass.DIAGONALIZABLE_NOT_SIMPLE
    assert char_poly(a) == QPoly([4, 0, -3, 1])  # (x - 2)^2 (x + 1)
    assert minimal_poly(a) == QPoly([-2, -1, 1])  # (x - 2)(x + 1)

    summary = {}
    for value, mult in eigendecompose(a).eigenvalues:
        assert value.is_real()
        for q in (Fraction(2), Fraction(-1)):
            if value.real_part == q:
                summary[q] = mult
                break
    assert summary == {Fraction(2): 2, Fraction(-1): 1}

    for vec, lam in (((-4, 1, 0), 2), ((2, 0, 1), 2), ((-1, 1, 1), -1)):
        col = QMatrix([[Fraction(v)] for v in vec])
        assert a * col == col.scale(lam)
    _ok("repeated-spectrum fixture", "class, eigenvalues, eigenvector identities")


# ---------------------------------------------------------------------------
# 7. the rotation-fold identity


def _random_diagonalizable(rng: random.Random, pattern) -> QMatrix:
    pool = [
        Fraction(-2),
        Fraction(-1),
        Fraction(-1, 2),
        Fraction(1, 2),
        Fraction(1),
        Fraction(2),
        Fraction(3),
    ]
    values = rng.sample(pool, len(pattern))
    diagonal = [v for v, mult in zip(values, pattern) for _ in range(mult)]
    k = len(diagonal)
    while True:
        s = QMatrix([[Fraction(rng.randint(-3, 3)) for _ in range(k)] for _ in range(k)])
        if char_poly(s)(Fraction(0)) != 0:
            break
    columns = [
        solve_linear(s, [Fraction(1 if i == j else 0) for i in range(k)])
        for j in range(k)
    ]
    s_inv = QMatrix([[columns[j][i] for j in range(k)] for i in range(k)])
    d = QMatrix([[diagonal[i] if i == j else Fraction(0) for j in range(k)] for i in range(k)])
    return s * d * s_inv


def _check_fold(a: QMatrix, template) -> None:
    dec = eigendecompose(a)
    lead = dec.eigenvalues[0][1]
    template = tuple(template)[:max(lead, 1)]
    e = build_segmented(dec, template)
    for n in range(1, 21):
        total, scalar = lemma7_fold(dec, e, n)
        assert scalar == sum((t**n for t in template), Fraction(0))
        assert total == mat_pow(a, n).scale(scalar)


def test_07_rotation_fold_identity():
    dec = eigendecompose(REPEATED)
    assert dec.eigenvalues[0][1] == 2  # the leading segment is the repeated pair
    _check_fold(REPEATED, (Fraction(1, 2), Fraction(1, 3)))

    rng = random.Random(701)
    patterns = [(2, 1)] * 6 + [(3,)] * 2 + [(1, 1, 1)] * 2
    template = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5))
    for pattern in patterns:
        _check_fold(_random_diagonalizable(rng, pattern), template)
    _ok("rotation-fold identity", "repeated-spectrum fixture + 10 random, n <= 20")


# ---------------------------------------------------------------------------
# 8. the reduction to simple matrices


def _check_simple_reduction(wset: WeightedMatrixSet) -> None:
    pairs, f, _plan = reduce_to_simple(wset)
    for _, b in pairs:
        assert classify(b) is SpectralClass.SIMPLE
    for n in range(1, 21):
        folded = None
        for w, b in pairs:
            term = mat_pow(b, n).scale(w)
            folded = term if folded is None else folded + term
        assert folded == weighted_power_sum(wset, n).scale(f.value(n))
    assert check_reduction_identity(wset, pairs, f, n_max=20)


def test_08_simple_reduction_outputs():
    singleton = WeightedMatrixSet.of((Fraction(1), REPEATED))
    diag123 = QMatrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    mixed_a = WeightedMatrixSet.of((Fraction(1), REPEATED), (Fraction(2), diag123))
    mixed_b = WeightedMatrixSet.of(
        (Fraction(1, 2), QMatrix([[0, 1], [2, 1]])),
        (Fraction(-1), QMatrix([[3, 0], [0, 3]])),
    )
    for wset in (singleton, mixed_a, mixed_b):
        _check_simple_reduction(wset)
    _ok("reduction to simple", "3 sets: all outputs simple, scaled identity n <= 20")


# ---------------------------------------------------------------------------
# 9. precision mode


def test_09_precision_mode_deviation_bound():
    eps = Fraction(1, 2)
    wset = WeightedMatrixSet.of((Fraction(1), REPEATED))
    pairs, f, _plan = reduce_to_simple(wset, precision_eps=eps)
    assert f.epsilons[0] == 1
    bound = Fraction(1)
    for n in range(1, 31):
        bound *= eps
        folded = None
        for w, b in pairs:
            term = mat_pow(b, n).scale(w)
            folded = term if folded is None else folded + term
        diff = folded - weighted_power_sum(wset, n)
        deviation = max(abs(v) for row in diff.entries for v in row)
        assert deviation < bound, f"n={n}: {deviation} >= {bound}"
    _ok("precision mode", "deviation < (1/2)^n for n = 1..30")


# ---------------------------------------------------------------------------
# 10. decision soundness against independent ground truth


CORPUS_ROOTS = [
    Fraction(-3),
    Fraction(-2),
    Fraction(-3, 2),
    Fraction(-1),
    Fraction(-1, 2),
    Fraction(1, 2),
    Fraction(1),
    Fraction(3, 2),
    Fraction(2),
    Fraction(3),
]
CORPUS_WEIGHTS = [
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(3),
]


def _projectors(c: QMatrix, roots) -> list[QMatrix]:
    """Spectral projectors of a matrix with the given distinct eigenvalues."""
    k = c.rows
    identity = QMatrix.identity(k)
    out = []
    for j, rj in enumerate(roots):
        acc = identity
        scale = Fraction(1)
        for i, ri in enumerate(roots):
            if i == j:
                continue
            acc = acc * (c - identity.scale(ri))
            scale /= rj - ri
        out.append(acc.scale(scale))
    total = QMatrix.zeros(k, k)
    recombined = QMatrix.zeros(k, k)
    for proj, rj in zip(out, roots):
        total = total + proj
        recombined = recombined + proj.scale(rj)
    assert total == identity and recombined == c
    return out


def _entry_coefficients(wset: WeightedMatrixSet, root_lists) -> dict:
    """(row, col) -> {base: coefficient} for sum_i w_i A_i^n, exact."""
    k = wset.dim
    coeff = {(s, t): {} for s in range(k) for t in range(k)}
    for (w, c), roots in zip(wset.pairs, root_lists):
        for proj, rj in zip(_projectors(c, roots), roots):
            for s in range(k):
                for t in range(k):
                    cell = coeff[(s, t)]
                    cell[rj] = cell.get(rj, Fraction(0)) + w * proj[s, t]
    return coeff


def _eventual_signs(cmap: dict) -> tuple[int, int]:
    """Eventual sign on even and on odd indices, from exact dominance of the
    largest squared base on each parity class."""
    even: dict = {}
    odd: dict = {}
    for base, c in cmap.items():
        if c == 0:
            continue
        rho = base * base
        even[rho] = even.get(rho, Fraction(0)) + c
        odd[rho] = odd.get(rho, Fraction(0)) + c * base
    def lead(d: dict) -> int:
        live = [(rho, v) for rho, v in d.items() if v != 0]
        if not live:
            return 0
        return _sign(max(live)[1])
    return lead(even), lead(odd)


def _independent_labels(wset: WeightedMatrixSet, root_lists) -> tuple[bool, bool]:
    """(eventually nonneg, eventually positive), from first principles."""
    nonneg = True
    positive = True
    for signs in map(_eventual_signs, _entry_coefficients(wset, root_lists).values()):
        nonneg = nonneg and min(signs) >= 0
        positive = positive and min(signs) > 0
    return nonneg, positive


def _integer_simulation(wset: WeightedMatrixSet, horizon: int) -> dict:
    """Violation logs over 1..horizon in pure integer arithmetic.

    Everything is rescaled by one common positive factor per step, so the
    sign grid matches the exact weighted power sum.
    """
    den = math.lcm(
        *(v.denominator for _, a in wset.pairs for row in a.entries for v in row)
    )
    wden = math.lcm(*(w.denominator for w, _ in wset.pairs))
    mats = [
        [[int(v * den) for v in row] for row in a.entries] for _, a in wset.pairs
    ]
    weights = [int(w * wden) for w, _ in wset.pairs]
    k = wset.dim
    powers = [[row[:] for row in m] for m in mats]
    logs = {"nonneg": [], "pos": []}
    for n in range(1, horizon + 1):
        recorded = {"nonneg": False, "pos": False}
        for r in range(k):
            for c in range(k):
                value = sum(w * p[r][c] for w, p in zip(weights, powers))
                if not recorded["nonneg"] and value < 0:
                    logs["nonneg"].append((n, (r + 1, c + 1), -1))
                    recorded["nonneg"] = True
                if not recorded["pos"] and value <= 0:
                    logs["pos"].append((n, (r + 1, c + 1), _sign(value)))
                    recorded["pos"] = True
            if recorded["nonneg"] and recorded["pos"]:
                break
        if n < horizon:
            powers = [
                [
                    [sum(p[r][i] * m[i][c] for i in range(k)) for c in range(k)]
                    for r in range(k)
                ]
                for p, m in zip(powers, mats)
            ]
    return logs


def test_10_verdicts_match_independent_ground_truth():
    rng = random.Random(1009)
    horizon = 500
    start = time.perf_counter()
    unknowns = 0
    verdicts = {"yes": 0, "no": 0}
    for instance in range(200):
        k = rng.randint(1, 3)
        m = rng.randint(1, 2)
        root_lists = [rng.sample(CORPUS_ROOTS, k) for _ in range(m)]
        pairs = []
        for roots in root_lists:
            lrs = LRS.from_char_poly(QPoly.from_roots(roots), [0] * k)
            pairs.append((rng.choice(CORPUS_WEIGHTS), companion_matrix(lrs)))
        wset = WeightedMatrixSet(k, tuple(pairs))

        labels = dict(zip(("nonneg", "pos"), _independent_labels(wset, root_lists)))
        sim = _integer_simulation(wset, horizon)

        for mode in ("nonneg", "pos"):
            engine_log = [
                (n, entry, _sign(v)) for n, entry, v in violation_log(wset, horizon, mode)
            ]
            assert engine_log == sim[mode], f"instance {instance}, {mode}"
            first = simulate_prefix(wset, horizon, mode)
            want_first = sim[mode][0][:2] if sim[mode] else None
            assert (first[:2] if first else None) == want_first

            verdict, _report = decide(wset, mode)
            if verdict.kind == "unknown":
                unknowns += 1
                continue
            verdicts[verdict.kind] += 1
            assert verdict.kind == ("yes" if labels[mode] else "no"), (
                f"instance {instance}, {mode}: engine {verdict.kind}, "
                f"ground truth {labels[mode]}"
            )
            if verdict.kind == "yes":
                assert all(n < verdict.threshold for n, _, _ in sim[mode])
            elif verdict.witness and verdict.witness.get("kind") == "index":
                n = verdict.witness["n"]
                entry = tuple(verdict.witness["entry"])
                assert (n, entry) in {(h, e) for h, e, _ in sim[mode]}

    elapsed = time.perf_counter() - start
    rate = unknowns / 400
    assert verdicts["yes"] > 0 and verdicts["no"] > 0
    assert rate <= 0.30
    assert elapsed < 300.0
    _ok(
        "decision soundness",
        f"200 instances x 2 modes: {verdicts['yes']} yes / {verdicts['no']} no / "
        f"{unknowns} unknown (rate {rate:.1%}) in {elapsed:.1f}s",
    )


# ---------------------------------------------------------------------------
# 11. single-matrix eventual positivity


def test_11_single_matrix_positivity_fixtures():
    positive = QMatrix([[1, 2], [3, 4]])
    verdict = ep_mat(positive)
    assert verdict.kind == "yes" and verdict.threshold == 1

    ramp_m = companion_matrix(RAMP)
    swap = QMatrix([[0, 1], [1, 0]])
    assert ep_mat(ramp_m).kind == "no"
    assert ep_mat(swap).kind == "no"

    for a, expect_clean in ((positive, True), (ramp_m, False), (swap, False)):
        power = a
        for n in range(1, 201):
            strictly_positive = power.entrywise(lambda v: v > 0)
            if expect_clean:
                assert strictly_positive, f"n={n}"
            else:
                assert not strictly_positive, f"n={n}"
            power = power * a
    _ok("single-matrix positivity", "3 fixtures, simulated to horizon 200")


# ---------------------------------------------------------------------------
# 12. scope note


def test_12_complexity_claims_out_of_scope():
    """Worst-case complexity characterisations (coNP-hardness, PSPACE
    membership, coNP^PosSLP upper bounds) are statements about asymptotic
    resource usage, not about input/output behaviour; they cannot be
    exercised by finite fixtures at test scale and are deliberately out of
    scope here.  The behavioural identities those arguments rest on are
    covered by the other checks in this file, which this test enumerates."""
    behavioural = [
        name
        for name, value in globals().items()
        if name.startswith("test_") and callable(value)
        and name != "test_12_complexity_claims_out_of_scope"
    ]
    assert len(behavioural) == 11
    _ok("complexity claims excluded", "replaced by the 11 behavioural checks")
