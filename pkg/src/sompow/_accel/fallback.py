"""Pure-Python kernels for the inner loops.

Matrices travel as flat row-major lists of numerator/denominator ints
(denominators positive).  Reduction happens once per accumulated dot
product instead of once per scalar operation, which is where the speedup
over Fraction-based arithmetic comes from; results are identical.
"""

from math import gcd


def _reduce(n, d):
    if n == 0:
        return 0, 1
    g = gcd(n, d)
    return n // g, d // g


def mat_mul_flat(an, ad, bn, bd, n, m, p):
    """(n x m) times (m x p); returns flat numerator and denominator lists."""
    cn = [0] * (n * p)
    cd = [1] * (n * p)
    for i in range(n):
        base = i * m
        for j in range(p):
            acc_n = 0
            acc_d = 1
            for t in range(m):
                xn = an[base + t]
                if xn == 0:
                    continue
                xd = ad[base + t]
                yn = bn[t * p + j]
                if yn == 0:
                    continue
                yd = bd[t * p + j]
                num = xn * yn
                den = xd * yd
                acc_n = acc_n * den + num * acc_d
                acc_d = acc_d * den
            acc_n, acc_d = _reduce(acc_n, acc_d)
            cn[i * p + j] = acc_n
            cd[i * p + j] = acc_d
    return cn, cd


def weighted_scan(mat_nums, mat_dens, w_nums, w_dens, k, horizon, strict, collect):
    """Scan n = 1..horizon of sum_i w_i * A_i^n for sign violations.

    mat_nums/mat_dens: one flat k*k list per matrix; w_*: weights.
    strict: violation is <= 0 (positivity) instead of < 0.
    collect: gather every violating n (first bad entry each); otherwise
    stop at the first one.
    Returns a list of (n, row, col, num, den) tuples, possibly empty.
    """
    count = len(mat_nums)
    pow_n = [list(m) for m in mat_nums]
    pow_d = [list(m) for m in mat_dens]
    hits = []
    for n in range(1, horizon + 1):
        if n > 1:
            for i in range(count):
                pow_n[i], pow_d[i] = mat_mul_flat(
                    pow_n[i], pow_d[i], mat_nums[i], mat_dens[i], k, k, k
                )
        bad = None
        for idx in range(k * k):
            acc_n = 0
            acc_d = 1
            for i in range(count):
                num = w_nums[i] * pow_n[i][idx]
                if num == 0:
                    continue
                den = w_dens[i] * pow_d[i][idx]
                acc_n = acc_n * den + num * acc_d
                acc_d = acc_d * den
            violated = acc_n <= 0 if strict else acc_n < 0
            if violated:
                acc_n, acc_d = _reduce(acc_n, acc_d)
                bad = (n, idx // k, idx % k, acc_n, acc_d)
                break
        if bad is not None:
            hits.append(bad)
            if not collect:
                return hits
    return hits


def lrs_terms(coeff_nums, coeff_dens, init_nums, init_dens, count):
    """First `count` terms of the recurrence
    u_n = c_{k-1} u_{n-1} + ... + c_0 u_{n-k}
    given coefficients (c_{k-1}, ..., c_0) and (u_0, ..., u_{k-1})."""
    k = len(coeff_nums)
    un = list(init_nums)
    ud = list(init_dens)
    for n in range(k, count):
        acc_n = 0
        acc_d = 1
        for i in range(k):
            num = coeff_nums[i] * un[n - 1 - i]
            if num == 0:
                continue
            den = coeff_dens[i] * ud[n - 1 - i]
            acc_n = acc_n * den + num * acc_d
            acc_d = acc_d * den
        acc_n, acc_d = _reduce(acc_n, acc_d)
        un.append(acc_n)
        ud.append(acc_d)
    return un[:count], ud[:count]
