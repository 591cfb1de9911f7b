# cython: boundscheck=False
"""Compiled twins of the fallback kernels.

The values stay Python bignums (the whole point is exactness); what the
compilation buys is loop/indexing overhead, which dominates at the small
matrix sizes these scans run on.  Semantics must match fallback.py
exactly -- the test suite runs both backends on the same inputs.
"""

from math import gcd


cdef inline tuple _reduce(n, d):
    if n == 0:
        return 0, 1
    g = gcd(n, d)
    return n // g, d // g


def mat_mul_flat(list an, list ad, list bn, list bd, Py_ssize_t n, Py_ssize_t m, Py_ssize_t p):
    cdef Py_ssize_t i, j, t, base
    cdef list cn = [0] * (n * p)
    cdef list cd = [1] * (n * p)
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


def weighted_scan(list mat_nums, list mat_dens, list w_nums, list w_dens,
                  Py_ssize_t k, Py_ssize_t horizon, bint strict, bint collect):
    cdef Py_ssize_t count = len(mat_nums)
    cdef Py_ssize_t n, i, idx
    cdef bint violated
    cdef list pow_n = [list(m) for m in mat_nums]
    cdef list pow_d = [list(m) for m in mat_dens]
    cdef list hits = []
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
                num = w_nums[i] * (<list>pow_n[i])[idx]
                if num == 0:
                    continue
                den = w_dens[i] * (<list>pow_d[i])[idx]
                acc_n = acc_n * den + num * acc_d
                acc_d = acc_d * den
            violated = (acc_n <= 0) if strict else (acc_n < 0)
            if violated:
                acc_n, acc_d = _reduce(acc_n, acc_d)
                bad = (n, idx // k, idx % k, acc_n, acc_d)
                break
        if bad is not None:
            hits.append(bad)
            if not collect:
                return hits
    return hits


def lrs_terms(list coeff_nums, list coeff_dens, list init_nums, list init_dens, Py_ssize_t count):
    cdef Py_ssize_t k = len(coeff_nums)
    cdef Py_ssize_t n, i
    cdef list un = list(init_nums)
    cdef list ud = list(init_dens)
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
