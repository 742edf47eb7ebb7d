# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for shifted lattice-point enumeration.

Enumerates all integer x with bd*(m*x+s)^T A (m*x+s) <= bn*m*m for an
integer positive definite matrix A, integer shift numerators s and shift
denominator m.  Float Cholesky bounds, inflated by a slack that dominates
the rounding error, only prune the search; every surviving candidate is
accepted or rejected by an exact int64 test.  The wrapper in
latloop.enumeration verifies the int64 range guards before calling in.
"""

from libc.math cimport sqrt
from libc.stdlib cimport free, malloc


cdef inline void _set_range(Py_ssize_t level, Py_ssize_t n, double *d, double *r,
                            double *u, double *rem, long long *x, long long *sv,
                            double md, double slack, long long *lo, long long *hi):
    cdef Py_ssize_t j
    cdef double t, radius, centre, acc
    acc = 0.0
    for j in range(level + 1, n):
        acc += r[level * n + j] * ((<double> x[j]) + (<double> sv[j]) / md)
    u[level] = (<double> sv[level]) / md + acc
    t = (rem[level] + slack) / d[level]
    if t < 0:
        lo[level] = 0
        hi[level] = -1
        return
    radius = sqrt(t) * (1.0 + 1e-12) + 1e-9
    centre = -u[level]
    lo[level] = <long long> (centre - radius) - 2
    hi[level] = <long long> (centre + radius) + 2
    while (<double> lo[level]) < centre - radius:
        lo[level] += 1
    while (<double> hi[level]) > centre + radius:
        hi[level] -= 1


def enumerate_scaled(a, s, long long m, long long bn, long long bd):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i, j, k, level
    cdef double md, w, target, slack
    cdef long long q_exact, acc, rhs
    cdef double *ad
    cdef long long *ai
    cdef long long *sv
    cdef double *d
    cdef double *r
    cdef double *u
    cdef double *rem
    cdef long long *x
    cdef long long *lo
    cdef long long *hi
    cdef long long *y

    if n == 0:
        return [()]
    ad = <double *> malloc(n * n * sizeof(double))
    ai = <long long *> malloc(n * n * sizeof(long long))
    sv = <long long *> malloc(n * sizeof(long long))
    d = <double *> malloc(n * sizeof(double))
    r = <double *> malloc(n * n * sizeof(double))
    u = <double *> malloc(n * sizeof(double))
    rem = <double *> malloc(n * sizeof(double))
    x = <long long *> malloc(n * sizeof(long long))
    lo = <long long *> malloc(n * sizeof(long long))
    hi = <long long *> malloc(n * sizeof(long long))
    y = <long long *> malloc(n * sizeof(long long))
    out = []
    try:
        md = <double> m
        for i in range(n):
            sv[i] = s[i]
            row = a[i]
            for j in range(n):
                ai[i * n + j] = row[j]
                ad[i * n + j] = <double> row[j]

        # float Cholesky of A/m^2 (the form in x + s/m coordinates):
        # A/m^2 = R^T diag(d) R with R unit upper triangular
        for i in range(n):
            for j in range(n):
                r[i * n + j] = ad[i * n + j] / (md * md)
        for i in range(n):
            d[i] = r[i * n + i]
            if d[i] <= 0:
                raise ValueError("matrix is not positive definite")
            for j in range(i + 1, n):
                r[i * n + j] = r[i * n + j] / d[i]
            for j in range(i + 1, n):
                for k in range(j, n):
                    r[j * n + k] = r[j * n + k] - d[i] * r[i * n + j] * r[i * n + k]

        target = (<double> bn) / (<double> bd)
        slack = (target + 1.0) * 1e-9 * (<double> n) + 1e-6
        rhs = bn * m * m
        level = n - 1
        rem[level] = target
        _set_range(level, n, d, r, u, rem, x, sv, md, slack, lo, hi)
        x[level] = lo[level] - 1
        while True:
            x[level] += 1
            if x[level] > hi[level]:
                level += 1
                if level == n:
                    break
                continue
            if level == 0:
                # exact acceptance test on y = m*x + s
                for i in range(n):
                    y[i] = m * x[i] + sv[i]
                q_exact = 0
                for i in range(n):
                    acc = 0
                    for j in range(n):
                        acc += ai[i * n + j] * y[j]
                    q_exact += y[i] * acc
                if q_exact * bd <= rhs:
                    out.append(tuple([x[i] for i in range(n)]))
            else:
                w = (<double> x[level]) + u[level]
                rem[level - 1] = rem[level] - d[level] * w * w
                level -= 1
                _set_range(level, n, d, r, u, rem, x, sv, md, slack, lo, hi)
                x[level] = lo[level] - 1
        return out
    finally:
        free(ad)
        free(ai)
        free(sv)
        free(d)
        free(r)
        free(u)
        free(rem)
        free(x)
        free(lo)
        free(hi)
        free(y)
