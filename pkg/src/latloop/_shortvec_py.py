"""Pure-Python backend for shifted lattice-point enumeration.

Solves: all x in Z^n with (x + s)^T A (x + s) <= bound, where A is a
positive definite symmetric rational matrix and s a rational shift.  The
recursion is the classic Fincke-Pohst scheme on an exact rational Cholesky
decomposition, so no tolerance enters anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from latloop.matrix import floor_sqrt_fraction


def cholesky_rational(a: Sequence[Sequence[Fraction]]) -> tuple[list, list]:
    """A = R^T diag(d) R with R unit upper triangular; exact over Q.

    Returns (d, r) with d the diagonal and r the strict upper part, so that
    q(v) = sum_i d[i] * (v_i + sum_{j>i} r[i][j] v_j)^2.
    """
    n = len(a)
    q = [[Fraction(x) for x in row] for row in a]
    d = [Fraction(0)] * n
    r = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = q[i][i]
        if d[i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, n):
            r[i][j] = q[i][j] / d[i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= d[i] * r[i][k] * r[i][l]
    return d, r


def enumerate_shifted(
    gram: Sequence[Sequence[Fraction]],
    shift: Sequence[Fraction],
    bound: Fraction,
) -> list[tuple[int, ...]]:
    """All integer x with (x + shift)^T gram (x + shift) <= bound, unsorted."""
    n = len(gram)
    if bound < 0:
        return []
    if n == 0:
        return [()]
    d, r = cholesky_rational(gram)
    shift = [Fraction(x) for x in shift]
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def recurse(i: int, remaining: Fraction) -> None:
        # level i: d[i] * (x_i + u)^2 <= remaining, u collecting the tail
        u = shift[i] + sum(r[i][j] * (x[j] + shift[j]) for j in range(i + 1, n))
        lo, hi = _integer_range(u, remaining / d[i])
        for xi in range(lo, hi + 1):
            x[i] = xi
            if i == 0:
                out.append(tuple(x))
            else:
                recurse(i - 1, remaining - d[i] * (xi + u) ** 2)

    recurse(n - 1, Fraction(bound))
    return out


def _integer_range(u: Fraction, t: Fraction) -> tuple[int, int]:
    """The integers m with (m + u)^2 <= t: [ceil(-u-sqrt(t)), floor(-u+sqrt(t))].

    Returned as a closed interval; empty when lo > hi.  Exact: the isqrt seed
    is corrected by monotone predicate walks.
    """
    if t < 0:
        return 0, -1
    w = -u
    s = floor_sqrt_fraction(t)

    def below_upper(m: int) -> bool:  # m <= w + sqrt(t)
        return m <= w or (m - w) * (m - w) <= t

    def above_lower(m: int) -> bool:  # m >= w - sqrt(t)
        return m >= w or (m - w) * (m - w) <= t

    hi = w.__floor__() + s
    while below_upper(hi + 1):
        hi += 1
    while not below_upper(hi):
        hi -= 1
    lo = w.__ceil__() - s
    while above_lower(lo - 1):
        lo -= 1
    while not above_lower(lo):
        lo += 1
    return lo, hi
