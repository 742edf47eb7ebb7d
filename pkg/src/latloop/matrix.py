"""Exact integer and rational matrix algebra.

Matrices are plain row-major lists of lists over ``int`` or
``fractions.Fraction``; vectors are tuples.  Nothing here is mutated after
being returned, so values can be shared freely.

The normal forms follow the conventions used throughout the package:

* ``hermite_normal_form`` is row-style: ``H = U M`` with ``U`` unimodular,
  ``H`` in echelon shape with positive pivots and the entries above each
  pivot reduced into ``[0, pivot)``.
* ``smith_normal_form`` returns ``D = U M V`` diagonal with nonnegative
  entries satisfying ``d_1 | d_2 | ...``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

IntMatrix = list  # list[list[int]]
RatMatrix = list  # list[list[Fraction]]
Vector = tuple


# ---------------------------------------------------------------------------
# basic constructors and arithmetic


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def copy_matrix(m: Sequence[Sequence]) -> list:
    return [list(row) for row in m]


def transpose(m: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    return tuple(c * x for x in v)


def form_value(gram: Sequence[Sequence], u: Sequence, v: Sequence):
    """<u, v> for the symmetric form given by ``gram``."""
    total = 0
    for i, ui in enumerate(u):
        if ui:
            row = gram[i]
            total += ui * sum(g * vj for g, vj in zip(row, v) if g)
    return total


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


# ---------------------------------------------------------------------------
# determinants, inverses, rational solving


def det(m: Sequence[Sequence]) -> Fraction | int:
    """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        prev = a[k - 1][k - 1] if k > 0 else Fraction(1)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
    d = sign * a[n - 1][n - 1]
    return int(d) if d.denominator == 1 else d


def leading_principal_minors(m: Sequence[Sequence]) -> list:
    return [det([row[: k + 1] for row in m[: k + 1]]) for k in range(len(m))]


def rat_inv(m: Sequence[Sequence]) -> RatMatrix:
    """Inverse of a square matrix over Q (Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def rat_solve(m: Sequence[Sequence], b: Sequence) -> Vector:
    """Unique solution of ``m x = b`` over Q for invertible ``m``."""
    return mat_vec(rat_inv(m), b)


# ---------------------------------------------------------------------------
# scaling rationals to integers


def common_denominator(m: Sequence[Sequence]) -> int:
    d = 1
    for row in m:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d


def scale_to_int(m: Sequence[Sequence]) -> tuple[IntMatrix, int]:
    """Return ``(N, d)`` with ``N`` integer and ``m = N / d``."""
    d = common_denominator(m)
    return [[int(Fraction(x) * d) for x in row] for row in m], d


# ---------------------------------------------------------------------------
# Hermite normal form


def hermite_normal_form(m: Sequence[Sequence]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style HNF: returns ``(H, U)`` with ``H = U M``, ``U`` unimodular.

    ``H`` is in echelon shape with positive pivots; entries above each pivot
    are reduced into ``[0, pivot)``.
    """
    a = copy_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    r = 0
    for c in range(cols):
        # clear column c below row r using unimodular row combinations
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        for i in range(piv + 1, rows):
            if a[i][c] == 0:
                continue
            p, q = a[piv][c], a[i][c]
            g, x, y = _xgcd(p, q)
            pg, qg = p // g, q // g
            a[piv], a[i] = (
                [x * s + y * t for s, t in zip(a[piv], a[i])],
                [-qg * s + pg * t for s, t in zip(a[piv], a[i])],
            )
            u[piv], u[i] = (
                [x * s + y * t for s, t in zip(u[piv], u[i])],
                [-qg * s + pg * t for s, t in zip(u[piv], u[i])],
            )
        if piv != r:
            a[piv], a[r] = a[r], a[piv]
            u[piv], u[r] = u[r], u[piv]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q != 0:
                a[i] = [s - q * t for s, t in zip(a[i], a[r])]
                u[i] = [s - q * t for s, t in zip(u[i], u[r])]
        r += 1
        if r == rows:
            break
    return a, u


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) > 0 and x*a + y*b = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    g, r = a, b
    while r:
        q = g // r
        g, r = r, g - q * r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if g < 0:
        g, x0, y0 = -g, -x0, -y0
    return g, x0, y0


def hnf_basis(rows: Sequence[Sequence]) -> list:
    """Nonzero rows of the HNF of ``rows``: the canonical basis of their Z-span."""
    if not rows:
        return []
    h, _ = hermite_normal_form(rows)
    return [row for row in h if any(x != 0 for x in row)]


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m: Sequence[Sequence]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``D = U M V`` diagonal, ``d_1 | d_2 | ...`` >= 0."""
    a = copy_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)
    t = 0
    while t < min(rows, cols):
        piv = _smallest_nonzero(a, t)
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            a[i0], a[t] = a[t], a[i0]
            u[i0], u[t] = u[t], u[i0]
        if j0 != t:
            for row in a:
                row[j0], row[t] = row[t], row[j0]
            for row in v:
                row[j0], row[t] = row[t], row[j0]
        while True:
            _clear_column(a, u, t, rows)
            if not _clear_row(a, v, t, cols):
                continue
            if any(a[i][t] != 0 for i in range(t + 1, rows)):
                continue
            # pivot must divide the whole remaining block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def _smallest_nonzero(a, t):
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                best = (i, j)
    return best


def _clear_column(a, u, t, rows):
    for i in range(t + 1, rows):
        if a[i][t] == 0:
            continue
        p, q = a[t][t], a[i][t]
        if q % p == 0:
            # plain subtraction: leaves row t (and the pivot) untouched
            f = q // p
            a[i] = [w - f * s for s, w in zip(a[t], a[i])]
            u[i] = [w - f * s for s, w in zip(u[t], u[i])]
            continue
        g, x, y = _xgcd(p, q)
        pg, qg = p // g, q // g
        a[t], a[i] = (
            [x * s + y * w for s, w in zip(a[t], a[i])],
            [-qg * s + pg * w for s, w in zip(a[t], a[i])],
        )
        u[t], u[i] = (
            [x * s + y * w for s, w in zip(u[t], u[i])],
            [-qg * s + pg * w for s, w in zip(u[t], u[i])],
        )


def _clear_row(a, v, t, cols) -> bool:
    """Clear row t to the right of the pivot; False if the column got dirtied."""
    for j in range(t + 1, cols):
        if a[t][j] == 0:
            continue
        p, q = a[t][t], a[t][j]
        if q % p == 0:
            # plain subtraction: leaves column t (and the pivot) untouched
            f = q // p
            for row in a:
                row[j] -= f * row[t]
            for row in v:
                row[j] -= f * row[t]
            continue
        g, x, y = _xgcd(p, q)
        pg, qg = p // g, q // g
        for row in a:
            row[t], row[j] = x * row[t] + y * row[j], -qg * row[t] + pg * row[j]
        for row in v:
            row[t], row[j] = x * row[t] + y * row[j], -qg * row[t] + pg * row[j]
    return all(a[i][t] == 0 for i in range(t + 1, len(a)))


# ---------------------------------------------------------------------------
# linear Diophantine systems


class NoSolution(Exception):
    """Raised by helpers that require a solution; solve_diophantine returns None."""


def solve_diophantine(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """An integer solution of ``a x = b``, or None when none exists.

    The returned solution is canonical: the particular solution is reduced
    modulo the HNF basis of the integer kernel, so repeated calls with equal
    inputs agree across runs and platforms.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return (0,) * cols
    h, u = hermite_normal_form(transpose(a))  # h = u * a^T, so a * u^T = h^T
    pivots = []
    for k, row in enumerate(h):
        p = next((j for j, x in enumerate(row) if x != 0), None)
        if p is not None:
            pivots.append((k, p))
    z = [0] * cols
    r = list(b)
    for k, p in pivots:
        if r[p] % h[k][p] != 0:
            return None
        z[k] = r[p] // h[k][p]
        if z[k] != 0:
            for j in range(rows):
                r[j] -= z[k] * h[k][j]
    if any(x != 0 for x in r):
        return None
    x = mat_vec(transpose(u), z)
    rank = len(pivots)
    kernel = [u[k] for k in range(rank, cols)]
    return reduce_mod_lattice(x, hnf_basis(kernel))


class DiophantineSolver:
    """Prepared solver for ``a x = b`` over Z with a fixed matrix ``a``:
    the Hermite data is computed once, each right-hand side is a cheap
    substitution."""

    def __init__(self, a: Sequence[Sequence[int]]):
        self.rows = len(a)
        self.cols = len(a[0]) if self.rows else 0
        h, u = hermite_normal_form(transpose(a))
        self.h = h
        self.ut = transpose(u)
        self.pivots = []
        for k, row in enumerate(h):
            p = next((j for j, x in enumerate(row) if x != 0), None)
            if p is not None:
                self.pivots.append((k, p))
        rank = len(self.pivots)
        self.kernel = hnf_basis([u[k] for k in range(rank, self.cols)])

    def solve(self, b: Sequence[int]) -> Vector | None:
        z = [0] * self.cols
        r = list(b)
        for k, p in self.pivots:
            if r[p] % self.h[k][p] != 0:
                return None
            z[k] = r[p] // self.h[k][p]
            if z[k] != 0:
                for j in range(self.rows):
                    r[j] -= z[k] * self.h[k][j]
        if any(x != 0 for x in r):
            return None
        return reduce_mod_lattice(mat_vec(self.ut, z), self.kernel)


def reduce_mod_lattice(x: Sequence, basis_rows: Sequence[Sequence]) -> Vector:
    """Canonical representative of ``x`` modulo the Z-span of HNF ``basis_rows``.

    Pivot coordinates are reduced into ``[0, pivot)``; requires the rows to be
    in HNF (echelon, positive pivots).
    """
    y = list(x)
    for row in basis_rows:
        p = next((j for j, val in enumerate(row) if val != 0), None)
        if p is None:
            continue
        q = y[p] // row[p] if isinstance(y[p], int) else Fraction(y[p], row[p]).__floor__()
        if q:
            y = [s - q * t for s, t in zip(y, row)]
    return tuple(y)


def int_kernel_basis(a: Sequence[Sequence]) -> list:
    """HNF basis (rows) of the integer kernel ``{x : a x = 0}``."""
    cols = len(a[0]) if a else 0
    h, u = hermite_normal_form(transpose(a))
    rank = sum(1 for row in h if any(x != 0 for x in row))
    return hnf_basis([u[k] for k in range(rank, cols)])


# ---------------------------------------------------------------------------
# misc integer helpers


def floor_sqrt_fraction(x: Fraction) -> int:
    """Largest integer k >= 0 with k*k <= x (x >= 0)."""
    if x < 0:
        raise ValueError("negative argument")
    n, d = x.numerator, x.denominator
    k = isqrt(n * d) // d
    while (k + 1) * (k + 1) * d <= n:
        k += 1
    while k * k * d > n:
        k -= 1
    return k


def lcm_list(values) -> int:
    out = 1
    for val in values:
        out = lcm(out, val)
    return out


def gcd_list(values) -> int:
    out = 0
    for val in values:
        out = gcd(out, val)
    return out
