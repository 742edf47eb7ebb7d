"""Shifted lattice-point enumeration with backend selection.

``enumerate_shifted`` returns, in lexicographic order, every integer vector
``x`` with ``(x + shift)^T gram (x + shift) <= bound`` for a positive
definite rational ``gram``.  The compiled Cython kernel is used when it was
built and the scaled integer data fits comfortably in int64 (verified here
with exact arithmetic); otherwise the exact pure-Python backend runs.  Both
backends produce identical output.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from latloop import _shortvec_py
from latloop.matrix import floor_sqrt_fraction, rat_inv

try:
    from latloop import _shortvec as _kernel
except ImportError:  # pragma: no cover - depends on the build environment
    _kernel = None

BACKEND = "cython" if _kernel is not None else "python"

_INT64_GUARD = 2**62


def enumerate_shifted(
    gram: Sequence[Sequence],
    shift: Sequence,
    bound,
    force_backend: str | None = None,
) -> list[tuple[int, ...]]:
    n = len(gram)
    bound = Fraction(bound)
    if n == 0:
        return [()] if bound >= 0 else []
    gram = [[Fraction(x) for x in row] for row in gram]
    shift = [Fraction(x) for x in shift]

    backend = force_backend or BACKEND
    if backend == "cython" and _kernel is not None:
        scaled = _scale_for_kernel(gram, shift, bound)
        if scaled is not None:
            a, s, m, bn, bd = scaled
            return sorted(_kernel.enumerate_scaled(a, s, m, bn, bd))
    return sorted(_shortvec_py.enumerate_shifted(gram, shift, bound))


def _scale_for_kernel(gram, shift, bound):
    """Integer data for the kernel, or None when int64 guards would be violated."""
    den = 1
    for row in gram:
        for v in row:
            den = lcm(den, v.denominator)
    m = 1
    for v in shift:
        m = lcm(m, v.denominator)
    a = [[int(v * den) for v in row] for row in gram]
    s = [int(v * m) for v in shift]
    # condition: (m x + s)^T a (m x + s) * bn_den <= bn_num * den? Track it:
    # (x+shift)^T gram (x+shift) <= bound
    #   <=> (m x + s)^T a (m x + s) <= bound * den * m^2
    b = bound * den
    bn, bd = b.numerator, b.denominator
    if bn < 0:
        return a, s, m, bn, bd  # empty result, kernel handles t < 0

    # coordinate bound: y_i^2 <= C * (A^-1)_ii with C = bn*m^2/bd in y-space
    try:
        inv = rat_inv(a)
    except ZeroDivisionError:
        return None
    c = Fraction(bn * m * m, bd)
    ymax = 0
    for i in range(len(a)):
        if inv[i][i] <= 0:
            return None  # not positive definite; let the exact backend raise
        ymax = max(ymax, floor_sqrt_fraction(c * inv[i][i]))
    ymax += 2 * m + 2  # margin for the inflated float pruning bounds
    amax = max(abs(v) for row in a for v in row)
    n = len(a)
    qmax = n * n * amax * ymax * ymax
    if qmax * bd >= _INT64_GUARD or abs(bn) * m * m >= _INT64_GUARD:
        return None
    return a, s, m, bn, bd
