"""Formal q-series with fractional exponents and the character series.

A :class:`FracSeries` is supported on the exponent grid (startExp + k)/denom
for k = 0, 1, ..., with integer coefficients; the truncation order is the
length of the coefficient list.  Series with different grids are aligned by
rescaling to the lcm of the denominators, so products stay exact.

The graded characters implemented here are theta series of (translated)
rational lattices times an inverse power of Dedekind's eta function, with
the leading energy shift -rank/24 carried in the exponent grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from latloop import matrix as mx
from latloop.errors import NotPositiveDefinite
from latloop.lattice import Lattice, RationalSublattice, dual_lattice


@dataclass(frozen=True)
class FracSeries:
    """sum_k coeffs[k] * q^((start_exp + k)/denom)."""

    denom: int
    start_exp: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.denom < 1:
            raise ValueError("denominator must be positive")

    @property
    def leading_exponent(self) -> Fraction:
        return Fraction(self.start_exp, self.denom)

    @property
    def last_exponent(self) -> Fraction:
        return Fraction(self.start_exp + len(self.coeffs) - 1, self.denom)

    def exponents(self) -> list[Fraction]:
        return [Fraction(self.start_exp + k, self.denom) for k in range(len(self.coeffs))]

    def coefficient(self, exponent) -> int:
        e = Fraction(exponent)
        k = e * self.denom - self.start_exp
        if k.denominator != 1 or not 0 <= int(k) < len(self.coeffs):
            return 0
        return self.coeffs[int(k)]

    def rescale(self, denom: int) -> "FracSeries":
        """Re-express on the finer grid with the given denominator."""
        if denom % self.denom:
            raise ValueError("new denominator must be a multiple of the old one")
        f = denom // self.denom
        if f == 1:
            return self
        coeffs = [0] * ((len(self.coeffs) - 1) * f + 1 if self.coeffs else 0)
        for k, c in enumerate(self.coeffs):
            coeffs[k * f] = c
        return FracSeries(denom, self.start_exp * f, tuple(coeffs))

    def shift(self, exponent) -> "FracSeries":
        """Multiply by q^exponent."""
        e = Fraction(exponent)
        d = lcm(self.denom, e.denominator)
        s = self.rescale(d)
        return FracSeries(d, s.start_exp + int(e * d), s.coeffs)

    def truncate(self, max_exponent) -> "FracSeries":
        e = Fraction(max_exponent)
        keep = [c for k, c in enumerate(self.coeffs) if Fraction(self.start_exp + k, self.denom) <= e]
        return FracSeries(self.denom, self.start_exp, tuple(keep))

    def trim(self) -> "FracSeries":
        """Drop leading zero coefficients (the grid origin moves up)."""
        coeffs = list(self.coeffs)
        start = self.start_exp
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            start += 1
        return FracSeries(self.denom, start, tuple(coeffs))

    def __add__(self, other: "FracSeries") -> "FracSeries":
        d = lcm(self.denom, other.denom)
        a, b = self.rescale(d), other.rescale(d)
        start = min(a.start_exp, b.start_exp)
        end = max(a.start_exp + len(a.coeffs), b.start_exp + len(b.coeffs))
        coeffs = [0] * (end - start)
        for k, c in enumerate(a.coeffs):
            coeffs[a.start_exp - start + k] += c
        for k, c in enumerate(b.coeffs):
            coeffs[b.start_exp - start + k] += c
        return FracSeries(d, start, tuple(coeffs))

    def __mul__(self, other: "FracSeries") -> "FracSeries":
        d = lcm(self.denom, other.denom)
        a, b = self.rescale(d), other.rescale(d)
        if not a.coeffs or not b.coeffs:
            return FracSeries(d, a.start_exp + b.start_exp, ())
        coeffs = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ca in enumerate(a.coeffs):
            if ca:
                for j, cb in enumerate(b.coeffs):
                    if cb:
                        coeffs[i + j] += ca * cb
        return FracSeries(d, a.start_exp + b.start_exp, tuple(coeffs))

    def head(self, count: int) -> tuple[int, ...]:
        return self.coeffs[:count]

    def to_json(self) -> dict:
        return {"denom": self.denom, "startExp": self.start_exp, "coeffs": list(self.coeffs)}

    def __repr__(self) -> str:
        terms = ", ".join(
            f"{c}*q^({self.start_exp + k}/{self.denom})" for k, c in enumerate(self.coeffs[:4]) if c
        )
        return f"FracSeries({terms}{', ...' if len(self.coeffs) > 4 else ''})"


def agree_up_to(a: FracSeries, b: FracSeries, max_exponent) -> bool:
    """Coefficientwise equality of the two series on exponents <= max_exponent."""
    e = Fraction(max_exponent)
    exps = {x for x in a.exponents() if x <= e} | {x for x in b.exponents() if x <= e}
    return all(a.coefficient(x) == b.coefficient(x) for x in exps)


# ---------------------------------------------------------------------------
# eta inverse powers (coloured partition generating series)


def eta_inverse_power(d: int, order: int) -> FracSeries:
    """prod_{j>=1} (1 - q^j)^{-d} up to q^order (the q^{d/24} prefactor is the
    caller's business, carried on the exponent grid)."""
    if d < 0:
        raise ValueError("negative power")
    coeffs = [1] + [0] * order
    one = _euler_inverse(order)
    for _ in range(d):
        coeffs = _convolve_trunc(coeffs, one, order)
    return FracSeries(1, 0, tuple(coeffs))


def _euler_inverse(order: int) -> list[int]:
    """Partition numbers p(0..order) by the coin-change recurrence."""
    p = [1] + [0] * order
    for j in range(1, order + 1):
        for k in range(j, order + 1):
            p[k] += p[k - j]
    return p


def _convolve_trunc(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ca in enumerate(a):
        if ca:
            for j in range(min(order - i, len(b) - 1) + 1):
                out[i + j] += ca * b[j]
    return out


def coloured_partition_count(d: int, k: int) -> int:
    """#(d-coloured partitions of k) by an independent DP over colour-tagged
    parts; the oracle for eta_inverse_power."""
    counts = [1] + [0] * k
    for part in range(1, k + 1):
        for _colour in range(d):
            for total in range(part, k + 1):
                counts[total] += counts[total - part]
    return counts[k]


# ---------------------------------------------------------------------------
# theta series


def theta_series(sublattice: RationalSublattice, translate: Sequence, max_exp) -> FracSeries:
    """sum_{v in translate + sublattice} q^{<v,v>/2} with exponents <= max_exp."""
    max_exp = Fraction(max_exp)
    pts = sublattice.points_in_coset(translate, 2 * max_exp)
    if not all(m > 0 for m in mx.leading_principal_minors(sublattice.ambient_gram)):
        raise NotPositiveDefinite("theta series needs a positive definite ambient form")
    counts: dict[Fraction, int] = {}
    for p in pts:
        e = p.norm / 2
        counts[e] = counts.get(e, 0) + 1
    if not counts:
        return FracSeries(1, 0, ())
    denom = mx.lcm_list([e.denominator for e in counts] + [1])
    lo = min(counts)
    hi = max(counts)
    coeffs = [0] * (int((hi - lo) * denom) + 1)
    for e, c in counts.items():
        coeffs[int((e - lo) * denom)] = c
    return FracSeries(denom, int(lo * denom), tuple(coeffs))


def theta_series_lattice(lat: Lattice, max_exp) -> FracSeries:
    from latloop.lattice import full_lattice

    return theta_series(full_lattice(lat), [0] * lat.rank, max_exp)


# ---------------------------------------------------------------------------
# graded characters


def character_unicoloured(lat: Lattice, l: Sequence, order: int) -> FracSeries:
    """Z(q) = theta_{l+L}(q) * eta(q)^{-rank}, exponents shifted by -rank/24.

    ``l`` is a dual vector in the coordinates of the lattice basis.  The
    result is exact for all exponents up to (leading exponent + order).
    """
    if not lat.is_positive_definite:
        raise NotPositiveDefinite("characters need a positive definite lattice")
    from latloop.lattice import full_lattice

    coset = full_lattice(lat)
    lead = coset_min_norm_half(coset, l)
    theta = theta_series(coset, l, lead + order)
    eta = eta_inverse_power(lat.rank, order)
    return (theta * eta).shift(Fraction(-lat.rank, 24)).truncate(lead + order - Fraction(lat.rank, 24))


def character_bicoloured(span, l: Sequence, order: int) -> FracSeries:
    """Z(q) = theta_{l+(Lw-Lb)}(q) * eta(q)^{-rank Gamma}, shifted by -rank/24.

    The character label chi does not enter the series.  The exponent grid
    denominator comes out of the norms of l + (Lw - Lb).
    """
    derived = span.derived()
    coset = derived.sum_lattice
    if not all(m > 0 for m in mx.leading_principal_minors(coset.ambient_gram)):
        raise NotPositiveDefinite("characters need positive definite lattices")
    rank = span.rank
    lead = coset_min_norm_half(coset, l)
    theta = theta_series(coset, l, lead + order)
    eta = eta_inverse_power(rank, order)
    return (theta * eta).shift(Fraction(-rank, 24)).truncate(lead + order - Fraction(rank, 24))


def coset_min_norm_half(sublattice: RationalSublattice, translate: Sequence) -> Fraction:
    """min <v,v>/2 over the coset translate + sublattice (exact)."""
    bound = Fraction(mx.form_value(sublattice.ambient_gram, translate, translate))
    while True:
        pts = sublattice.points_in_coset(translate, max(bound, 1))
        if pts:
            return min(p.norm for p in pts) / 2
        bound *= 2
