"""Label-level classification of irreducible positive-energy representations.

Unicoloured case: one isomorphism class per element of the discriminant
group D_L, represented by a canonical coset lift l in the dual lattice,
with m the smallest positive integer such that m <l,l> is in 2Z.  Two
labels are isomorphic iff their l's differ by a lattice vector.

Bicoloured case: classes are labelled by a character chi of the finite
group (Lw cap Lb)/Gamma together with a coset of Gamma^dual/(Lw - Lb); m is
the smallest positive integer with both m >= n (the span level) and
m <l,l> in 2Z.  The character series never depends on chi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from latloop import matrix as mx
from latloop.errors import Mismatch, NotEven, NotInLattice, NotPositiveDefinite
from latloop.glue import FiniteAbelianPresentation, quotient_presentation
from latloop.lattice import Lattice, full_lattice
from latloop.series import FracSeries, character_unicoloured, eta_inverse_power
from latloop.span import LatticeSpan, finite_quotient


def _rotation_cover(norm: Fraction, at_least: int = 1) -> int:
    """Smallest m >= at_least with m * norm in 2Z."""
    norm = Fraction(norm)
    m0 = 2 * norm.denominator // gcd(norm.numerator, 2 * norm.denominator) if norm else 1
    m = m0 * ((at_least + m0 - 1) // m0)
    return max(m, m0)


@dataclass(frozen=True)
class UnicolouredLabel:
    lattice: Lattice
    l: tuple  # a dual vector, coordinates in the lattice basis
    m: int

    @property
    def norm(self) -> Fraction:
        return Fraction(mx.form_value(self.lattice.gram, self.l, self.l))


@dataclass(frozen=True)
class BicolouredLabel:
    span: LatticeSpan
    chi: tuple[int, ...]  # character coordinates on (Lw cap Lb)/Gamma
    l: tuple  # a Gamma-dual vector in h-coordinates
    m: int

    @property
    def norm(self) -> Fraction:
        return Fraction(mx.form_value(self.span.gamma.gram, self.l, self.l))


def make_unicoloured_label(lattice: Lattice, l: Sequence) -> UnicolouredLabel:
    l = tuple(Fraction(x) for x in l)
    norm = Fraction(mx.form_value(lattice.gram, l, l))
    return UnicolouredLabel(lattice, l, _rotation_cover(norm))


def make_bicoloured_label(span: LatticeSpan, chi: Sequence[int], l: Sequence) -> BicolouredLabel:
    l = tuple(Fraction(x) for x in l)
    norm = Fraction(mx.form_value(span.gamma.gram, l, l))
    return BicolouredLabel(span, tuple(int(c) for c in chi), l, _rotation_cover(norm, span.derived().level))


def classify_unicoloured(lattice: Lattice) -> list[UnicolouredLabel]:
    """One label per coset of D_L, with canonical lifts; count = disc L."""
    if not lattice.is_even:
        raise NotEven("classification needs an even lattice")
    if not lattice.is_positive_definite:
        raise NotPositiveDefinite("classification needs a positive definite lattice")
    from latloop.glue import discriminant_group

    pres = discriminant_group(lattice).presentation
    return [make_unicoloured_label(lattice, pres.lift(x)) for x in pres.elements()]


def classify_bicoloured(span: LatticeSpan) -> list[BicolouredLabel]:
    """(characters of (Lw cap Lb)/Gamma) x (cosets of Gamma^dual/(Lw-Lb))."""
    for lat in (span.gamma, span.white, span.black):
        if not lat.is_positive_definite:
            raise NotPositiveDefinite("classification needs positive definite lattices")
    derived = span.derived()
    kernel = finite_quotient(derived.intersection, full_lattice(span.gamma))
    cosets = finite_quotient(derived.dual_gamma, derived.sum_lattice)
    labels = []
    for chi in kernel.elements():
        for x in cosets.elements():
            labels.append(make_bicoloured_label(span, chi, cosets.lift(x)))
    return labels


def isomorphic_labels(a, b) -> bool:
    """Unicoloured: l - l' in L.  Bicoloured: chi = chi' and l - l' in Lw - Lb."""
    if isinstance(a, UnicolouredLabel) and isinstance(b, UnicolouredLabel):
        if a.lattice != b.lattice:
            raise Mismatch("labels over different lattices")
        return all(x.denominator == 1 for x in mx.vec_sub(a.l, b.l))
    if isinstance(a, BicolouredLabel) and isinstance(b, BicolouredLabel):
        if a.span.gamma != b.span.gamma:
            raise Mismatch("labels over different spans")
        if a.chi != b.chi:
            return False
        return a.span.derived().sum_lattice.coords_of(mx.vec_sub(a.l, b.l)) is not None
    raise Mismatch("labels of different kinds")


def conjugate_shift(label, lam: Sequence):
    """The label of the conjugate representation on the component of lam:
    l goes to l - lam (lam in L, resp. in Lw - Lb), m recomputed."""
    if isinstance(label, UnicolouredLabel):
        if any(Fraction(x).denominator != 1 for x in lam):
            raise NotInLattice("shift must be a lattice vector")
        return make_unicoloured_label(label.lattice, mx.vec_sub(label.l, lam))
    if label.span.derived().sum_lattice.coords_of(lam) is None:
        raise NotInLattice("shift must lie in the sum lattice")
    return make_bicoloured_label(label.span, label.chi, mx.vec_sub(label.l, lam))


def label_character(label, order: int) -> FracSeries:
    from latloop.series import character_bicoloured

    if isinstance(label, UnicolouredLabel):
        return character_unicoloured(label.lattice, label.l, order)
    return character_bicoloured(label.span, label.l, order)


def restriction_decomposition(label: UnicolouredLabel, max_norm) -> list:
    """All components of the restriction to the identity pair: lattice
    vectors lam with <l-lam, l-lam>/2 <= max_norm, each with its shifted
    label and the head q^{<l-lam,l-lam>/2} eta^{-rank} of its character."""
    max_norm = Fraction(max_norm)
    lattice = label.lattice
    if not lattice.is_positive_definite:
        raise NotPositiveDefinite("restriction decomposition needs a definite lattice")
    coset = full_lattice(lattice)
    # mu = l - lam runs over the coset l + L
    points = coset.points_in_coset(label.l, 2 * max_norm)
    out = []
    order = int(max_norm - min((p.norm / 2 for p in points), default=0)) + 1 if points else 0
    eta = eta_inverse_power(lattice.rank, max(order, 0))
    shift = Fraction(-lattice.rank, 24)
    for p in points:
        lam = mx.vec_sub(label.l, p.coords)
        shifted = conjugate_shift(label, lam)
        head = eta.shift(p.norm / 2 + shift)
        out.append((tuple(int(x) for x in lam), shifted, head))
    return out


def decomposition_matches_character(label: UnicolouredLabel, order: int) -> bool:
    """Summing the component heads reproduces the full character up to the
    truncation order (the restriction-decomposition identity)."""
    from latloop.series import agree_up_to, coset_min_norm_half

    char = character_unicoloured(label.lattice, label.l, order)
    lead_half = coset_min_norm_half(full_lattice(label.lattice), label.l)
    parts = restriction_decomposition(label, lead_half + order)
    total = FracSeries(1, 0, ())
    for _, _, head in parts:
        total = total + head
    return agree_up_to(total, char, char.leading_exponent + order)
