"""Discriminant groups, isotropic subgroups and overlattice gluing.

The discriminant group D = L^dual / L of a lattice L is presented by its
invariant factors d_1 | ... | d_r together with lifts of the generators to
the ambient rational space (coordinates in the basis of L).  Subgroups on
which the Q/Z-valued bi-additive form b (or, for even lattices, the
Q/2Z-valued quadratic form q) vanishes classify the (even) overlattices
of L inside its dual.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterator, Sequence

from latloop import matrix as mx
from latloop.errors import NotEven, NotIsotropic, TooLarge
from latloop.lattice import Lattice, RationalSublattice

ENUMERATION_BOUND = 10**4


@dataclass(frozen=True)
class FiniteAbelianPresentation:
    """Invariant factors d_1 | ... | d_r (each >= 2) plus ambient lifts of
    the corresponding generators.  The trivial group has no factors."""

    invariant_factors: tuple[int, ...]
    generator_lifts: tuple[tuple[Fraction, ...], ...]
    ambient_rank: int

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return mx.lcm_list(self.invariant_factors) if self.invariant_factors else 1

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All element coordinate vectors, in lexicographic order."""
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def canonical(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(c % d for c, d in zip(coords, self.invariant_factors))

    def lift(self, coords: Sequence[int]) -> tuple[Fraction, ...]:
        """A representative of the class in ambient coordinates (canonical
        lift: coordinates are first reduced into [0, d_i))."""
        coords = self.canonical(coords)
        n = self.ambient_rank
        out = [Fraction(0)] * n
        for c, g in zip(coords, self.generator_lifts):
            for i in range(n):
                out[i] += c * g[i]
        return tuple(out)


def quotient_presentation(ambient: RationalSublattice, sub: RationalSublattice) -> FiniteAbelianPresentation:
    """Present ambient/sub for full-rank sub <= ambient (same ambient space)."""
    a = ambient.basis_matrix()
    rel = mx.mat_mul(mx.rat_inv(a), sub.basis_matrix())
    rel_int = [[int(x) for x in row] for row in rel]
    if any(Fraction(x).denominator != 1 for row in rel for x in row):
        raise ValueError("sub is not contained in ambient")
    d, u, _ = mx.smith_normal_form(rel_int)
    uinv = [[int(x) for x in row] for row in mx.rat_inv(u)]
    factors = []
    lifts = []
    for i in range(len(d)):
        di = d[i][i]
        if di >= 2:
            factors.append(di)
            gen = [uinv[r][i] for r in range(len(uinv))]  # coords in ambient basis
            lifts.append(tuple(mx.mat_vec(a, gen)))
    return FiniteAbelianPresentation(tuple(factors), tuple(lifts), len(a))


class DiscriminantGroup:
    """D_L = L^dual / L with its discriminant forms."""

    def __init__(self, lattice: Lattice):
        from latloop.lattice import dual_lattice, full_lattice

        self.lattice = lattice
        self.presentation = quotient_presentation(dual_lattice(lattice), full_lattice(lattice))

    @property
    def order(self) -> int:
        return self.presentation.order

    def bilinear(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        """b(x, y) = <lift x, lift y> mod Z, in [0, 1)."""
        lx = self.presentation.lift(x)
        ly = self.presentation.lift(y)
        return mx.form_value(self.lattice.gram, lx, ly) % 1

    def quadratic(self, x: Sequence[int]) -> Fraction:
        """q(x) = <lift x, lift x> mod 2Z, in [0, 2); lattice must be even."""
        if not self.lattice.is_even:
            raise NotEven("the discriminant quadratic form needs an even lattice")
        lx = self.presentation.lift(x)
        return mx.form_value(self.lattice.gram, lx, lx) % 2


def discriminant_group(lattice: Lattice) -> DiscriminantGroup:
    return DiscriminantGroup(lattice)


def eval_disc_form(lattice: Lattice, x: Sequence[int], y: Sequence[int]):
    """(b(x,y) mod Z, q(x) mod 2Z when x == y and the lattice is even, else None)."""
    dg = DiscriminantGroup(lattice)
    b = dg.bilinear(x, y)
    q = None
    if tuple(dg.presentation.canonical(x)) == tuple(dg.presentation.canonical(y)) and lattice.is_even:
        q = dg.quadratic(x)
    return b, q


@dataclass(frozen=True)
class DiscSubgroup:
    parent: DiscriminantGroup
    generators: tuple[tuple[int, ...], ...]
    element_set: frozenset

    @property
    def order(self) -> int:
        return len(self.element_set)

    def elements(self) -> list[tuple[int, ...]]:
        return sorted(self.element_set)


def _span_elements(pres: FiniteAbelianPresentation, gens) -> frozenset:
    factors = pres.invariant_factors
    zero = (0,) * len(factors)
    seen = {zero}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = tuple((c + e) % d for c, e, d in zip(cur, g, factors))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def _canonical_generators(pres: FiniteAbelianPresentation, elements: frozenset) -> tuple:
    """Deterministic generating tuple: nonzero HNF rows of the element lattice."""
    r = len(pres.invariant_factors)
    if r == 0 or len(elements) == 1:
        return ()
    rows = [list(e) for e in sorted(elements)]
    rows += [[d if i == j else 0 for j in range(r)] for i, d in enumerate(pres.invariant_factors)]
    h = mx.hnf_basis(rows)
    gens = []
    for row in h:
        red = pres.canonical(row)
        if any(red):
            gens.append(red)
    return tuple(gens)


def all_subgroups(pres: FiniteAbelianPresentation) -> list[frozenset]:
    """Every subgroup of the presented group, as element sets, deterministically
    ordered by (order, sorted elements)."""
    if pres.order > ENUMERATION_BOUND:
        raise TooLarge(f"group order {pres.order} exceeds the enumeration bound {ENUMERATION_BOUND}")
    all_elems = list(pres.elements())
    trivial = frozenset({(0,) * len(pres.invariant_factors)})
    found = {trivial}
    frontier = [trivial]
    while frontier:
        base = frontier.pop()
        for g in all_elems:
            if g in base:
                continue
            ext = _span_elements(pres, list(base) + [g])
            if ext not in found:
                found.add(ext)
                frontier.append(ext)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def isotropic_subgroups(lattice: Lattice, kind: str = "q") -> list[DiscSubgroup]:
    """All subgroups on which b (kind='b') or q (kind='q') vanishes.

    Includes the trivial subgroup; deterministic order.
    """
    dg = DiscriminantGroup(lattice)
    if kind == "q" and not lattice.is_even:
        raise NotEven("q-isotropy needs an even lattice")
    if kind not in {"b", "q"}:
        raise ValueError("kind must be 'b' or 'q'")
    out = []
    for elems in all_subgroups(dg.presentation):
        if kind == "b":
            ok = all(dg.bilinear(x, y) == 0 for x in elems for y in elems)
        else:
            ok = all(dg.quadratic(x) == 0 for x in elems)
        if ok:
            out.append(DiscSubgroup(dg, _canonical_generators(dg.presentation, elems), elems))
    return out


def is_isotropic(sub: DiscSubgroup, kind: str) -> bool:
    dg = sub.parent
    if kind == "b":
        return all(dg.bilinear(x, y) == 0 for x in sub.element_set for y in sub.element_set)
    return all(dg.quadratic(x) == 0 for x in sub.element_set)


def overlattice_from_isotropic(lattice: Lattice, sub: DiscSubgroup) -> Lattice:
    """The overlattice L_U = L + lifts(U), HNF-rebased to an integer Gram."""
    if not is_isotropic(sub, "b"):
        raise NotIsotropic("the subgroup must be b-isotropic")
    gens = [tuple(Fraction(int(i == j)) for i in range(lattice.rank)) for j in range(lattice.rank)]
    gens += [sub.parent.presentation.lift(g) for g in sub.generators]
    overlat = RationalSublattice(lattice.gram, gens)
    gram = overlat.gram()
    if any(x.denominator != 1 for row in gram for x in row):
        raise NotIsotropic("glue vectors do not produce an integral form")
    return Lattice([[int(x) for x in row] for row in gram], None)


def overlattice_sublattice(lattice: Lattice, sub: DiscSubgroup) -> RationalSublattice:
    """Same overlattice, kept as a sublattice of the ambient rational space."""
    gens = [tuple(Fraction(int(i == j)) for i in range(lattice.rank)) for j in range(lattice.rank)]
    gens += [sub.parent.presentation.lift(g) for g in sub.generators]
    return RationalSublattice(lattice.gram, gens)


def subgroup_from_overlattice(lattice: Lattice, overlat: RationalSublattice) -> DiscSubgroup:
    """The subgroup Lambda/L of D_L determined by an overlattice L <= Lambda."""
    dg = DiscriminantGroup(lattice)
    pres = dg.presentation
    coords = []
    for g in overlat.generators:
        c = _disc_coordinates(lattice, pres, g)
        if c is None:
            raise ValueError("overlattice generators must lie in the dual lattice")
        coords.append(c)
    elems = _span_elements(pres, coords)
    return DiscSubgroup(dg, _canonical_generators(pres, elems), elems)


def _disc_coordinates(lattice: Lattice, pres: FiniteAbelianPresentation, v) -> tuple | None:
    """Coordinates in D_L of a dual vector ``v`` (ambient coordinates)."""
    # Solve v = sum c_i lift_i + lambda with lambda in L, 0 <= c_i < d_i.
    for coords in pres.elements():
        diff = mx.vec_sub(v, pres.lift(coords))
        if all(Fraction(x).denominator == 1 for x in diff):
            return coords
    return None


def orthogonal_complement(sub: DiscSubgroup) -> list[tuple[int, ...]]:
    """Elements of U^perp = {x in D : b(x, u) = 0 for all u in U}."""
    dg = sub.parent
    return [x for x in dg.presentation.elements() if all(dg.bilinear(x, u) == 0 for u in sub.generators)]
