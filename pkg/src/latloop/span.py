"""Spans of even lattices and their commutator/cocycle data.

A span is a pair of form-preserving embeddings  Lw <- Gamma -> Lb  of even
lattices of equal rank.  All derived objects live in the ambient rational
space h = Gamma (x) Q, with the form of Gamma: the pre-images of Lw and Lb,
their intersection and sum, the dual of Gamma, and the level n (the
smallest positive integer with n*(Lw - Lb) inside Gamma).

The commutator map on the sum lattice is

    b(lam, mu) = exp(2 pi i b0),   b0 = <mu, lam>/2 + <mu, lam_b>,

for any decomposition lam = lam_w - lam_b with lam_w, lam_b in the two
pre-images; the value does not depend on the decomposition.  An explicit
bi-additive 2-cocycle eps with commutator b is pinned to the canonical HNF
basis of the sum lattice: eps(f_i, f_j) = b(f_i, f_j) for i < j and 1 for
i >= j, extended bi-additively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from latloop import matrix as mx
from latloop.angles import RationalAngle
from latloop.errors import NotContained, NotEven, NotInSumLattice, NotIsometry, RankMismatch
from latloop.glue import FiniteAbelianPresentation, quotient_presentation
from latloop.lattice import Lattice, RationalSublattice, builtin, full_lattice


@dataclass(frozen=True)
class SpanDerived:
    pre_w: RationalSublattice
    pre_b: RationalSublattice
    intersection: RationalSublattice
    sum_lattice: RationalSublattice
    dual_gamma: RationalSublattice
    level: int


class LatticeSpan:
    """Two isometric embeddings of Gamma into even lattices Lw and Lb.

    ``embed_w``/``embed_b`` have as columns the images of the Gamma basis
    vectors written in the basis of Lw/Lb.
    """

    def __init__(self, gamma: Lattice, white: Lattice, black: Lattice, embed_w, embed_b, name=None):
        embed_w = [[int(x) for x in row] for row in embed_w]
        embed_b = [[int(x) for x in row] for row in embed_b]
        for lat in (gamma, white, black):
            if not lat.is_even:
                raise NotEven("spans are built from even lattices")
        if not (gamma.rank == white.rank == black.rank == len(embed_w) == len(embed_b)):
            raise RankMismatch("the three lattices and both embeddings must share one rank")
        for emb, lat, side in ((embed_w, white, "white"), (embed_b, black, "black")):
            got = mx.mat_mul(mx.mat_mul(mx.transpose(emb), lat.gram), emb)
            if [list(r) for r in got] != [list(r) for r in gamma.gram]:
                raise NotIsometry(f"the {side} embedding does not respect the forms")
        self.gamma = gamma
        self.white = white
        self.black = black
        self.embed_w = tuple(tuple(r) for r in embed_w)
        self.embed_b = tuple(tuple(r) for r in embed_b)
        self.name = name
        self._derived: SpanDerived | None = None
        self._eps_table: list | None = None
        self._inv_w = None
        self._inv_b = None
        self._decompose_solver = None
        self._delta_basis = None

    @property
    def rank(self) -> int:
        return self.gamma.rank

    def inner(self, u: Sequence, v: Sequence):
        """The Gamma form on ambient h-coordinates."""
        return mx.form_value(self.gamma.gram, u, v)

    def to_white(self, v: Sequence) -> tuple:
        """R pi_w of an ambient vector, in Lw coordinates."""
        return mx.mat_vec(self.embed_w, v)

    def to_black(self, v: Sequence) -> tuple:
        return mx.mat_vec(self.embed_b, v)

    def inv_embed_w(self):
        if self._inv_w is None:
            self._inv_w = mx.rat_inv(self.embed_w)
        return self._inv_w

    def inv_embed_b(self):
        if self._inv_b is None:
            self._inv_b = mx.rat_inv(self.embed_b)
        return self._inv_b

    def derived(self) -> SpanDerived:
        if self._derived is None:
            inv_w = self.inv_embed_w()
            inv_b = self.inv_embed_b()
            pre_w = RationalSublattice(self.gamma.gram, list(zip(*inv_w)))
            pre_b = RationalSublattice(self.gamma.gram, list(zip(*inv_b)))
            sum_lattice = pre_w.sum(pre_b)
            intersection = pre_w.intersection(pre_b)
            dual_gamma = full_lattice(self.gamma).dual()
            level = quotient_presentation(sum_lattice, full_lattice(self.gamma)).exponent
            self._derived = SpanDerived(pre_w, pre_b, intersection, sum_lattice, dual_gamma, level)
        return self._derived

    # -- decomposition and the commutator map ------------------------------

    def decompose(self, lam: Sequence) -> tuple[tuple, tuple]:
        """(lam_w, lam_b) in (pre_w, pre_b) with lam = lam_w - lam_b, canonical.

        Solved as a linear Diophantine system over the integer coordinates of
        the two pre-image lattices; raises NotInSumLattice when impossible.
        """
        n = self.rank
        inv_w = self.inv_embed_w()
        inv_b = self.inv_embed_b()
        lam = [Fraction(x) for x in lam]
        if self._decompose_solver is None:
            cols = [[inv_w[i][j] for j in range(n)] + [-inv_b[i][j] for j in range(n)] for i in range(n)]
            den = mx.common_denominator(cols)
            a = [[int(x * den) for x in row] for row in cols]
            self._decompose_solver = (mx.DiophantineSolver(a), den)
        solver, den = self._decompose_solver
        rhs = [x * den for x in lam]
        if any(x.denominator != 1 for x in rhs):
            raise NotInSumLattice("vector is not in the sum lattice Lw - Lb")
        sol = solver.solve([int(x) for x in rhs])
        if sol is None:
            raise NotInSumLattice("vector is not in the sum lattice Lw - Lb")
        lam_w = mx.mat_vec(inv_w, sol[:n])
        lam_b = mx.mat_vec(inv_b, sol[n:])
        return lam_w, lam_b

    def commutator_b(self, lam: Sequence, mu: Sequence) -> RationalAngle:
        """b0(lam, mu) = <mu, lam>/2 + <mu, lam_b> as an angle in Q/Z."""
        d = self.derived()
        if d.sum_lattice.coords_of(mu) is None:
            raise NotInSumLattice("second argument is not in the sum lattice")
        _, lam_b = self.decompose(lam)
        b0 = Fraction(self.inner(mu, lam), 2) + self.inner(mu, lam_b)
        return RationalAngle(b0)

    # -- the pinned bi-additive cocycle -------------------------------------

    def epsilon(self, lam: Sequence, mu: Sequence) -> RationalAngle:
        """The bi-additive 2-cocycle in the canonical HNF basis of Lw - Lb."""
        d = self.derived()
        x = d.sum_lattice.coords_of(lam)
        y = d.sum_lattice.coords_of(mu)
        if x is None or y is None:
            raise NotInSumLattice("epsilon arguments must lie in the sum lattice")
        table = self._epsilon_table()
        total = Fraction(0)
        n = len(x)
        for i in range(n):
            if x[i]:
                for j in range(i + 1, n):
                    if y[j]:
                        total += x[i] * y[j] * table[i][j]
        return RationalAngle(total)

    def _epsilon_table(self):
        if self._eps_table is None:
            gens = self.derived().sum_lattice.generators
            n = len(gens)
            table = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    table[i][j] = self.commutator_b(gens[i], gens[j]).value
            self._eps_table = table
        return self._eps_table

    def __repr__(self) -> str:
        return f"LatticeSpan({self.name or 'anonymous'}, rank={self.rank})"


def make_span(gamma, white, black, embed_w, embed_b, name=None) -> LatticeSpan:
    return LatticeSpan(gamma, white, black, embed_w, embed_b, name)


def finite_quotient(ambient: RationalSublattice, sub: RationalSublattice) -> FiniteAbelianPresentation:
    """Invariant factors and generator lifts of ambient/sub (sub must be
    contained in ambient, same ambient space, both full rank)."""
    if ambient.ambient_gram != sub.ambient_gram:
        raise NotContained("quotient needs sublattices of one ambient space")
    if not ambient.contains_sublattice(sub):
        raise NotContained("second lattice is not contained in the first")
    return quotient_presentation(ambient, sub)


# ---------------------------------------------------------------------------
# builtin spans


def identity_span(lat: Lattice) -> LatticeSpan:
    ident = mx.identity(lat.rank)
    return LatticeSpan(lat, lat, lat, ident, ident, name=f"identity:{lat.name or 'L'}")


def builtin_span(name: str) -> LatticeSpan:
    """Named spans: ``identity:<catalog lattice>``, ``rank1-72``, ``d8pair``."""
    key = name.strip()
    if key.startswith("identity:"):
        return identity_span(builtin(key.split(":", 1)[1]))
    if key == "rank1-72":
        return LatticeSpan(
            Lattice([[72]], "G72"),
            Lattice([[18]], "W18"),
            Lattice([[8]], "B8"),
            [[2]],
            [[3]],
            name="rank1-72",
        )
    if key == "d8pair":
        return _d8pair()
    from latloop.errors import UnknownName

    raise UnknownName(f"unknown builtin span {name!r}")


def _d8pair() -> LatticeSpan:
    """The two E8-isometric overlattices of D8, glued over Gamma = D8."""
    from latloop.glue import isotropic_subgroups, overlattice_sublattice

    d8 = builtin("D8")
    subs = [s for s in isotropic_subgroups(d8, "q") if s.order > 1]
    overs = [overlattice_sublattice(d8, s) for s in subs]
    lats = []
    embeds = []
    for over in overs:
        gram = over.gram()
        lats.append(Lattice([[int(x) for x in row] for row in gram]))
        emb = mx.rat_inv(over.basis_matrix())
        embeds.append([[int(x) for x in row] for row in emb])
    return LatticeSpan(d8, lats[0], lats[1], embeds[0], embeds[1], name="d8pair")
