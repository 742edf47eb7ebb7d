"""Bicoloured torus loops over a span of even lattices.

A bicoloured loop (gamma_w, gamma_m, gamma_b) is stored through a glued
lift: a PL path ``lift`` in h-coordinates representing the path obtained by
walking the black half [0, 1/2] and then the white half [1/2, 1] of the
circle, together with a vector ``mq`` lifting the matching datum at the
point q.  The validity conditions are

    lift(1) - lift(0) in Lw - Lb,
    mq - lift(1) in preW,   mq - lift(0) in preB.

The white and black torus loops are recovered by pushing the lift through
the two embeddings on the respective halves; their supports define the
support of the bicoloured loop (the matching data never enter it).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from latloop import matrix as mx
from latloop.angles import RationalAngle
from latloop.errors import (
    EndpointMismatch,
    Mismatch,
    PeriodMismatch,
    SupportViolation,
    WindingNotInSum,
)
from latloop.loops import (
    PLLoop,
    PLPath,
    PLReparam,
    bilinear_s,
    d_cochain,
    merge_intervals,
    pairing_integral,
    pull_back_path,
)
from latloop.span import LatticeSpan

HALF = Fraction(1, 2)


class BicolouredLoop:
    """An element of the bicoloured loop group, as a glued PL lift."""

    __slots__ = ("span", "lift", "mq")

    def __init__(self, span: LatticeSpan, lift: PLPath, mq: Sequence):
        mq = tuple(Fraction(x) for x in mq)
        if lift.dim != span.rank or len(mq) != span.rank:
            raise Mismatch("lift and matching vector must have the span's rank")
        derived = span.derived()
        if derived.sum_lattice.coords_of(lift.winding) is None:
            raise WindingNotInSum("lift(1) - lift(0) must lie in Lw - Lb")
        if derived.pre_w.coords_of(mx.vec_sub(mq, lift.end)) is None:
            raise EndpointMismatch("mq - lift(1) must lie in the white pre-image")
        if derived.pre_b.coords_of(mx.vec_sub(mq, lift.start)) is None:
            raise EndpointMismatch("mq - lift(0) must lie in the black pre-image")
        self.span = span
        self.lift = lift
        self.mq = mq

    # -- group structure ----------------------------------------------------

    def __add__(self, other: "BicolouredLoop") -> "BicolouredLoop":
        if self.span is not other.span and self.span.gamma != other.span.gamma:
            raise Mismatch("loops over different spans")
        return BicolouredLoop(self.span, self.lift + other.lift, mx.vec_add(self.mq, other.mq))

    def __neg__(self) -> "BicolouredLoop":
        return BicolouredLoop(self.span, -self.lift, tuple(-x for x in self.mq))

    def __sub__(self, other: "BicolouredLoop") -> "BicolouredLoop":
        return self + (-other)

    def same_loop(self, other: "BicolouredLoop") -> bool:
        """The lifts may differ by one constant Gamma vector, and the matching
        lifts independently by a Gamma vector."""
        diff = mx.vec_sub(self.lift.start, other.lift.start)
        if any(x.denominator != 1 for x in diff):
            return False
        if self.lift != other.lift.shift_values(diff):
            return False
        mdiff = mx.vec_sub(self.mq, other.mq)
        return all(x.denominator == 1 for x in mdiff)

    # -- structural homomorphisms -------------------------------------------

    def pth(self) -> PLPath:
        """Forget the matching datum at q: the path in P(H, (Lw-Lb)/Gamma)."""
        return self.lift

    def delta_prime(self) -> tuple:
        """Winding of the path part, an element of Lw - Lb in h-coordinates."""
        return self.lift.winding

    def delta_class(self) -> tuple:
        """The connected component, a canonical representative of
        (lambda_w, lambda_b) in (Lw + Lb)/Gamma."""
        span = self.span
        lw = span.to_white(mx.vec_sub(self.lift.end, self.mq))
        lb = span.to_black(mx.vec_sub(self.lift.start, self.mq))
        vec = tuple(int(x) for x in lw) + tuple(int(x) for x in lb)
        return mx.reduce_mod_lattice(vec, _gamma_image_basis(span))

    def support(self) -> list[tuple[Fraction, Fraction]]:
        """supp gamma_w u supp gamma_b: computed from the projections, never
        from the lift alone (the kernel of Pth has empty support)."""
        derived = self.span.derived()
        lift = self.lift.refined([HALF])
        intervals = []
        for k in range(len(lift.breakpoints) - 1):
            a, b = lift.breakpoints[k], lift.breakpoints[k + 1]
            pre = derived.pre_b if b <= HALF else derived.pre_w
            va, vb = lift.values[k], lift.values[k + 1]
            if va == vb and pre.coords_of(va) is not None:
                continue
            intervals.append((a, b))
        return merge_intervals(intervals)

    def __repr__(self) -> str:
        return f"BicolouredLoop(delta'={self.delta_prime()})"


def _gamma_image_basis(span: LatticeSpan):
    if span._delta_basis is None:
        rows = []
        for i in range(span.rank):
            e = [int(i == j) for j in range(span.rank)]
            rows.append(list(span.to_white(e)) + list(span.to_black(e)))
        span._delta_basis = mx.hnf_basis(rows)
    return span._delta_basis


def delta_class_add(span: LatticeSpan, c1: Sequence[int], c2: Sequence[int]) -> tuple:
    return mx.reduce_mod_lattice(mx.vec_add(c1, c2), _gamma_image_basis(span))


def delta_class_reduce(span: LatticeSpan, pair: Sequence[int]) -> tuple:
    return mx.reduce_mod_lattice(tuple(int(x) for x in pair), _gamma_image_basis(span))


def bottom_row_map(span: LatticeSpan, pair: Sequence[int]) -> tuple:
    """(R pi_w)^{-1} lambda_w - (R pi_b)^{-1} lambda_b in h-coordinates."""
    n = span.rank
    lw, lb = pair[:n], pair[n:]
    return mx.vec_sub(mx.mat_vec(span.inv_embed_w(), lw), mx.mat_vec(span.inv_embed_b(), lb))


# ---------------------------------------------------------------------------
# constructions


def zero_loop(span: LatticeSpan) -> BicolouredLoop:
    z = [0] * span.rank
    return BicolouredLoop(span, PLPath.constant(z), z)


def kernel_element(span: LatticeSpan, nu: Sequence) -> BicolouredLoop:
    """The Pth-kernel element with matching datum nu (a vector of the
    intersection lattice)."""
    return BicolouredLoop(span, PLPath.constant([0] * span.rank), nu)


def standard_loop(span: LatticeSpan, lam_w: Sequence[int], lam_b: Sequence[int]) -> BicolouredLoop:
    """The straight-segment section of Delta at the class [lam_w, lam_b]:
    the lift runs from (R pi_b)^{-1} lam_b to (R pi_w)^{-1} lam_w, mq = 0."""
    start = mx.mat_vec(span.inv_embed_b(), lam_b)
    end = mx.mat_vec(span.inv_embed_w(), lam_w)
    return BicolouredLoop(span, PLPath((0, 1), (start, end)), [0] * span.rank)


def embed_h(span: LatticeSpan, loop: PLLoop) -> BicolouredLoop:
    """Bi: bicolourise a unicoloured loop over Gamma."""
    if loop.lattice != span.gamma:
        raise Mismatch("embed_h needs a loop over the span's middle lattice")
    return BicolouredLoop(span, loop.lift, loop.lift.start)


def embed_white(span: LatticeSpan, loop: PLLoop) -> BicolouredLoop:
    """A loop over Lw supported in the white half [1/2, 1], as the
    bicoloured loop (gamma_w, 0, 0)."""
    if loop.lattice != span.white:
        raise Mismatch("embed_white needs a loop over the white lattice")
    from latloop.loops import support_within

    if not support_within(loop.support(), (HALF, 1)):
        raise SupportViolation("white loops must be supported in [1/2, 1]")
    inv_w = span.inv_embed_w()
    xi = loop.lift.refined([HALF])
    anchor = xi.value_at(HALF)
    vals = []
    for t, v in zip(xi.breakpoints, xi.values):
        if t <= HALF:
            vals.append(tuple(Fraction(0) for _ in range(span.rank)))
        else:
            vals.append(mx.mat_vec(inv_w, mx.vec_sub(v, anchor)))
    return BicolouredLoop(span, PLPath(xi.breakpoints, vals), [0] * span.rank)


def embed_black(span: LatticeSpan, loop: PLLoop) -> BicolouredLoop:
    """A loop over Lb supported in the black half [0, 1/2], as the
    bicoloured loop (0, 0, gamma_b)."""
    if loop.lattice != span.black:
        raise Mismatch("embed_black needs a loop over the black lattice")
    from latloop.loops import support_within

    if not support_within(loop.support(), (0, HALF)):
        raise SupportViolation("black loops must be supported in [0, 1/2]")
    inv_b = span.inv_embed_b()
    xi = loop.lift.refined([HALF])
    anchor = xi.value_at(HALF)
    vals = []
    for t, v in zip(xi.breakpoints, xi.values):
        if t >= HALF:
            vals.append(tuple(Fraction(0) for _ in range(span.rank)))
        else:
            vals.append(mx.mat_vec(inv_b, mx.vec_sub(v, anchor)))
    return BicolouredLoop(span, PLPath(xi.breakpoints, vals), [0] * span.rank)


# ---------------------------------------------------------------------------
# the central extension


class BicolouredExtension:
    """The T-central extension of the bicoloured loop group of a span: the
    pullback along Pth of the extension of the path group."""

    def __init__(self, span: LatticeSpan):
        self.span = span

    def cocycle(self, gamma: BicolouredLoop, rho: BicolouredLoop) -> RationalAngle:
        """c(gamma, rho) = eps(d'gamma, d'rho) * exp(2 pi i S'(xi, eta)) with
        S' the Gamma-form bilinear form on the Pth lifts."""
        s = bilinear_s(self.span.gamma.gram, gamma.lift, rho.lift)
        eps = self.span.epsilon(gamma.delta_prime(), rho.delta_prime())
        return eps + RationalAngle(s)

    def cocycle_via_sides(self, gamma: BicolouredLoop, rho: BicolouredLoop) -> RationalAngle:
        """The same cocycle evaluated in the bicoloured fashion: the integral
        split at p with the white/black forms on the pushed-forward lifts."""
        s = self.s_via_sides(gamma, rho)
        eps = self.span.epsilon(gamma.delta_prime(), rho.delta_prime())
        return eps + RationalAngle(s)

    def s_via_sides(self, gamma: BicolouredLoop, rho: BicolouredLoop) -> Fraction:
        span = self.span
        xw, ew = _side_paths(span, gamma.lift, white=True), _side_paths(span, rho.lift, white=True)
        xb, eb = _side_paths(span, gamma.lift, white=False), _side_paths(span, rho.lift, white=False)
        total = pairing_integral(span.white.gram, xw, ew) + pairing_integral(span.black.gram, xb, eb)
        total += mx.form_value(span.gamma.gram, gamma.delta_prime(), rho.lift.start)
        return total / 2

    def element(self, loop: BicolouredLoop, phase=0) -> "BicolouredElement":
        if not isinstance(phase, RationalAngle):
            phase = RationalAngle(phase)
        return BicolouredElement(self, loop, phase)

    def unit(self) -> "BicolouredElement":
        return self.element(zero_loop(self.span))

    def commutator(self, gamma: BicolouredLoop, rho: BicolouredLoop):
        """(direct commutator angle, closed form): the closed form is
        b(d'gamma, d'rho) + int <xi', eta> - <d'rho, d'gamma>/2 - <d'rho, xi(0)>."""
        direct = self.cocycle(gamma, rho) - self.cocycle(rho, gamma)
        gram = self.span.gamma.gram
        dg, dr = gamma.delta_prime(), rho.delta_prime()
        s_diff = (
            pairing_integral(gram, gamma.lift, rho.lift)
            - Fraction(mx.form_value(gram, dr, dg), 2)
            - mx.form_value(gram, dr, gamma.lift.start)
        )
        closed = self.span.commutator_b(dg, dr) + RationalAngle(s_diff)
        return direct, closed


def _side_paths(span: LatticeSpan, lift: PLPath, white: bool) -> PLPath:
    """The white (or black) half of the lift, pushed to Lw (Lb) coordinates
    and extended constantly over the other half so the integrals pick up
    exactly the intended arc."""
    ref = lift.refined([HALF])
    to = span.to_white if white else span.to_black
    vals = []
    for t, v in zip(ref.breakpoints, ref.values):
        if white:
            anchor = ref.value_at(HALF) if t <= HALF else v
        else:
            anchor = ref.value_at(HALF) if t >= HALF else v
        vals.append(to(anchor))
    return PLPath(ref.breakpoints, vals)


@dataclass(frozen=True)
class BicolouredElement:
    group: BicolouredExtension
    loop: BicolouredLoop
    phase: RationalAngle

    def __mul__(self, other: "BicolouredElement") -> "BicolouredElement":
        c = self.group.cocycle(self.loop, other.loop)
        return BicolouredElement(self.group, self.loop + other.loop, self.phase + other.phase + c)

    def inverse(self) -> "BicolouredElement":
        inv = -self.loop
        c = self.group.cocycle(self.loop, inv)
        return BicolouredElement(self.group, inv, -self.phase - c)

    def same_element(self, other: "BicolouredElement") -> bool:
        return self.phase == other.phase and self.loop.same_loop(other.loop)


# ---------------------------------------------------------------------------
# the Diff^(n) action


def d_prime_cochain(span: LatticeSpan, phi: PLReparam, lift: PLPath) -> RationalAngle:
    """d'(Phi, gamma) = exp(pi i <Xi(Phi^{-1}(0)) - Xi(0), Delta'>_Gamma);
    well-defined modulo Phi -> Phi + n thanks to n (Lw - Lb) <= Gamma."""
    diff = mx.vec_sub(lift.qp_value(phi.inverse_at(0)), lift.start)
    val = Fraction(mx.form_value(span.gamma.gram, diff, lift.winding), 2)
    return RationalAngle(val)


def bicol_reparam(element: BicolouredElement, phi: PLReparam) -> BicolouredElement:
    """[Phi] . (gamma, z): pull the Pth lift back, move the matching lift by
    the change of the basepoint value, multiply the phase by d'."""
    span = element.group.span
    n = span.derived().level
    if n % phi.period != 0:
        raise PeriodMismatch(f"reparametrization cover {phi.period} does not divide the level {n}")
    loop = element.loop
    new_lift = pull_back_path(loop.lift, phi)
    new_mq = mx.vec_add(mx.vec_sub(loop.mq, loop.lift.start), new_lift.start)
    d = d_prime_cochain(span, phi, loop.lift)
    return BicolouredElement(
        element.group, BicolouredLoop(span, new_lift, new_mq), element.phase + d
    )


# ---------------------------------------------------------------------------
# disjointness of bicoloured supports

P_POINT = HALF
Q_POINT = Fraction(0)


def _circle_hull(support) -> list:
    """Candidate minimal closed arcs containing the support (as (start, end,
    wraps) triples); empty support yields no constraints."""
    if not support:
        return [(Fraction(0), Fraction(0), False)]
    lo = min(a for a, _ in support)
    hi = max(b for _, b in support)
    hulls = [(lo, hi, False)]
    # wrapping hulls: start at some component, wrap through 1 == 0
    for i in range(1, len(support)):
        start = support[i][0]
        end = support[i - 1][1]
        hulls.append((start, end, True))
    return hulls


def _arc_contains(point, start, end, wraps) -> bool:
    if wraps:
        return point >= start or point <= end
    return start <= point <= end


def _arc_is_bicoloured(start, end, wraps) -> bool:
    """An arc avoiding p or q (interior placement is free: the arcs produced
    by _circle_hull are minimal, so they can always be fattened within the
    complement to put a contained colour point into the interior)."""
    return not (
        _arc_contains(P_POINT, start, end, wraps) and _arc_contains(Q_POINT, start, end, wraps)
    )


def _arcs_disjoint(a, b) -> bool:
    """Disjointness of closed circle arcs; arcs sharing an endpoint are not
    disjoint (both enclosing intervals would have to contain the point)."""
    sa, ea, wa = a
    sb, eb, wb = b
    if wa and wb:
        return False  # both contain the point 0 == 1
    if not wa and not wb:
        return ea < sb or eb < sa
    if wa:
        # a = [sa, 1] u [0, ea]: meets [sb, eb] iff eb >= sa or sb <= ea
        return eb < sa and sb > ea
    return _arcs_disjoint(b, a)


def disjoint_bicoloured_intervals(supp1, supp2) -> bool:
    """Can the two supports be put into two disjoint bicoloured intervals?

    Tries every pair of minimal circle hulls of the supports and checks the
    bicoloured-interval condition on both.
    """
    if not supp1 or not supp2:
        return True
    for h1 in _circle_hull(supp1):
        if not _arc_is_bicoloured(*h1):
            continue
        for h2 in _circle_hull(supp2):
            if not _arc_is_bicoloured(*h2):
                continue
            if _arcs_disjoint(h1, h2):
                return True
    return False
