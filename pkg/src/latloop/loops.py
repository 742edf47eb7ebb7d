"""Piecewise-linear torus loops and their centrally extended arithmetic.

A loop in T = t/L is stored through a PL lift xi: [0,1] -> t whose endpoint
difference (the winding element) has integer coordinates.  All cocycle and
cochain values are rational on PL data, so the group law of the central
extension, the commutator closed forms, the reparametrization action and
the lattice-automorphism action are all evaluated exactly in Q/Z.

Conventions: the circle is parametrised by [0,1] starting at the privileged
point q; for bicoloured loops (see latloop.bicoloured) the point p sits at
1/2, the white half is [1/2,1] and the black half [0,1/2].
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from latloop import matrix as mx
from latloop.angles import RationalAngle
from latloop.errors import Mismatch, NotEven, NotIsometry, SupportOverlap, WindingNotInSum
from latloop.lattice import Lattice


# ---------------------------------------------------------------------------
# PL paths


class PLPath:
    """A piecewise-affine path [0,1] -> Q^dim with rational breakpoints."""

    __slots__ = ("breakpoints", "values", "dim", "_slopes")

    def __init__(self, breakpoints: Sequence, values: Sequence[Sequence]):
        bps = tuple(Fraction(t) for t in breakpoints)
        vals = tuple(tuple(Fraction(x) for x in v) for v in values)
        if len(bps) != len(vals) or len(bps) < 2:
            raise ValueError("need matching breakpoints and values, at least two")
        if bps[0] != 0 or bps[-1] != 1 or any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must increase strictly from 0 to 1")
        dims = {len(v) for v in vals}
        if len(dims) != 1:
            raise ValueError("inconsistent value dimensions")
        self.breakpoints = bps
        self.values = vals
        self.dim = dims.pop()
        self._slopes = None

    @classmethod
    def constant(cls, vec: Sequence) -> "PLPath":
        v = tuple(Fraction(x) for x in vec)
        return cls((0, 1), (v, v))

    @classmethod
    def linear(cls, vec: Sequence) -> "PLPath":
        """theta |-> theta * vec."""
        v = tuple(Fraction(x) for x in vec)
        return cls((0, 1), (tuple(Fraction(0) for _ in v), v))

    @property
    def start(self) -> tuple:
        return self.values[0]

    @property
    def end(self) -> tuple:
        return self.values[-1]

    @property
    def winding(self) -> tuple:
        return mx.vec_sub(self.end, self.start)

    def value_at(self, t) -> tuple:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("parameter out of [0,1]")
        k = bisect_right(self.breakpoints, t) - 1
        if k == len(self.breakpoints) - 1:
            return self.values[-1]
        a = self.breakpoints[k]
        if t == a:
            return self.values[k]
        if self._slopes is None:
            self._slopes = [
                tuple((y - x) / (q - p) for x, y in zip(u, v))
                for p, q, u, v in zip(
                    self.breakpoints, self.breakpoints[1:], self.values, self.values[1:]
                )
            ]
        dt = t - a
        return tuple(x + dt * s for x, s in zip(self.values[k], self._slopes[k]))

    def qp_value(self, t) -> tuple:
        """Quasi-periodic extension: Xi(t + 1) = Xi(t) + winding."""
        t = Fraction(t)
        j = t.__floor__()
        base = self.value_at(t - j)
        if j == 0:
            return base
        w = self.winding
        return tuple(x + j * wi for x, wi in zip(base, w))

    def refined(self, extra_points) -> "PLPath":
        pts = sorted(set(self.breakpoints) | {Fraction(t) for t in extra_points})
        return PLPath(pts, [self.value_at(t) for t in pts])

    def map_values(self, fn: Callable[[tuple], tuple]) -> "PLPath":
        return PLPath(self.breakpoints, [fn(v) for v in self.values])

    def shift_values(self, vec: Sequence) -> "PLPath":
        v = tuple(Fraction(x) for x in vec)
        return self.map_values(lambda w: mx.vec_add(w, v))

    def __add__(self, other: "PLPath") -> "PLPath":
        pts = sorted(set(self.breakpoints) | set(other.breakpoints))
        return PLPath(pts, [mx.vec_add(self.value_at(t), other.value_at(t)) for t in pts])

    def __neg__(self) -> "PLPath":
        return self.map_values(lambda v: tuple(-x for x in v))

    def __sub__(self, other: "PLPath") -> "PLPath":
        return self + (-other)

    def integral(self) -> tuple:
        """Exact integral over [0,1] (trapezoid rule is exact on affine pieces)."""
        total = [Fraction(0)] * self.dim
        for k in range(len(self.breakpoints) - 1):
            h = self.breakpoints[k + 1] - self.breakpoints[k]
            for i in range(self.dim):
                total[i] += h * (self.values[k][i] + self.values[k + 1][i]) / 2
        return tuple(total)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PLPath):
            return NotImplemented
        pts = sorted(set(self.breakpoints) | set(other.breakpoints))
        return all(self.value_at(t) == other.value_at(t) for t in pts)

    def __hash__(self):
        return hash((self.breakpoints, self.values))

    def __repr__(self) -> str:
        return f"PLPath({len(self.breakpoints)} nodes, dim {self.dim})"


def pairing_integral(gram, xi: PLPath, eta: PLPath) -> Fraction:
    """int_0^1 <xi'(t), eta(t)> dt, exact (xi' is constant on each piece).

    Piece lengths cancel against the constant xi', so the integral is a sum
    of products of node values; those are rescaled to one integer grid and
    summed in plain integer arithmetic.
    """
    pts = sorted(set(xi.breakpoints) | set(eta.breakpoints))
    vx = [xi.value_at(t) for t in pts]
    ve = [eta.value_at(t) for t in pts]
    dx_den = mx.lcm_list([f.denominator for v in vx for f in v])
    de_den = mx.lcm_list([f.denominator for v in ve for f in v])
    ivx = [[int(f * dx_den) for f in v] for v in vx]
    ive = [[int(f * de_den) for f in v] for v in ve]
    g_den = mx.lcm_list([Fraction(g).denominator for row in gram for g in row])
    sparse = [[(j, int(Fraction(g) * g_den)) for j, g in enumerate(row) if g] for row in gram]
    total = 0
    for k in range(len(pts) - 1):
        x0, x1 = ivx[k], ivx[k + 1]
        e0, e1 = ive[k], ive[k + 1]
        for i, row in enumerate(sparse):
            dx = x1[i] - x0[i]
            if dx:
                total += dx * sum(g * (e0[j] + e1[j]) for j, g in row)
    return Fraction(total, 2 * dx_den * de_den * g_den)


def bilinear_s(gram, xi: PLPath, eta: PLPath) -> Fraction:
    """S(xi, eta) = (1/2) int <xi', eta> + (1/2) <Delta_xi, eta(0)>."""
    return pairing_integral(gram, xi, eta) / 2 + mx.form_value(gram, xi.winding, eta.start) / 2


# ---------------------------------------------------------------------------
# loops over a lattice


class PLLoop:
    """A torus loop given by a PL lift whose winding has integer coordinates."""

    __slots__ = ("lattice", "lift")

    def __init__(self, lattice: Lattice, lift: PLPath):
        if lift.dim != lattice.rank:
            raise Mismatch("lift dimension must equal the lattice rank")
        w = lift.winding
        if any(x.denominator != 1 for x in w):
            raise WindingNotInSum("endpoint difference must lie in the lattice")
        self.lattice = lattice
        self.lift = lift

    @property
    def winding(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.lift.winding)

    @classmethod
    def standard(cls, lattice: Lattice, lam: Sequence[int]) -> "PLLoop":
        """gamma_lambda: the projection of theta |-> theta*lambda."""
        return cls(lattice, PLPath.linear(lam))

    @classmethod
    def constant(cls, lattice: Lattice, x: Sequence) -> "PLLoop":
        return cls(lattice, PLPath.constant(x))

    def __add__(self, other: "PLLoop") -> "PLLoop":
        if self.lattice != other.lattice:
            raise Mismatch("loops live over different lattices")
        return PLLoop(self.lattice, self.lift + other.lift)

    def __neg__(self) -> "PLLoop":
        return PLLoop(self.lattice, -self.lift)

    def __sub__(self, other: "PLLoop") -> "PLLoop":
        return self + (-other)

    def same_loop(self, other: "PLLoop") -> bool:
        """Equality in LT: the lifts differ by one constant lattice vector."""
        if self.lattice != other.lattice:
            return False
        diff = mx.vec_sub(self.lift.start, other.lift.start)
        if any(x.denominator != 1 for x in diff):
            return False
        return self.lift == other.lift.shift_values(diff)

    def decompose(self):
        """(torus part mod L, zero-average path, winding): gamma determines
        the triple by averaging its lift; recomposition gives the lift back
        up to a lattice shift."""
        avg = self.lift.integral()
        torus = tuple(x % 1 for x in avg)
        vpart = self.lift.map_values(lambda v: mx.vec_sub(v, avg))
        return torus, vpart, self.winding

    def support(self) -> list[tuple[Fraction, Fraction]]:
        """Closure of {t : gamma(t) != 0}, as merged closed intervals in [0,1].

        A piece contributes nothing only when it is constant at a lattice
        value; isolated lattice crossings stay inside the support closure.
        """
        lift = self.lift
        intervals = []
        for k in range(len(lift.breakpoints) - 1):
            va, vb = lift.values[k], lift.values[k + 1]
            if va == vb and all(x.denominator == 1 for x in va):
                continue
            intervals.append((lift.breakpoints[k], lift.breakpoints[k + 1]))
        return merge_intervals(intervals)

    def __repr__(self) -> str:
        return f"PLLoop(winding={self.winding})"


def merge_intervals(intervals):
    out: list[tuple[Fraction, Fraction]] = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def support_within(support, interval, wraps: bool = False) -> bool:
    """Is the support contained in the circle interval [a, b] ([a,1]u[0,b]
    when ``wraps``)?"""
    a, b = Fraction(interval[0]), Fraction(interval[1])
    for lo, hi in support:
        if wraps:
            if not (lo >= a or hi <= b):
                return False
        else:
            if not (a <= lo and hi <= b):
                return False
    return True


# ---------------------------------------------------------------------------
# the 2-cocycle and the central extension


def epsilon_table(lat: Lattice, graded: bool) -> list:
    """b0-values eps(e_i, e_j) for i < j of the pinned bi-additive cocycle.

    Even case: b0 = <e_i, e_j>/2; odd (graded) case the commutator picks up
    the parity term, b0 = (<e_i,e_j> + <e_i,e_i><e_j,e_j>)/2.
    """
    n = lat.rank
    table = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b0 = Fraction(lat.gram[i][j], 2)
            if graded:
                b0 += Fraction(lat.gram[i][i] * lat.gram[j][j], 2)
            table[i][j] = b0
    return table


def epsilon_angle(table, x: Sequence[int], y: Sequence[int]) -> RationalAngle:
    total = Fraction(0)
    n = len(x)
    for i in range(n):
        if x[i]:
            for j in range(i + 1, n):
                if y[j]:
                    total += x[i] * y[j] * table[i][j]
    return RationalAngle(total)


class LoopExtension:
    """The centrally extended loop group of one even (or graded odd) lattice.

    Bundles the lattice with the pinned cocycle eps so that all phase
    computations agree across operations.
    """

    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        self.graded = not lattice.is_even
        self._eps = epsilon_table(lattice, self.graded)

    def epsilon(self, lam: Sequence[int], mu: Sequence[int]) -> RationalAngle:
        return epsilon_angle(self._eps, lam, mu)

    def cocycle(self, gamma: PLLoop, rho: PLLoop) -> RationalAngle:
        """c(gamma, rho) = eps(winding, winding) + S(xi, eta) as an angle."""
        s = bilinear_s(self.lattice.gram, gamma.lift, rho.lift)
        return self.epsilon(gamma.winding, rho.winding) + RationalAngle(s)

    def element(self, gamma: PLLoop, phase: RationalAngle | Fraction | int = 0) -> "ExtensionElement":
        if not isinstance(phase, RationalAngle):
            phase = RationalAngle(phase)
        return ExtensionElement(self, gamma, phase)

    def unit(self) -> "ExtensionElement":
        return self.element(PLLoop.constant(self.lattice, [0] * self.lattice.rank))

    def commutator(self, gamma: PLLoop, rho: PLLoop) -> tuple[RationalAngle, RationalAngle]:
        """(c(g,r) - c(r,g), its closed form); the two always agree.

        Closed form: eps-commutator of the windings plus
        int <xi', eta> - <Delta_rho, Delta_gamma>/2 - <Delta_rho, xi(0)>.
        """
        direct = self.cocycle(gamma, rho) - self.cocycle(rho, gamma)
        gram = self.lattice.gram
        s_diff = (
            pairing_integral(gram, gamma.lift, rho.lift)
            - Fraction(mx.form_value(gram, rho.winding, gamma.winding), 2)
            - mx.form_value(gram, rho.winding, gamma.lift.start)
        )
        closed = (
            self.epsilon(gamma.winding, rho.winding)
            - self.epsilon(rho.winding, gamma.winding)
            + RationalAngle(s_diff)
        )
        return direct, closed

    def parity(self, gamma: PLLoop) -> int:
        return int(self.lattice.norm(gamma.winding)) % 2


@dataclass(frozen=True)
class ExtensionElement:
    """(gamma, z) in the T-central extension, with z a rational angle."""

    group: LoopExtension
    loop: PLLoop
    phase: RationalAngle

    def __mul__(self, other: "ExtensionElement") -> "ExtensionElement":
        if self.group is not other.group and self.group.lattice != other.group.lattice:
            raise Mismatch("elements of different extensions")
        c = self.group.cocycle(self.loop, other.loop)
        return ExtensionElement(self.group, self.loop + other.loop, self.phase + other.phase + c)

    def inverse(self) -> "ExtensionElement":
        inv = -self.loop
        c = self.group.cocycle(self.loop, inv)
        return ExtensionElement(self.group, inv, -self.phase - c)

    def same_element(self, other: "ExtensionElement") -> bool:
        return self.phase == other.phase and self.loop.same_loop(other.loop)


# ---------------------------------------------------------------------------
# PL reparametrizations (the covers of Diff+(S^1))

class PLReparam:
    """An increasing PL bijection Phi of R with Phi(t+1) = Phi(t)+1, stored on
    [0,1]; ``period`` n records the cover Diff^(n), in which Phi and Phi + n
    are the same element."""

    __slots__ = ("period", "breakpoints", "values")

    def __init__(self, breakpoints: Sequence, values: Sequence, period: int = 1):
        bps = tuple(Fraction(t) for t in breakpoints)
        vals = tuple(Fraction(v) for v in values)
        if len(bps) != len(vals) or len(bps) < 2:
            raise ValueError("need matching breakpoints and values")
        if bps[0] != 0 or bps[-1] != 1 or any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must increase strictly from 0 to 1")
        if any(a >= b for a, b in zip(vals, vals[1:])) or vals[-1] != vals[0] + 1:
            raise ValueError("values must increase strictly with Phi(1) = Phi(0) + 1")
        if period < 1:
            raise ValueError("period must be a positive integer")
        self.period = int(period)
        self.breakpoints = bps
        self.values = vals

    @classmethod
    def identity(cls, period: int = 1) -> "PLReparam":
        return cls((0, 1), (0, 1), period)

    @classmethod
    def rotation(cls, theta, period: int = 1) -> "PLReparam":
        t = Fraction(theta)
        return cls((0, 1), (t, t + 1), period)

    def value_at(self, t) -> Fraction:
        t = Fraction(t)
        j = t.__floor__()
        t0 = t - j
        k = bisect_right(self.breakpoints, t0) - 1
        if k == len(self.breakpoints) - 1:
            return self.values[-1] + j
        a, b = self.breakpoints[k], self.breakpoints[k + 1]
        va, vb = self.values[k], self.values[k + 1]
        return va + (t0 - a) * (vb - va) / (b - a) + j

    def inverse_at(self, t) -> Fraction:
        t = Fraction(t)
        j = (t - self.values[0]).__floor__()
        t0 = t - j
        for k in range(len(self.values) - 1):
            if self.values[k] <= t0 <= self.values[k + 1]:
                a, b = self.breakpoints[k], self.breakpoints[k + 1]
                va, vb = self.values[k], self.values[k + 1]
                return a + (t0 - va) * (b - a) / (vb - va) + j
        raise ValueError("inversion out of range")  # pragma: no cover

    def compose(self, other: "PLReparam") -> "PLReparam":
        """self after other: (self . other)(t) = self(other(t))."""
        if self.period != other.period:
            raise Mismatch("composition needs matching cover periods")
        pts = set(other.breakpoints)
        for v in self.breakpoints:
            # pull self's breakpoints back through other, into [0,1]
            s = other.inverse_at(v)
            pts.add(s - s.__floor__())
        pts |= {Fraction(0), Fraction(1)}
        bps = sorted(pts)
        vals = [self.value_at(other.value_at(t)) for t in bps]
        return PLReparam(bps, vals, self.period)

    def shifted(self, k: int) -> "PLReparam":
        """Phi + k (the deck transformation by k in Diff^(infinity))."""
        return PLReparam(self.breakpoints, [v + k for v in self.values], self.period)

    def is_identity_map(self) -> bool:
        return all(v == b for v, b in zip(self.values, self.breakpoints))

    def support(self) -> list[tuple[Fraction, Fraction]]:
        """Support of the induced circle map: pieces where the displacement
        Phi(t) - t is not a constant integer, merged intervals in [0,1]."""
        intervals = []
        for k in range(len(self.breakpoints) - 1):
            da = self.values[k] - self.breakpoints[k]
            db = self.values[k + 1] - self.breakpoints[k + 1]
            if da == db and da.denominator == 1:
                continue
            intervals.append((self.breakpoints[k], self.breakpoints[k + 1]))
        return merge_intervals(intervals)


def pull_back_path(lift: PLPath, phi: PLReparam) -> PLPath:
    """(Phi^* Xi)|[0,1] = Xi(Phi^{-1}(.)), using the quasi-periodic extension
    of the lift; exact PL output."""
    s0 = phi.inverse_at(0)
    s1 = phi.inverse_at(1)  # = s0 + 1
    pts = {Fraction(0), Fraction(1)}
    lo = s0.__floor__() - 1
    hi = s1.__ceil__() + 1
    for b in lift.breakpoints:
        for j in range(lo, hi + 1):
            s = b + j
            if s0 < s < s1:
                pts.add(phi.value_at(s))
    for v in phi.values:
        t = v - v.__floor__()  # the Phi^{-1}-breakpoint copy inside [0,1)
        if 0 < t < 1:
            pts.add(t)
    bps = sorted(pts)
    vals = [lift.qp_value(phi.inverse_at(t)) for t in bps]
    return PLPath(bps, vals)


def d_cochain(lat: Lattice, phi: PLReparam, gamma: PLLoop) -> RationalAngle:
    """d(phi, gamma) = exp(pi i <Xi(Phi^{-1}(0)) - Xi(0), Delta_gamma>).

    Well-defined on Diff^(1) for even lattices (and on Diff^(2) for odd
    ones); the angle is half the pairing value.
    """
    diff = mx.vec_sub(gamma.lift.qp_value(phi.inverse_at(0)), gamma.lift.start)
    return RationalAngle(Fraction(mx.form_value(lat.gram, diff, gamma.winding), 2))


def act_reparam(element: ExtensionElement, phi: PLReparam) -> ExtensionElement:
    """phi . (gamma, z) = (phi^* gamma, d(phi, gamma) z)."""
    group = element.group
    if group.graded and phi.period % 2 != 0:
        raise NotEven("odd lattices carry an action of the double cover only")
    new_lift = pull_back_path(element.loop.lift, phi)
    d = d_cochain(group.lattice, phi, element.loop)
    return ExtensionElement(group, PLLoop(group.lattice, new_lift), element.phase + d)


def local_triviality_check(
    group: LoopExtension, phi: PLReparam, gamma: PLLoop
) -> tuple[bool, RationalAngle]:
    """For phi supported in an interval disjoint from supp gamma, the action
    must fix (gamma, 0): returns (loop unchanged, d-angle)."""
    supp_phi = phi.support()
    supp_gamma = gamma.support()
    for a, b in supp_phi:
        for c, d in supp_gamma:
            if a < d and c < b:
                raise SupportOverlap("phi and gamma have overlapping supports")
    acted = act_reparam(group.element(gamma), phi)
    return acted.loop.same_loop(gamma), acted.phase


# ---------------------------------------------------------------------------
# lattice automorphism action


def check_isometry(lat: Lattice, g) -> None:
    got = mx.mat_mul(mx.mat_mul(mx.transpose(g), lat.gram), g)
    if [list(r) for r in got] != [list(r) for r in lat.gram]:
        raise NotIsometry("matrix does not preserve the form")


def solve_coboundary(group: LoopExtension, g) -> Callable[[Sequence[int]], RationalAngle]:
    """A 1-cochain e with e(lam+mu) = e(lam) + e(mu) + r(lam, mu), where
    r(lam, mu) = eps(g lam, g mu) - eps(lam, mu).

    r is bi-additive and symmetric because g is an isometry, so the
    half-quadratic expression over a basis solves the coboundary problem.
    """
    check_isometry(group.lattice, g)
    n = group.lattice.rank
    basis = mx.identity(n)
    r = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            gi = mx.mat_vec(g, basis[i])
            gj = mx.mat_vec(g, basis[j])
            val = (group.epsilon(gi, gj) - group.epsilon(basis[i], basis[j])).value
            r[i][j] = val
            r[j][i] = val

    def e(lam: Sequence[int]) -> RationalAngle:
        total = Fraction(0)
        for i in range(n):
            li = lam[i]
            if li:
                total += Fraction(li * (li - 1), 2) * r[i][i]
                for j in range(i + 1, n):
                    total += li * lam[j] * r[i][j]
        return RationalAngle(total)

    return e


def aut_act(element: ExtensionElement, g, e) -> ExtensionElement:
    """(g, e) . (gamma, z) = (g_* gamma, e(Delta_gamma) z)."""
    group = element.group
    new_lift = element.loop.lift.map_values(lambda v: mx.mat_vec(g, v))
    return ExtensionElement(
        group, PLLoop(group.lattice, new_lift), element.phase + e(element.loop.winding)
    )
