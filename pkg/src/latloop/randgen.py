"""Seeded random data for the verification suites.

All generators keep the data small on purpose: few breakpoints, small
denominators, small windings.  That keeps refinements and the Diophantine
decompositions tiny while still exercising every code path.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from latloop import matrix as mx
from latloop.bicoloured import BicolouredLoop
from latloop.lattice import Lattice, RationalSublattice
from latloop.loops import PLLoop, PLPath, PLReparam
from latloop.span import LatticeSpan

MAX_BREAKPOINTS = 8
DENOM = 12
MAX_WINDING = 3


def rng_for(seed: int, tag: str) -> random.Random:
    return random.Random(f"{seed}:{tag}")


def random_fraction(rng: random.Random, span: int = 6) -> Fraction:
    return Fraction(rng.randint(-span * 2, span * 2), rng.randint(1, 4))


def random_breakpoints(rng: random.Random) -> list[Fraction]:
    k = rng.randint(0, MAX_BREAKPOINTS - 2)
    pts = {Fraction(0), Fraction(1)}
    while len(pts) < k + 2:
        pts.add(Fraction(rng.randint(1, DENOM - 1), DENOM))
    return sorted(pts)


def lattice_combination(rng: random.Random, generators: Sequence, bound: int = MAX_WINDING) -> tuple:
    """A random integer combination of the generator vectors."""
    coeffs = [rng.randint(-bound, bound) for _ in generators]
    n = len(generators[0])
    return tuple(sum(c * g[i] for c, g in zip(coeffs, generators)) for i in range(n))


def random_loop(lat: Lattice, rng: random.Random) -> PLLoop:
    """A random PL loop with winding coordinates bounded by MAX_WINDING."""
    n = lat.rank
    bps = random_breakpoints(rng)
    vals = [tuple(random_fraction(rng) for _ in range(n)) for _ in bps]
    w = [rng.randint(-MAX_WINDING, MAX_WINDING) for _ in range(n)]
    vals[-1] = tuple(vals[0][i] + w[i] for i in range(n))
    return PLLoop(lat, PLPath(bps, vals))


def random_bump_loop(lat: Lattice, rng: random.Random, interval, wraps: bool = False) -> PLLoop:
    """A loop supported in the given circle interval.

    The lift is constant at lattice vectors outside the interval; the two
    constant tails may differ by a lattice vector, so supported loops still
    carry winding.  With ``wraps`` the interval is [a,1] u [0,b].
    """
    n = lat.rank
    a, b = Fraction(interval[0]), Fraction(interval[1])
    if wraps:
        inside = lambda t: t > a or t < b
    else:
        inside = lambda t: a < t < b
    pts = {Fraction(0), Fraction(1), a, b}
    if not wraps:
        pts.add((a + b) / 2)
    else:
        pts |= {b / 2, (a + 1) / 2}
    bps = sorted(t for t in pts if 0 <= t <= 1)
    w = [rng.randint(-MAX_WINDING, MAX_WINDING) for _ in range(n)]
    base = [rng.randint(-2, 2) for _ in range(n)]
    vals = []
    for t in bps:
        if inside(t) and t not in (Fraction(0), Fraction(1)):
            vals.append(tuple(random_fraction(rng) for _ in range(n)))
        elif wraps:
            vals.append(tuple(Fraction(x) for x in base))
        elif t <= a:
            vals.append(tuple(Fraction(x) for x in base))
        else:
            vals.append(tuple(Fraction(base[i] + w[i]) for i in range(n)))
    if wraps:
        v0 = tuple(random_fraction(rng) for _ in range(n))
        vals[0] = v0
        vals[-1] = tuple(v0[i] + w[i] for i in range(n))
    return PLLoop(lat, PLPath(bps, vals))


def random_reparam(rng: random.Random, period: int = 1) -> PLReparam:
    bps = random_breakpoints(rng)
    v0 = Fraction(rng.randint(-3 * DENOM, 3 * DENOM), DENOM)
    cuts = sorted(rng.sample(range(1, 4 * DENOM), len(bps) - 2)) if len(bps) > 2 else []
    vals = [v0] + [v0 + Fraction(c, 4 * DENOM) for c in cuts] + [v0 + 1]
    return PLReparam(bps, vals, period)


def random_bump_reparam(rng: random.Random, interval, period: int = 1) -> PLReparam:
    """A reparametrization supported in the circle interval [a, b]; when
    a > b the interval wraps through q = 0 and q sits in its interior."""
    a, b = Fraction(interval[0]), Fraction(interval[1])
    if a < b:
        mid = (a + b) / 2
        dev = (b - a) / 8 * rng.randint(-1, 1)
        bps = [Fraction(0), a, mid, b, Fraction(1)] if a > 0 else [Fraction(0), mid, b, Fraction(1)]
        vals = [t + (dev if t == mid else 0) for t in bps]
        return PLReparam(bps, vals, period)
    # wrapping [a, 1] u [0, b]: identity on [b, a], offset at the seam
    delta = b / 4 * rng.randint(0, 1)
    mid_r = b / 2
    mid_l = (a + 1) / 2
    dev_r = b / 8 * rng.randint(-1, 1)
    dev_l = (1 - a) / 8 * rng.randint(-1, 1)
    bps = [Fraction(0), mid_r, b, a, mid_l, Fraction(1)]
    vals = [delta, mid_r + dev_r, b, a, mid_l + dev_l, 1 + delta]
    return PLReparam(bps, vals, period)


# ---------------------------------------------------------------------------
# bicoloured generators


def random_sum_vector(span: LatticeSpan, rng: random.Random, bound: int = MAX_WINDING) -> tuple:
    return lattice_combination(rng, span.derived().sum_lattice.generators, bound)


def random_bicoloured(span: LatticeSpan, rng: random.Random) -> BicolouredLoop:
    """A random bicoloured loop: random PL lift with sum-lattice winding and
    a compatible matching lift, twisted by a random intersection vector."""
    n = span.rank
    bps = random_breakpoints(rng)
    vals = [tuple(random_fraction(rng) for _ in range(n)) for _ in bps]
    w = random_sum_vector(span, rng)
    vals[-1] = tuple(vals[0][i] + w[i] for i in range(n))
    lift = PLPath(bps, vals)
    return BicolouredLoop(span, lift, _matching_lift(span, rng, lift))


def _matching_lift(span: LatticeSpan, rng: random.Random, lift: PLPath) -> tuple:
    lw, _ = span.decompose(lift.winding)
    mq = mx.vec_sub(lift.end, lw)
    shift = lattice_combination(rng, span.derived().intersection.generators, 1)
    return mx.vec_add(mq, shift)


def random_bicoloured_bump(span: LatticeSpan, rng: random.Random, interval, contains: str | None) -> BicolouredLoop:
    """A bicoloured loop whose support (Dfn of projections) lies in the given
    bicoloured interval; ``contains`` says which colour point the interval
    holds ('p', 'q', or None for an interval inside one open half)."""
    n = span.rank
    derived = span.derived()
    a, b = Fraction(interval[0]), Fraction(interval[1])
    half = Fraction(1, 2)
    rnd = lambda: tuple(random_fraction(rng) for _ in range(n))
    if contains == "p":
        # a < 1/2 < b: black-identity on [0,a], white-identity on [b,1]
        vb = lattice_combination(rng, derived.pre_b.generators, 1)
        vw = lattice_combination(rng, derived.pre_w.generators, 1)
        bps = sorted({Fraction(0), a, (a + b) / 2, half, b, Fraction(1)})
        vals = [vb if t <= a else vw if t >= b else rnd() for t in bps]
        lift = PLPath(bps, vals)
    elif contains == "q":
        # wrapping interval [a,1] u [0,b] with a > 1/2 > b: the complement
        # [b, a] contains p, so the lift is intersection-constant there
        vmid = lattice_combination(rng, derived.intersection.generators, 1)
        w = random_sum_vector(span, rng, 1)
        v0 = rnd()
        bps = sorted({Fraction(0), b / 2, b, half, a, (a + 1) / 2, Fraction(1)})
        vals = []
        for t in bps:
            if t == 0:
                vals.append(v0)
            elif b <= t <= a:
                vals.append(vmid)
            elif t == 1:
                vals.append(tuple(v0[i] + w[i] for i in range(n)))
            else:
                vals.append(rnd())
        lift = PLPath(bps, vals)
    else:
        # inside one open half: the tail that runs through p must stay in the
        # intersection lattice (the lift is continuous at p and has to be
        # black- and white-identity there)
        if b <= half:
            v0 = lattice_combination(rng, derived.pre_b.generators, 1)
            v1 = lattice_combination(rng, derived.intersection.generators, 1)
        elif a >= half:
            v0 = lattice_combination(rng, derived.intersection.generators, 1)
            v1 = lattice_combination(rng, derived.pre_w.generators, 1)
        else:
            raise ValueError("interval must avoid p when contains is None")
        bps = sorted({Fraction(0), a, (a + b) / 2, b, half, Fraction(1)})
        vals = [v0 if t <= a else v1 if t >= b else rnd() for t in bps]
        lift = PLPath(bps, vals)
    return BicolouredLoop(span, lift, _matching_lift(span, rng, lift))


def random_half_loop(lat: Lattice, rng: random.Random, white: bool) -> PLLoop:
    """A loop over ``lat`` supported in the white half [1/2,1] (or the black
    half [0,1/2]), for the isotony embeddings."""
    lo, hi = (Fraction(1, 2), Fraction(1)) if white else (Fraction(0), Fraction(1, 2))
    n = lat.rank
    inner = set()
    while len(inner) < rng.randint(1, 3):
        inner.add(lo + Fraction(rng.randint(1, 15), 16) * (hi - lo))
    bps = sorted({Fraction(0), Fraction(1), lo, hi} | inner)
    v0 = [rng.randint(-2, 2) for _ in range(n)]
    w = [rng.randint(-MAX_WINDING, MAX_WINDING) for _ in range(n)]
    vals = []
    for t in bps:
        if t <= lo:
            vals.append(tuple(Fraction(x) for x in v0))
        elif t >= hi:
            vals.append(tuple(Fraction(v0[i] + w[i]) for i in range(n)))
        else:
            vals.append(tuple(random_fraction(rng) for _ in range(n)))
    return PLLoop(lat, PLPath(bps, vals))
