"""Seeded randomized identity suites.

Each suite cycles through a battery of exact identities; sample i draws
fresh data from a generator seeded with (seed, suite, i) and checks the
i-th identity of the cycle, so runs are deterministic, all identities get
an even share of the samples, and the first counterexample (lowest sample
index) is stable across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from latloop import matrix as mx
from latloop import randgen as rg
from latloop.angles import RationalAngle
from latloop.bicoloured import (
    BicolouredExtension,
    bicol_reparam,
    bottom_row_map,
    d_prime_cochain,
    delta_class_add,
    delta_class_reduce,
    disjoint_bicoloured_intervals,
    embed_black,
    embed_h,
    embed_white,
    kernel_element,
    standard_loop,
    zero_loop,
)
from latloop.lattice import Lattice
from latloop.loops import (
    LoopExtension,
    PLLoop,
    act_reparam,
    aut_act,
    bilinear_s,
    d_cochain,
    local_triviality_check,
    solve_coboundary,
    support_within,
)
from latloop.span import LatticeSpan


@dataclass
class Report:
    suite: str
    status: str = "pass"
    checks: int = 0
    counterexample: dict | None = None
    payload: dict = field(default_factory=dict)

    def record(self, sample: int, condition: bool, **info) -> bool:
        self.checks += 1
        if not condition and self.status == "pass":
            self.status = "fail"
            self.counterexample = {"seed": sample, **{k: repr(v) for k, v in info.items()}}
        return condition

    def to_json(self) -> dict:
        out = {"suite": self.suite, "status": self.status, "checks": self.checks}
        if self.payload:
            out["payload"] = self.payload
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _run_battery(report: Report, battery, samples: int, seed: int) -> Report:
    for i in range(samples):
        rng = rg.rng_for(seed, f"{report.suite}:{i}")
        battery[i % len(battery)](report, rng, i)
        if report.status != "pass":
            break
    return report


# ---------------------------------------------------------------------------
# unicoloured suites


def verify_cocycle(lat: Lattice, samples: int, seed: int) -> Report:
    """Cocycle relation, normalization, lift independence, inverses."""
    report = Report("cocycle")
    ext = LoopExtension(lat)
    unit = PLLoop.constant(lat, [0] * lat.rank)

    def relation(rep, rng, i):
        g1, g2, g3 = (rg.random_loop(lat, rng) for _ in range(3))
        lhs = ext.cocycle(g1, g2) + ext.cocycle(g1 + g2, g3)
        rhs = ext.cocycle(g1, g2 + g3) + ext.cocycle(g2, g3)
        rep.record(i, lhs == rhs, kind="cocycle relation", g1=g1, g2=g2, g3=g3)

    def normalized(rep, rng, i):
        g = rg.random_loop(lat, rng)
        rep.record(i, ext.cocycle(g, unit).is_zero and ext.cocycle(unit, g).is_zero,
                   kind="normalization", g=g)

    def lift_independence(rep, rng, i):
        g1, g2 = rg.random_loop(lat, rng), rg.random_loop(lat, rng)
        shift = [rng.randint(-2, 2) for _ in range(lat.rank)]
        shifted = PLLoop(lat, g2.lift.shift_values(shift))
        rep.record(i, ext.cocycle(g1, shifted) == ext.cocycle(g1, g2)
                   and ext.cocycle(shifted, g1) == ext.cocycle(g2, g1),
                   kind="lift independence", g1=g1, g2=g2, shift=shift)

    def inverses(rep, rng, i):
        g = rg.random_loop(lat, rng)
        e = ext.element(g, RationalAngle(Fraction(i % 7, 7)))
        rep.record(i, (e * e.inverse()).same_element(ext.unit()), kind="inverse", g=g)

    return _run_battery(report, [relation, normalized, lift_independence, inverses], samples, seed)


def verify_commutator(lat: Lattice, samples: int, seed: int) -> Report:
    """Commutator closed form, skewness, the conjugation character."""
    report = Report("commutator")
    ext = LoopExtension(lat)

    def closed_form(rep, rng, i):
        g, r = rg.random_loop(lat, rng), rg.random_loop(lat, rng)
        direct, closed = ext.commutator(g, r)
        rep.record(i, direct == closed, kind="closed form", g=g, r=r,
                   direct=direct, closed=closed)

    def skewness(rep, rng, i):
        g, r = rg.random_loop(lat, rng), rg.random_loop(lat, rng)
        d1, _ = ext.commutator(g, r)
        d2, _ = ext.commutator(r, g)
        rep.record(i, (d1 + d2).is_zero, kind="skewness", g=g, r=r)

    def conjugation_character(rep, rng, i):
        # c(rho, gamma_lam) c(gamma_lam, rho)^{-1} = exp(-2 pi i <lam, avg eta>)
        r = rg.random_loop(lat, rng)
        rho0 = r - PLLoop.standard(lat, r.winding)
        lam = [rng.randint(-2, 2) for _ in range(lat.rank)]
        gam = PLLoop.standard(lat, lam)
        char, _ = ext.commutator(rho0, gam)
        expected = RationalAngle(-Fraction(mx.form_value(lat.gram, lam, rho0.lift.integral())))
        rep.record(i, char == expected, kind="conjugation character", lam=lam, rho=rho0)

    battery = [closed_form, skewness]
    if lat.is_even:
        battery.append(conjugation_character)
    return _run_battery(report, battery, samples, seed)


def verify_disjoint(lat: Lattice, samples: int, seed: int) -> Report:
    """Disjointly supported pairs commute; on odd lattices the commutator is
    the graded sign p(g) p(r) / 2."""
    report = Report("disjoint")
    ext = LoopExtension(lat)
    windows = [
        ((Fraction(1, 12), Fraction(4, 12)), (Fraction(5, 12), Fraction(11, 12)), False),
        ((Fraction(2, 12), Fraction(5, 12)), (Fraction(7, 12), Fraction(1, 12)), True),
        ((Fraction(6, 12), Fraction(9, 12)), (Fraction(10, 12), Fraction(5, 12)), True),
    ]

    def disjoint_pair(rep, rng, i):
        w1, w2, wraps = windows[i % len(windows)]
        g = rg.random_bump_loop(lat, rng, w1)
        r = rg.random_bump_loop(lat, rng, w2, wraps=wraps)
        if not rep.record(i, support_within(g.support(), w1)
                          and support_within(r.support(), w2, wraps=wraps),
                          kind="generator produced bad support", g=g, r=r):
            return
        direct, closed = ext.commutator(g, r)
        target = RationalAngle(Fraction(ext.parity(g) * ext.parity(r), 2)) if ext.graded else RationalAngle(0)
        rep.record(i, direct == closed and direct == target,
                   kind="disjoint commutator", g=g, r=r, value=direct)

    return _run_battery(report, [disjoint_pair], samples, seed)


def verify_graded(lat: Lattice, samples: int, seed: int) -> Report:
    """The graded law on an odd lattice."""
    if lat.is_even:
        raise ValueError("the graded suite needs an odd lattice")
    report = verify_disjoint(lat, samples, seed)
    report.suite = "graded"
    return report


def verify_diffaction(lat: Lattice, samples: int, seed: int) -> Report:
    """d-cochain laws, the action property, local triviality."""
    report = Report("diffaction")
    ext = LoopExtension(lat)

    def composition_law(rep, rng, i):
        g = rg.random_loop(lat, rng)
        p1, p2 = rg.random_reparam(rng), rg.random_reparam(rng)
        comp = p2.compose(p1)
        g1 = act_reparam(ext.element(g), p1).loop
        rep.record(i, d_cochain(lat, comp, g) == d_cochain(lat, p2, g1) + d_cochain(lat, p1, g),
                   kind="d composition law", p1=p1.values, p2=p2.values, g=g)

    def cocycle_compat(rep, rng, i):
        g, r = rg.random_loop(lat, rng), rg.random_loop(lat, rng)
        p = rg.random_reparam(rng)
        g1 = act_reparam(ext.element(g), p).loop
        r1 = act_reparam(ext.element(r), p).loop
        lhs = d_cochain(lat, p, g + r) + ext.cocycle(g, r)
        rhs = d_cochain(lat, p, g) + d_cochain(lat, p, r) + ext.cocycle(g1, r1)
        rep.record(i, lhs == rhs, kind="d cocycle compatibility", g=g, r=r)

    def action_property(rep, rng, i):
        g = rg.random_loop(lat, rng)
        p1, p2 = rg.random_reparam(rng), rg.random_reparam(rng)
        e = ext.element(g, RationalAngle(Fraction(i % 5, 5)))
        rep.record(i, act_reparam(e, p2.compose(p1)).same_element(
            act_reparam(act_reparam(e, p1), p2)), kind="action property", g=g)

    def local_action(rep, rng, i):
        if i % 2 == 0:
            phi = rg.random_bump_reparam(rng, (Fraction(1, 16), Fraction(5, 16)))
            loc = rg.random_bump_loop(lat, rng, (Fraction(6, 16), Fraction(15, 16)))
        else:
            phi = rg.random_bump_reparam(rng, (Fraction(13, 16), Fraction(3, 16)))
            loc = rg.random_bump_loop(lat, rng, (Fraction(4, 16), Fraction(12, 16)))
        ok, angle = local_triviality_check(ext, phi, loc)
        rep.record(i, ok and angle.is_zero, kind="local triviality", phi=phi.values, loop=loc)

    return _run_battery(report, [composition_law, cocycle_compat, action_property, local_action],
                        samples, seed)


def _sample_isometries(lat: Lattice) -> list:
    """-id always; plus basis permutations preserving the Gram matrix, found
    by a bounded search."""
    n = lat.rank
    isoms = [[[-int(i == j) for j in range(n)] for i in range(n)]]
    if n <= 6:
        from itertools import permutations

        for perm in permutations(range(n)):
            if all(lat.gram[perm[i]][perm[j]] == lat.gram[i][j] for i in range(n) for j in range(n)):
                mat = [[int(perm[j] == i) for j in range(n)] for i in range(n)]
                if mat != mx.identity(n):
                    isoms.append(mat)
            if len(isoms) >= 4:
                break
    return isoms


def verify_autaction(lat: Lattice, samples: int, seed: int) -> Report:
    """Lifted isometries: coboundary identity, multiplicativity, commutation
    with the reparametrization action."""
    report = Report("autaction")
    ext = LoopExtension(lat)
    isoms = _sample_isometries(lat)
    cochains = [(g, solve_coboundary(ext, g)) for g in isoms]
    report.payload["isometries"] = len(isoms)

    def coboundary(rep, rng, i):
        g, e = cochains[i % len(cochains)]
        lam = tuple(rng.randint(-3, 3) for _ in range(lat.rank))
        mu = tuple(rng.randint(-3, 3) for _ in range(lat.rank))
        r_val = ext.epsilon(mx.mat_vec(g, lam), mx.mat_vec(g, mu)) - ext.epsilon(lam, mu)
        rep.record(i, e(mx.vec_add(lam, mu)) == e(lam) + e(mu) + r_val,
                   kind="coboundary identity", g=g, lam=lam, mu=mu)

    def multiplicative(rep, rng, i):
        g, e = cochains[i % len(cochains)]
        x, y = rg.random_loop(lat, rng), rg.random_loop(lat, rng)
        ex = ext.element(x, RationalAngle(Fraction(i % 3, 3)))
        ey = ext.element(y)
        rep.record(i, aut_act(ex * ey, g, e).same_element(aut_act(ex, g, e) * aut_act(ey, g, e)),
                   kind="multiplicative", g=g, x=x, y=y)

    def commutes_with_reparam(rep, rng, i):
        g, e = cochains[i % len(cochains)]
        x = rg.random_loop(lat, rng)
        p = rg.random_reparam(rng)
        ex = ext.element(x, RationalAngle(Fraction(i % 3, 3)))
        rep.record(i, aut_act(act_reparam(ex, p), g, e).same_element(
            act_reparam(aut_act(ex, g, e), p)), kind="commutes with reparametrization", g=g, x=x)

    return _run_battery(report, [coboundary, multiplicative, commutes_with_reparam], samples, seed)


# ---------------------------------------------------------------------------
# bicoloured suites


def verify_bicoloured(span: LatticeSpan, samples: int, seed: int) -> Report:
    """Cocycle identity, the bicoloured-fashion formula, commutator closed
    form, d' laws, and on identity spans the unicoloured reduction."""
    report = Report("bicoloured")
    ext = BicolouredExtension(span)
    n = span.derived().level
    is_identity_span = (
        span.white == span.gamma
        and span.black == span.gamma
        and span.embed_w == tuple(tuple(r) for r in mx.identity(span.rank))
    )
    uext = LoopExtension(span.gamma) if is_identity_span else None

    def relation(rep, rng, i):
        x, y, z = (rg.random_bicoloured(span, rng) for _ in range(3))
        lhs = ext.cocycle(x, y) + ext.cocycle(x + y, z)
        rhs = ext.cocycle(x, y + z) + ext.cocycle(y, z)
        rep.record(i, lhs == rhs, kind="cocycle relation", x=x, y=y, z=z)

    def two_routes(rep, rng, i):
        x, y = rg.random_bicoloured(span, rng), rg.random_bicoloured(span, rng)
        rep.record(i, ext.cocycle(x, y) == ext.cocycle_via_sides(x, y),
                   kind="bicoloured-fashion formula", x=x, y=y)

    def commutator_closed(rep, rng, i):
        x, y = rg.random_bicoloured(span, rng), rg.random_bicoloured(span, rng)
        direct, closed = ext.commutator(x, y)
        rep.record(i, direct == closed, kind="commutator closed form", x=x, y=y)

    def d_prime_laws(rep, rng, i):
        x = rg.random_bicoloured(span, rng)
        p1, p2 = rg.random_reparam(rng, n), rg.random_reparam(rng, n)
        comp = p2.compose(p1)
        x1 = bicol_reparam(ext.element(x), p1).loop
        lhs = d_prime_cochain(span, comp, x.lift)
        rhs = d_prime_cochain(span, p2, x1.lift) + d_prime_cochain(span, p1, x.lift)
        rep.record(i, lhs == rhs, kind="d' composition law", x=x)

    def d_prime_compat(rep, rng, i):
        x, y = rg.random_bicoloured(span, rng), rg.random_bicoloured(span, rng)
        p = rg.random_reparam(rng, n)
        x1 = bicol_reparam(ext.element(x), p).loop
        y1 = bicol_reparam(ext.element(y), p).loop
        lhs = d_prime_cochain(span, p, (x + y).lift) + ext.cocycle(x, y)
        rhs = d_prime_cochain(span, p, x.lift) + d_prime_cochain(span, p, y.lift) + ext.cocycle(x1, y1)
        rep.record(i, lhs == rhs, kind="d' cocycle compatibility", x=x, y=y)

    def mod_n(rep, rng, i):
        x = rg.random_bicoloured(span, rng)
        p = rg.random_reparam(rng, n)
        el = ext.element(x, RationalAngle(Fraction(i % 7, 7)))
        rep.record(i, bicol_reparam(el, p.shifted(n)).same_element(bicol_reparam(el, p)),
                   kind="d' well-defined mod n", x=x)

    battery = [relation, two_routes, commutator_closed, d_prime_laws, d_prime_compat, mod_n]

    if uext is not None:

        def reduction(rep, rng, i):
            g, r = rg.random_loop(span.gamma, rng), rg.random_loop(span.gamma, rng)
            rep.record(i, ext.cocycle(embed_h(span, g), embed_h(span, r)) == uext.cocycle(g, r),
                       kind="unicoloured reduction", g=g, r=r)

        def equivariance(rep, rng, i):
            g = rg.random_loop(span.gamma, rng)
            p = rg.random_reparam(rng, n)
            acted = act_reparam(uext.element(g), p)
            via_bi = bicol_reparam(ext.element(embed_h(span, g)), p)
            rep.record(i, via_bi.same_element(ext.element(embed_h(span, acted.loop), acted.phase)),
                       kind="Bi equivariance", g=g)

        battery += [reduction, equivariance]

    return _run_battery(report, battery, samples, seed)


def verify_disjoint_bicoloured(span: LatticeSpan, samples: int, seed: int) -> Report:
    """Pairs supported in disjoint bicoloured intervals commute exactly,
    including pairs whose intervals contain p and q respectively."""
    report = Report("disjoint")
    ext = BicolouredExtension(span)
    cases = [
        ((Fraction(3, 8), Fraction(5, 8)), "p", (Fraction(7, 8), Fraction(1, 8)), "q"),
        ((Fraction(1, 16), Fraction(5, 16)), None, (Fraction(9, 16), Fraction(13, 16)), None),
        ((Fraction(1, 16), Fraction(3, 16)), None, (Fraction(5, 16), Fraction(7, 16)), None),
        ((Fraction(7, 8), Fraction(1, 8)), "q", (Fraction(5, 16), Fraction(7, 16)), None),
    ]

    def disjoint_pair(rep, rng, i):
        w1, c1, w2, c2 = cases[i % len(cases)]
        g = rg.random_bicoloured_bump(span, rng, w1, c1)
        r = rg.random_bicoloured_bump(span, rng, w2, c2)
        if not rep.record(i, disjoint_bicoloured_intervals(g.support(), r.support()),
                          kind="generator produced non-disjoint supports",
                          sg=g.support(), sr=r.support()):
            return
        direct, closed = ext.commutator(g, r)
        rep.record(i, direct == closed and direct.is_zero,
                   kind="disjoint bicoloured commutator", value=direct,
                   sg=g.support(), sr=r.support())

    return _run_battery(report, [disjoint_pair], samples, seed)


def verify_pth(span: LatticeSpan, samples: int, seed: int) -> Report:
    """Pth, Delta, Delta', the standard section, kernel elements and the
    white/black isotony embeddings."""
    from latloop.glue import quotient_presentation
    from latloop.lattice import full_lattice

    report = Report("pth")
    ext = BicolouredExtension(span)
    derived = span.derived()
    kernel_pres = quotient_presentation(derived.intersection, full_lattice(span.gamma))
    report.payload["kernelOrder"] = kernel_pres.order

    def homomorphisms(rep, rng, i):
        x, y = rg.random_bicoloured(span, rng), rg.random_bicoloured(span, rng)
        ok = (
            (x + y).pth() == x.pth() + y.pth()
            and (x + y).delta_prime() == mx.vec_add(x.delta_prime(), y.delta_prime())
            and (x + y).delta_class() == delta_class_add(span, x.delta_class(), y.delta_class())
            and x.delta_prime() == bottom_row_map(span, x.delta_class())
        )
        rep.record(i, ok, kind="Pth/Delta/Delta' homomorphisms", x=x, y=y)

    def section(rep, rng, i):
        lw = tuple(rng.randint(-2, 2) for _ in range(span.rank))
        lb = tuple(rng.randint(-2, 2) for _ in range(span.rank))
        std = standard_loop(span, lw, lb)
        rep.record(i, std.delta_class() == delta_class_reduce(span, lw + lb),
                   kind="section of Delta", lw=lw, lb=lb)

    def kernel(rep, rng, i):
        nu = rg.lattice_combination(rng, derived.intersection.generators, 1)
        ke = kernel_element(span, nu)
        in_gamma = all(Fraction(t).denominator == 1 for t in nu)
        rep.record(i, ke.same_loop(zero_loop(span)) == in_gamma and ke.support() == [],
                   kind="Pth kernel", nu=nu)

    def white_isotony(rep, rng, i):
        gw = rg.random_half_loop(span.white, rng, True)
        rw = rg.random_half_loop(span.white, rng, True)
        inv_w = span.inv_embed_w()
        s_w = bilinear_s(span.white.gram, gw.lift, rw.lift)
        expected = span.epsilon(mx.mat_vec(inv_w, gw.winding), mx.mat_vec(inv_w, rw.winding)) + RationalAngle(s_w)
        rep.record(i, ext.cocycle(embed_white(span, gw), embed_white(span, rw)) == expected,
                   kind="white isotony", gw=gw, rw=rw)

    def black_isotony(rep, rng, i):
        gb = rg.random_half_loop(span.black, rng, False)
        rb = rg.random_half_loop(span.black, rng, False)
        inv_b = span.inv_embed_b()
        s_b = bilinear_s(span.black.gram, gb.lift, rb.lift)
        expected = span.epsilon(mx.mat_vec(inv_b, gb.winding), mx.mat_vec(inv_b, rb.winding)) + RationalAngle(s_b)
        rep.record(i, ext.cocycle(embed_black(span, gb), embed_black(span, rb)) == expected,
                   kind="black isotony", gb=gb, rb=rb)

    return _run_battery(report, [homomorphisms, section, kernel, white_isotony, black_isotony],
                        samples, seed)


# ---------------------------------------------------------------------------
# fock suite


def verify_fock(dim: int, degree: int, modes: int, samples: int, seed: int, tol: float) -> Report:
    import cmath
    import math

    from latloop import fock
    from latloop.series import eta_inverse_power

    report = Report("fock")
    worst = [0.0]
    rng = rg.rng_for(seed, "fock")
    gram = mx.identity(dim)

    def rand_loop():
        return fock.FourierLoop(
            dim,
            {
                k: [complex(rng.gauss(0, 0.25), rng.gauss(0, 0.25)) for _ in range(dim)]
                for k in range(1, modes + 1)
            },
        )

    def rand_vec(scale=0.3):
        return tuple(complex(rng.gauss(0, scale), rng.gauss(0, scale)) for _ in range(dim))

    for i in range(samples):
        a, b = rand_loop(), rand_loop()
        s_ab = fock.fourier_s(a, b, gram)
        s_ba = fock.fourier_s(b, a, gram)
        worst[0] = max(worst[0], abs(s_ab + s_ba), abs(s_ab.imag))
        if not report.record(i, abs(s_ab + s_ba) < 1e-12, kind="S skew"):
            break
        jj = a.apply_j().apply_j()
        gap_j = max(abs(x + y) for k in a.modes for x, y in zip(jj.mode(k), a.mode(k)))
        report.record(i, gap_j == 0.0, kind="J squared")
        ii = fock.inner_j(a, a, gram)
        report.record(i, ii.real > 0 and abs(ii.imag) < 1e-10, kind="inner_j positivity")
        plus = {k: a.mode(k) for k in a.modes}
        minus = {-k: a.mode(-k) for k in a.modes}
        plus_b = {k: b.mode(k) for k in b.modes}
        minus_b = {-k: b.mode(-k) for k in b.modes}
        report.record(i, fock.fourier_s_modes(plus, plus_b, gram) == 0, kind="V+ isotropic")
        split = fock.fourier_s_modes(plus, minus_b, gram) + fock.fourier_s_modes(minus, plus_b, gram)
        worst[0] = max(worst[0], abs(split - s_ab))
        report.record(i, abs(split - s_ab) < 1e-12, kind="S frequency split")

        xi, eta = rand_vec(0.35), rand_vec(0.35)
        got = fock.coherent_inner(xi, eta, degree)
        want = cmath.exp(sum(p * q.conjugate() for p, q in zip(xi, eta)))
        bound = fock.coherent_tail_bound(xi, eta, degree) + tol
        worst[0] = max(worst[0], abs(got - want))
        if not report.record(i, abs(got - want) <= bound, kind="coherent inner", got=got, want=want):
            break

        probes = [fock.combo((1.0, xi)), fock.combo((1.0, eta)),
                  fock.combo((1.0, tuple(0j for _ in range(dim))))]
        w_xi = rand_vec(0.25)
        moved = [fock.weyl_apply(w_xi, 1.0, p) for p in probes]
        for p in range(len(probes)):
            for q in range(p, len(probes)):
                gap = abs(probes[p].inner(probes[q]) - moved[p].inner(moved[q]))
                worst[0] = max(worst[0], gap)
                report.record(i, gap <= tol, kind="Weyl unitarity")
        mv = moved[2].to_fock(degree)
        norm_gap = abs(fock.fock_inner(mv, mv) - 1.0)
        worst[0] = max(worst[0], norm_gap)
        report.record(i, norm_gap <= tol, kind="Weyl vacuum norm (truncated)", gap=norm_gap)

        comp = fock.weyl_apply(w_xi, 1.0, fock.weyl_apply(xi, 1.0, probes[2]))
        s_val = fock.heisenberg_s(w_xi, xi)
        direct = fock.weyl_apply(tuple(p + q for p, q in zip(w_xi, xi)),
                                 cmath.exp(-2j * math.pi * s_val), probes[2])
        gap = abs(comp.inner(comp) + direct.inner(direct) - comp.inner(direct) - direct.inner(comp))
        worst[0] = max(worst[0], gap)
        if not report.record(i, gap <= tol, kind="Weyl composition", gap=gap):
            break

        trip = [rand_vec() for _ in range(3)]
        h1 = fock.heisenberg_multiply(fock.heisenberg_multiply((trip[0], 1.0), (trip[1], 1.0)), (trip[2], 1.0))
        h2 = fock.heisenberg_multiply((trip[0], 1.0), fock.heisenberg_multiply((trip[1], 1.0), (trip[2], 1.0)))
        gap_h = abs(h1[1] - h2[1]) + max(abs(x - y) for x, y in zip(h1[0], h2[0]))
        worst[0] = max(worst[0], gap_h)
        report.record(i, gap_h < 1e-12, kind="Heisenberg associativity")

        theta = rng.random()
        gap_rot = rotation_intertwining_gap(a, b, rand_loop(), theta, gram)
        worst[0] = max(worst[0], gap_rot)
        report.record(i, gap_rot <= tol, kind="rotation intertwining", gap=gap_rot)

    for d in range(1, min(dim, 3) + 1):
        report.record(-1, fock.energy_dims(d, 10) == list(eta_inverse_power(d, 10).coeffs),
                      kind="energy dims", d=d)
    report.payload["worstDeviation"] = worst[0]
    return report


def rotation_intertwining_gap(xi, kappa, mu, theta: float, gram) -> float:
    """| <R W(xi,1) R* e^kappa, e^mu> - <W(rot_theta xi, 1) e^kappa, e^mu> |
    through exact coherent pairings in the loop geometry (R* rotates the
    coherent arguments by -theta)."""
    from latloop import fock

    inner = lambda u, v: fock.inner_j(u, v, gram)
    lhs = fock.weyl_pair_coherent(inner, xi, kappa.rotated(-theta), mu.rotated(-theta))
    rhs = fock.weyl_pair_coherent(inner, xi.rotated(theta), kappa, mu)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# registry

UNICOLOURED_SUITES: dict[str, Callable] = {
    "cocycle": verify_cocycle,
    "commutator": verify_commutator,
    "disjoint": verify_disjoint,
    "graded": verify_graded,
    "diffaction": verify_diffaction,
    "autaction": verify_autaction,
}

BICOLOURED_SUITES: dict[str, Callable] = {
    "bicoloured": verify_bicoloured,
    "disjoint": verify_disjoint_bicoloured,
    "pth": verify_pth,
}
