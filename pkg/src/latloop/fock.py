"""Floating-point verification layer: Fourier loops, Fock spaces, Weyl ops.

Everything here is numerical by design (double precision), in contrast to
the exact Q/Z arithmetic elsewhere: the objects are analytic.  Assertions
about coherent vectors carry explicit truncation-tail bounds, so test
tolerances are principled rather than magic.

Conventions: for loops xi(t) = sum_k xi_k e^{2 pi i k t} with xi_{-k} the
conjugate of xi_k, the skew form is S(xi, eta) = pi i sum_k k <xi_k,
eta_{-k}> (complex-bilinear form, no conjugation); J scales mode k by
sgn(k) i; the Hermitian product is <xi, eta>_J = 2 pi (S(xi, J eta) -
i S(xi, eta)); the Heisenberg cocycle is exp(-2 pi i S).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from typing import Iterable, Mapping, Sequence

from latloop.errors import DegreeCapMismatch

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Fourier loops and the inner-product geometry of the mode space


class FourierLoop:
    """A real loop with finitely many Fourier modes and no zero mode.

    ``modes`` maps k > 0 to the complex coefficient vector xi_k; the
    negative modes are the conjugates, so real-valuedness is structural.
    """

    def __init__(self, dim: int, modes: Mapping[int, Sequence[complex]]):
        self.dim = dim
        cleaned: dict[int, tuple[complex, ...]] = {}
        for k, vec in modes.items():
            if k == 0:
                raise ValueError("the zero mode must vanish")
            vec = tuple(complex(x) for x in vec)
            if len(vec) != dim:
                raise ValueError("mode vector of wrong dimension")
            if k < 0:
                k, vec = -k, tuple(x.conjugate() for x in vec)
            if any(abs(x) > 1e-300 for x in vec):
                cleaned[k] = vec
        self.modes = cleaned

    def mode(self, k: int) -> tuple[complex, ...]:
        if k > 0:
            return self.modes.get(k, (0j,) * self.dim)
        if k < 0:
            return tuple(x.conjugate() for x in self.modes.get(-k, (0j,) * self.dim))
        return (0j,) * self.dim

    def scaled(self, c: float) -> "FourierLoop":
        return FourierLoop(self.dim, {k: tuple(c * x for x in v) for k, v in self.modes.items()})

    def __add__(self, other: "FourierLoop") -> "FourierLoop":
        keys = set(self.modes) | set(other.modes)
        return FourierLoop(
            self.dim,
            {k: tuple(a + b for a, b in zip(self.mode(k), other.mode(k))) for k in keys},
        )

    def __neg__(self) -> "FourierLoop":
        return self.scaled(-1.0)

    def rotated(self, theta: float) -> "FourierLoop":
        """The rotation action: mode k picks up e^{-2 pi i k theta}."""
        return FourierLoop(
            self.dim,
            {
                k: tuple(cmath.exp(-2j * math.pi * k * theta) * x for x in v)
                for k, v in self.modes.items()
            },
        )

    def apply_j(self) -> "FourierLoop":
        """J: multiply mode k by sgn(k) i; stored positive modes get +i."""
        return FourierLoop(self.dim, {k: tuple(1j * x for x in v) for k, v in self.modes.items()})


def _bilinear(gram, u: Sequence[complex], v: Sequence[complex]) -> complex:
    return sum(
        complex(u[i]) * float(gram[i][j]) * complex(v[j])
        for i in range(len(u))
        for j in range(len(v))
    )


def fourier_s(xi: FourierLoop, eta: FourierLoop, gram) -> complex:
    """S(xi, eta) = pi i sum_k k <xi_k, eta_{-k}> (finite sum)."""
    if xi.dim != eta.dim:
        raise ValueError("dimension mismatch")
    total = 0j
    for k in set(xi.modes) | set(eta.modes):
        term = _bilinear(gram, xi.mode(k), eta.mode(-k))
        total += k * term
        term = _bilinear(gram, xi.mode(-k), eta.mode(k))
        total += -k * term
    return 1j * math.pi * total


def inner_j(xi: FourierLoop, eta: FourierLoop, gram) -> complex:
    """<xi, eta>_J = 2 pi (S(xi, J eta) - i S(xi, eta))."""
    return TWO_PI * (fourier_s(xi, eta.apply_j(), gram) - 1j * fourier_s(xi, eta, gram))


def fourier_s_modes(modes1: Mapping[int, Sequence[complex]], modes2: Mapping[int, Sequence[complex]], gram) -> complex:
    """S on raw mode dictionaries (no reality constraint): the complex
    bilinear extension, for checking the isotropy of the frequency halves."""
    total = 0j
    for k, vec in modes1.items():
        other = modes2.get(-k)
        if other is not None:
            total += k * _bilinear(gram, vec, other)
    return 1j * math.pi * total


def weyl_pair_coherent(inner, xi, kappa, mu) -> complex:
    """<W(xi, 1) e^kappa, e^mu> = exp(-inner(xi,xi)/2 - inner(kappa,xi)
    + inner(kappa + xi, mu)), for any Hermitian product ``inner`` and any
    vector type supporting +."""
    return cmath.exp(-inner(xi, xi) / 2 - inner(kappa, xi) + inner(kappa + xi, mu))


# ---------------------------------------------------------------------------
# truncated bosonic Fock space over an orthonormal basis of C^d


class FockVector:
    """A vector of the truncated symmetric algebra over C^d.

    Components live per degree, keyed by multiplicity tuples over the
    orthonormal basis; <x^a, x^b> = delta_{ab} prod_i a_i!.
    """

    def __init__(self, dim: int, cap: int, components: Mapping[tuple[int, ...], complex] | None = None):
        self.dim = dim
        self.cap = cap
        self.components: dict[tuple[int, ...], complex] = {}
        for key, amp in (components or {}).items():
            if len(key) != dim or sum(key) > cap:
                continue
            if amp != 0:
                self.components[tuple(key)] = complex(amp)

    def __add__(self, other: "FockVector") -> "FockVector":
        if self.dim != other.dim or self.cap != other.cap:
            raise DegreeCapMismatch("vectors from different truncations")
        out = dict(self.components)
        for key, amp in other.components.items():
            out[key] = out.get(key, 0j) + amp
        return FockVector(self.dim, self.cap, out)

    def scaled(self, c: complex) -> "FockVector":
        return FockVector(self.dim, self.cap, {k: c * v for k, v in self.components.items()})


def _factorial_product(key: tuple[int, ...]) -> float:
    out = 1.0
    for m in key:
        out *= math.factorial(m)
    return out


def fock_inner(u: FockVector, v: FockVector) -> complex:
    """Hermitian inner product: degreewise, orthogonal monomials, with the
    multiplicity factorials of the permanent formula."""
    if u.dim != v.dim or u.cap != v.cap:
        raise DegreeCapMismatch("vectors from different truncations")
    total = 0j
    for key, amp in u.components.items():
        other = v.components.get(key)
        if other is not None:
            total += amp * other.conjugate() * _factorial_product(key)
    return total


def monomial_inner(vs: Sequence[Sequence[complex]], ws: Sequence[Sequence[complex]]) -> complex:
    """<v_1 ... v_k, w_1 ... w_k> by the permanent sum over S_k: the
    independent oracle for the multiplicity-factorial formula."""
    if len(vs) != len(ws):
        return 0j
    k = len(vs)
    total = 0j
    for sigma in permutations(range(k)):
        prod = 1 + 0j
        for i in range(k):
            prod *= _hermitian(vs[i], ws[sigma[i]])
        total += prod
    return total


def _hermitian(u: Sequence[complex], v: Sequence[complex]) -> complex:
    return sum(complex(a) * complex(b).conjugate() for a, b in zip(u, v))


def coherent(xi: Sequence[complex], cap: int) -> FockVector:
    """e^xi truncated at total degree cap, over the orthonormal basis."""
    dim = len(xi)
    comps: dict[tuple[int, ...], complex] = {}
    for degree in range(cap + 1):
        for combo in combinations_with_replacement(range(dim), degree):
            key = [0] * dim
            for i in combo:
                key[i] += 1
            amp = 1 + 0j
            for i, m in enumerate(key):
                amp *= complex(xi[i]) ** m / math.factorial(m)
            if amp != 0:
                comps[tuple(key)] = amp
    return FockVector(dim, cap, comps)


def coherent_inner(xi: Sequence[complex], eta: Sequence[complex], cap: int) -> complex:
    """<e^xi, e^eta> from the truncated expansions; approximates
    exp(<xi,eta>) with tail bound |<xi,eta>|^{cap+1} e^{|<xi,eta>|}/(cap+1)!."""
    return fock_inner(coherent(xi, cap), coherent(eta, cap))


def coherent_tail_bound(xi: Sequence[complex], eta: Sequence[complex], cap: int) -> float:
    z = abs(_hermitian(xi, eta))
    return z ** (cap + 1) * math.exp(z) / math.factorial(cap + 1)


# ---------------------------------------------------------------------------
# Heisenberg group and the Weyl representation on coherent combinations


def heisenberg_s(xi: Sequence[complex], eta: Sequence[complex]) -> float:
    """The skew form recovered from the Hermitian product:
    S = -Im <xi, eta> / (2 pi)."""
    return -_hermitian(xi, eta).imag / TWO_PI


def heisenberg_multiply(a, b):
    """(xi, z)(eta, w) = (xi + eta, z w exp(-2 pi i S(xi, eta)))."""
    (xi, z), (eta, w) = a, b
    phase = z * w * cmath.exp(-2j * math.pi * heisenberg_s(xi, eta))
    return tuple(complex(x) + complex(y) for x, y in zip(xi, eta)), phase


@dataclass(frozen=True)
class CoherentCombo:
    """A finite combination sum_i c_i e^{kappa_i} of coherent vectors."""

    dim: int
    terms: tuple[tuple[complex, tuple[complex, ...]], ...]

    def to_fock(self, cap: int) -> FockVector:
        out = FockVector(self.dim, cap)
        for c, kappa in self.terms:
            out = out + coherent(kappa, cap).scaled(c)
        return out

    def inner(self, other: "CoherentCombo") -> complex:
        """Exact (untruncated) inner product via <e^a, e^b> = exp <a, b>."""
        total = 0j
        for c, kappa in self.terms:
            for d, mu in other.terms:
                total += c * d.conjugate() * cmath.exp(_hermitian(kappa, mu))
        return total


def combo(*terms) -> CoherentCombo:
    terms = tuple((complex(c), tuple(complex(x) for x in kappa)) for c, kappa in terms)
    dim = len(terms[0][1])
    return CoherentCombo(dim, terms)


def weyl_apply(xi: Sequence[complex], z: complex, v: CoherentCombo) -> CoherentCombo:
    """W(xi, z) e^kappa = z exp(-<xi,xi>/2 - <kappa,xi>) e^{kappa + xi},
    extended linearly over the combination."""
    xi = tuple(complex(x) for x in xi)
    half = _hermitian(xi, xi) / 2
    out = []
    for c, kappa in v.terms:
        factor = complex(z) * cmath.exp(-half - _hermitian(kappa, xi))
        out.append((c * factor, tuple(a + b for a, b in zip(kappa, xi))))
    return CoherentCombo(v.dim, tuple(out))


def energy_dims(dim: int, cap: int) -> list[int]:
    """dim of the k-th rotation eigenspace of the mode Fock space: the number
    of dim-coloured partitions of k, counted by direct enumeration of
    multisets of (frequency, colour) parts ordered decreasingly."""

    def count(remaining: int, k_max: int, c_max: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for k in range(min(remaining, k_max), 0, -1):
            c_start = c_max if k == k_max else dim - 1
            for c in range(c_start, -1, -1):
                total += count(remaining - k, k, c)
        return total

    return [count(k, k, dim - 1) for k in range(cap + 1)]
