"""Integral and rational lattices as Gram-matrix objects.

A :class:`Lattice` is a free Z-module of finite rank with a non-degenerate
symmetric integer form, encoded by the Gram matrix <e_i, e_j> in a fixed
basis.  A :class:`RationalSublattice` is a full-rank lattice inside a fixed
ambient rational inner-product space, given by a generator matrix; it
houses dual lattices, sums and intersections of lattices sharing an
ambient space, and translated cosets.

The catalog (`builtin`) provides the A/D/E series in their classical basis
conventions, the hyperbolic plane, and Z^n with the standard form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from latloop import matrix as mx
from latloop.enumeration import enumerate_shifted
from latloop.errors import BadRank, Degenerate, NotPositiveDefinite, NotSymmetric, UnknownName


@dataclass(frozen=True)
class VectorWithNorm:
    coords: tuple
    norm: Fraction


class Lattice:
    """A non-degenerate integral lattice given by its Gram matrix."""

    def __init__(self, gram: Sequence[Sequence[int]], name: str | None = None):
        gram = tuple(tuple(int(x) for x in row) for row in gram)
        if not gram or not mx.is_symmetric(gram):
            raise NotSymmetric("Gram matrix must be square and symmetric")
        self.gram = gram
        self.rank = len(gram)
        self.name = name
        self.det = mx.det(gram)
        if self.det == 0:
            raise Degenerate("Gram matrix is singular")
        minors = mx.leading_principal_minors(gram)
        self.is_positive_definite = all(m > 0 for m in minors)
        self.is_negative_definite = all(((-1) ** k) * m > 0 for k, m in enumerate(minors, 1))
        self.is_even = all(gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def disc(self) -> int:
        return abs(int(self.det))

    def inner(self, u: Sequence, v: Sequence):
        return mx.form_value(self.gram, u, v)

    def norm(self, v: Sequence):
        return self.inner(v, v)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self) -> int:
        return hash(self.gram)

    def __repr__(self) -> str:
        label = self.name or f"rank{self.rank}"
        return f"Lattice({label}, disc={self.disc})"


def make_lattice(gram: Sequence[Sequence[int]], name: str | None = None) -> Lattice:
    return Lattice(gram, name)


class RationalSublattice:
    """Full-rank lattice in a fixed ambient rational inner-product space.

    The generators (columns of ``basis``) are stored HNF-canonically, so two
    equal sublattices compare equal regardless of the generators they were
    built from.
    """

    def __init__(self, ambient_gram, generators):
        self.ambient_gram = tuple(tuple(Fraction(x) for x in row) for row in ambient_gram)
        self.ambient_rank = len(self.ambient_gram)
        rows = [[Fraction(x) for x in g] for g in generators]
        canonical = _canonical_rows(rows)
        if len(canonical) != self.ambient_rank:
            raise Degenerate("sublattice is not of full ambient rank")
        self.generators = tuple(tuple(g) for g in canonical)
        self._gram = None
        self._inv_basis = None

    @property
    def basis(self) -> tuple:
        """Basis matrix with the generators as columns (ambient coordinates)."""
        return tuple(tuple(g[i] for g in self.generators) for i in range(self.ambient_rank))

    def basis_matrix(self) -> list:
        return [list(row) for row in self.basis]

    def gram(self) -> tuple:
        """Gram matrix of the generators under the ambient form."""
        if self._gram is None:
            self._gram = tuple(
                tuple(mx.form_value(self.ambient_gram, u, v) for v in self.generators)
                for u in self.generators
            )
        return self._gram

    def rational_coords(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in the generator basis, over Q."""
        if self._inv_basis is None:
            self._inv_basis = mx.rat_inv(self.basis_matrix())
        return mx.mat_vec(self._inv_basis, [Fraction(x) for x in v])

    def coords_of(self, v: Sequence) -> tuple | None:
        """Integer coordinates of ``v`` in the generator basis, or None."""
        c = self.rational_coords(v)
        if all(x.denominator == 1 for x in c):
            return tuple(int(x) for x in c)
        return None

    def __contains__(self, v: Sequence) -> bool:
        return self.coords_of(v) is not None

    def contains_sublattice(self, other: "RationalSublattice") -> bool:
        return all(g in self for g in other.generators)

    def dual(self) -> "RationalSublattice":
        """The dual lattice {v : <v, self> in Z} in the same ambient space."""
        b = self.basis_matrix()
        g = [[Fraction(x) for x in row] for row in self.gram()]
        dual_cols = mx.mat_mul(b, mx.rat_inv(g))
        return RationalSublattice(self.ambient_gram, list(zip(*dual_cols)))

    def sum(self, other: "RationalSublattice") -> "RationalSublattice":
        return RationalSublattice(self.ambient_gram, self.generators + other.generators)

    def intersection(self, other: "RationalSublattice") -> "RationalSublattice":
        # L1 cap L2 = (L1* + L2*)* for full-rank lattices in a fixed ambient form
        return self.dual().sum(other.dual()).dual()

    def points_in_coset(self, translate: Sequence, max_norm) -> list[VectorWithNorm]:
        """All v in translate + (this lattice) with <v, v> <= max_norm.

        Vectors come back in ambient coordinates, ordered lexicographically
        by their coordinates in the generator basis.
        """
        b = self.basis_matrix()
        shift = self.rational_coords(translate)
        coords = enumerate_shifted(self.gram(), shift, Fraction(max_norm))
        out = []
        for c in coords:
            v = tuple(
                sum(b[i][j] * (c[j] + shift[j]) for j in range(len(c)))
                for i in range(self.ambient_rank)
            )
            out.append(VectorWithNorm(v, mx.form_value(self.ambient_gram, v, v)))
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RationalSublattice)
            and self.ambient_gram == other.ambient_gram
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((self.ambient_gram, self.generators))

    def __repr__(self) -> str:
        return f"RationalSublattice(rank={self.ambient_rank})"


def _canonical_rows(rows):
    """HNF-canonical generating rows of the Z-span of ``rows`` (rational)."""
    if not rows:
        return []
    den = mx.common_denominator(rows)
    scaled = [[int(Fraction(x) * den) for x in row] for row in rows]
    h = mx.hnf_basis(scaled)
    return [[Fraction(x, den) for x in row] for row in h]


def full_lattice(lat: Lattice) -> RationalSublattice:
    """The lattice itself as the standard sublattice of its ambient space."""
    return RationalSublattice(lat.gram, mx.identity(lat.rank))


def dual_lattice(lat: Lattice) -> RationalSublattice:
    """The dual lattice, with basis the columns of gram^{-1}."""
    inv = mx.rat_inv(lat.gram)
    return RationalSublattice(lat.gram, list(zip(*inv)))


def short_vectors(lat: Lattice, max_norm) -> list[VectorWithNorm]:
    """All v with 0 < <v,v> <= max_norm in lexicographic coordinate order."""
    if not lat.is_positive_definite:
        raise NotPositiveDefinite("short vector enumeration needs a positive definite lattice")
    coords = enumerate_shifted(lat.gram, [0] * lat.rank, Fraction(max_norm))
    return [VectorWithNorm(c, lat.norm(c)) for c in coords if any(x != 0 for x in c)]


def root_count(lat: Lattice) -> int:
    return sum(1 for v in short_vectors(lat, 2) if v.norm == 2)


def direct_sum(l1: Lattice, l2: Lattice) -> Lattice:
    n1, n2 = l1.rank, l2.rank
    gram = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            gram[i][j] = l1.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            gram[n1 + i][n1 + j] = l2.gram[i][j]
    name = f"{l1.name}+{l2.name}" if l1.name and l2.name else None
    return Lattice(gram, name)


# ---------------------------------------------------------------------------
# catalog


def builtin(name: str, n: int | None = None) -> Lattice:
    """Catalog lattices: A_n (n>=1), D_n (n>=3), E6, E7, E8, U, Z_n.

    Accepts either ``builtin("A", 2)`` or the compact form ``builtin("A2")``.
    """
    if n is None:
        name, n = _split_name(name)
    key = name.upper()
    if key == "A":
        if n is None or n < 1:
            raise BadRank("A_n needs n >= 1")
        return _from_euclidean_rows(_a_basis(n), f"A{n}")
    if key == "D":
        if n is None or n < 3:
            raise BadRank("D_n needs n >= 3")
        return _from_euclidean_rows(_d_basis(n), f"D{n}")
    if key in {"E6", "E7", "E8"}:
        if n is not None:
            raise BadRank(f"{key} takes no rank parameter")
        return _e8() if key == "E8" else _e_series(int(key[1]))
    if key == "E":
        if n not in (6, 7, 8):
            raise BadRank("the E series has ranks 6, 7, 8")
        return _e8() if n == 8 else _e_series(n)
    if key == "U":
        return Lattice([[0, 1], [1, 0]], "U")
    if key == "Z":
        if n is None or n < 1:
            raise BadRank("Z_n needs n >= 1")
        return Lattice(mx.identity(n), f"Z{n}")
    raise UnknownName(f"unknown catalog lattice {name!r}")


def _split_name(token: str):
    token = token.strip()
    head = "".join(ch for ch in token if not ch.isdigit())
    tail = token[len(head):]
    if head.upper() == "E" and tail in {"6", "7", "8"}:
        return head + tail, None
    return head, int(tail) if tail else None


def _a_basis(n: int):
    """The basis {eps_2 - eps_1, ..., eps_{n+1} - eps_n} of A_n inside Z^{n+1}."""
    rows = []
    for i in range(n):
        v = [Fraction(0)] * (n + 1)
        v[i] = Fraction(-1)
        v[i + 1] = Fraction(1)
        rows.append(v)
    return rows


def _d_basis(n: int):
    """The A_{n-1} chain together with eps_1 + eps_2, inside Z^n."""
    rows = []
    for i in range(n - 1):
        v = [Fraction(0)] * n
        v[i] = Fraction(-1)
        v[i + 1] = Fraction(1)
        rows.append(v)
    v = [Fraction(0)] * n
    v[0] = Fraction(1)
    v[1] = Fraction(1)
    rows.append(v)
    return rows


def _from_euclidean_rows(rows, name: str) -> Lattice:
    gram = [[int(sum(a * b for a, b in zip(u, v))) for v in rows] for u in rows]
    return Lattice(gram, name)


@lru_cache(maxsize=None)
def _e8() -> Lattice:
    """E8 = D8 glued with l1 = (1/2, ..., 1/2), HNF-rebased."""
    rows = _d_basis(8) + [[Fraction(1, 2)] * 8]
    canonical = _canonical_rows(rows)
    gram = [[sum(a * b for a, b in zip(u, v)) for v in canonical] for u in canonical]
    return Lattice([[int(x) for x in row] for row in gram], "E8")


@lru_cache(maxsize=None)
def _e_series(rank: int) -> Lattice:
    """E7/E6: orthogonal complement in E8 of a root / of an A_2 pair of roots."""
    e8 = _e8()
    roots = [v.coords for v in short_vectors(e8, 2) if v.norm == 2]
    mu1 = roots[0]
    basis_vecs = [[int(i == j) for i in range(8)] for j in range(8)]
    constraints = [[e8.inner(mu1, b) for b in basis_vecs]]
    if rank == 6:
        mu2 = next(r for r in roots if e8.inner(mu1, r) == -1)
        constraints.append([e8.inner(mu2, b) for b in basis_vecs])
    kernel = mx.int_kernel_basis(constraints)
    gram = [[e8.inner(u, v) for v in kernel] for u in kernel]
    return Lattice(gram, f"E{rank}")
