"""Exact arithmetic for lattices, overlattice gluing, torus loop group
cocycles, character series and representation labels.

Everything outside :mod:`latloop.fock` computes in exact rational
arithmetic; phases live in Q/Z so equality tests never touch floats.
"""

from latloop.angles import RationalAngle
from latloop.lattice import Lattice, RationalSublattice, builtin, make_lattice

__all__ = [
    "Lattice",
    "RationalAngle",
    "RationalSublattice",
    "builtin",
    "make_lattice",
]
