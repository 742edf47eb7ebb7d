"""The circle group Q/Z of rational phase angles.

An angle ``a`` stands for the phase ``e^{2 pi i a}``.  All cocycle values in
this package are roots of unity, so storing the class of ``a`` mod Z gives
exact phase equality tests.
"""

from __future__ import annotations

from fractions import Fraction


class RationalAngle:
    """An element of Q/Z, stored as its canonical representative in [0, 1)."""

    __slots__ = ("value",)

    def __init__(self, value: Fraction | int | str = 0):
        self.value = Fraction(value) % 1

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def order(self) -> int:
        """Order of the element in Q/Z (the denominator of the reduced value)."""
        return self.value.denominator

    def __add__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(self.value + other.value)

    def __sub__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(self.value - other.value)

    def __neg__(self) -> "RationalAngle":
        return RationalAngle(-self.value)

    def __mul__(self, k: int) -> "RationalAngle":
        return RationalAngle(self.value * k)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalAngle) and self.value == other.value

    def __hash__(self) -> int:
        return hash(("RationalAngle", self.value))

    def __repr__(self) -> str:
        return f"RationalAngle({self.value!s})"


ZERO_ANGLE = RationalAngle(0)
HALF_ANGLE = RationalAngle(Fraction(1, 2))
