"""Exception types shared across the package.

Validation failures name the violated invariant; ``NoSolution`` style
outcomes are values (``None``), never exceptions.
"""


class LatloopError(Exception):
    pass


class NotSymmetric(LatloopError):
    pass


class Degenerate(LatloopError):
    pass


class NotPositiveDefinite(LatloopError):
    pass


class NotEven(LatloopError):
    pass


class UnknownName(LatloopError):
    pass


class BadRank(LatloopError):
    pass


class NotIsometry(LatloopError):
    pass


class RankMismatch(LatloopError):
    pass


class NotContained(LatloopError):
    pass


class NotInSumLattice(LatloopError):
    pass


class NotInLattice(LatloopError):
    pass


class NotIsotropic(LatloopError):
    pass


class TooLarge(LatloopError):
    pass


class Mismatch(LatloopError):
    pass


class WindingNotInSum(LatloopError):
    pass


class EndpointMismatch(LatloopError):
    pass


class SupportViolation(LatloopError):
    pass


class SupportOverlap(LatloopError):
    pass


class PeriodMismatch(LatloopError):
    pass


class DegreeCapMismatch(LatloopError):
    pass


class ParseError(LatloopError):
    pass


class ValidationError(LatloopError):
    pass
