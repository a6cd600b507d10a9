"""Exception hierarchy shared by all modules."""


class TropicaError(Exception):
    pass


class SolverError(TropicaError):
    """A computation that is well-posed as input but has no finite answer."""


class Divergent(SolverError):
    pass


class NotConverged(SolverError):
    pass


class NoFiniteCycle(SolverError):
    pass


class NoNonzeroPermutation(SolverError):
    pass


class DivisionByZero(TropicaError, ZeroDivisionError):
    pass


class UnsupportedSemiring(TropicaError):
    pass


class DimensionMismatch(TropicaError, ValueError):
    pass


class SemiringMismatch(TropicaError, ValueError):
    pass


class NotTriangular(TropicaError, ValueError):
    pass


class IncompatibleType(TropicaError, ValueError):
    pass


class DegenerateHyperplane(TropicaError, ValueError):
    pass


class ZeroPoint(TropicaError, ValueError):
    """An all-zero generator was supplied where it would break normalization."""


class ResidualError(TropicaError):
    """A result failed its own post-condition self-check."""
