"""Scalar semirings.

Six concrete instances are provided: ordinary arithmetic (plus-times),
max-plus, min-plus, max-times, max-min and boolean.  Scalars are plain Python
values (``int``, ``Fraction``, ``float`` or ``bool``); the two infinities are
the sentinels :data:`NEG_INF` and :data:`POS_INF`, which compare correctly
against any real number but support no arithmetic of their own, so an
absorbing zero can never leak through float semantics.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Real

from .errors import DivisionByZero, Divergent, UnsupportedSemiring


FLOAT_STAR_TOL = 1e-12


class Infinity:
    """Signed infinity sentinel, totally ordered against the reals."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "-inf" if self.sign < 0 else "inf"

    def __hash__(self):
        return hash(("Infinity", self.sign))

    def __eq__(self, other):
        return isinstance(other, Infinity) and other.sign == self.sign

    def __ne__(self, other):
        return not self == other

    def __lt__(self, other):
        if self == other:
            return False
        if isinstance(other, Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __gt__(self, other):
        if self == other:
            return False
        if isinstance(other, Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __le__(self, other):
        return self == other or self < other

    def __ge__(self, other):
        return self == other or self > other

    def __neg__(self):
        return POS_INF if self.sign < 0 else NEG_INF

    def __reduce__(self):
        return (_infinity, (self.sign,))


NEG_INF = Infinity(-1)
POS_INF = Infinity(1)


def _infinity(sign):
    return NEG_INF if sign < 0 else POS_INF


def is_inf(x) -> bool:
    return isinstance(x, Infinity)


def exact_div(a, b):
    """Quotient that stays exact for int/Fraction operands."""
    if isinstance(a, float) or isinstance(b, float):
        return a / b
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 else q


def _tidy(x):
    # keep integral Fractions as ints so that outputs compare and print cleanly
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Semiring:
    """A commutative semiring with named zero and unit.

    Subclasses implement ``add``, ``mul`` and, where it makes sense,
    ``divide`` and ``star``.  ``idempotent`` instances get the natural order
    ``a <= b  iff  a + b == b`` through :meth:`leq`.
    """

    tag: str = ""
    idempotent = True
    cancellative = False
    zero = None
    one = None

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def divide(self, a, b):
        raise UnsupportedSemiring(f"{self.tag}: no division")

    def star(self, a):
        """a* = 1 + a + a^2 + ... for idempotent instances."""
        if self.leq(a, self.one):
            return self.one
        if isinstance(a, float) and self.close(a, self.one, FLOAT_STAR_TOL):
            return self.one
        raise Divergent(f"{self.tag}: star of {a!r} diverges")

    def leq(self, a, b) -> bool:
        if not self.idempotent:
            raise UnsupportedSemiring(f"{self.tag} has no natural order")
        return self.add(a, b) == b

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def sum(self, xs):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def prod(self, xs):
        acc = self.one
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def coerce(self, x, exact: bool = True):
        """Bring a raw input value into the carrier representation."""
        if isinstance(x, Infinity):
            return x
        if isinstance(x, float) and math.isinf(x):
            return POS_INF if x > 0 else NEG_INF
        if isinstance(x, bool):
            raise TypeError(f"{self.tag}: boolean value {x!r} not in carrier")
        if not isinstance(x, Real):
            raise TypeError(f"{self.tag}: {x!r} is not a number")
        if exact:
            if isinstance(x, float):
                return _tidy(Fraction(x))
            return _tidy(Fraction(x)) if isinstance(x, Fraction) else int(x)
        return float(x)

    def close(self, a, b, tol: float = 0.0) -> bool:
        """Equality up to an absolute tolerance (exact when ``tol == 0``)."""
        if a == b:
            return True
        if tol == 0 or is_inf(a) or is_inf(b) or isinstance(a, bool):
            return False
        return abs(a - b) <= tol

    def __repr__(self):
        return f"<semiring {self.tag}>"

    def __eq__(self, other):
        return isinstance(other, Semiring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.tag,)


class PlusTimes(Semiring):
    tag = "plus-times"
    idempotent = False
    cancellative = True
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def divide(self, a, b):
        if b == 0:
            raise DivisionByZero("division by the semiring zero")
        return exact_div(a, b)

    def star(self, a):
        if abs(a) >= 1:
            raise Divergent(f"plus-times: geometric series of {a!r} diverges")
        return exact_div(1, 1 - a)

    def coerce(self, x, exact=True):
        x = super().coerce(x, exact)
        if is_inf(x):
            raise ValueError("plus-times carrier has no infinities")
        return x


class MaxPlus(Semiring):
    tag = "max-plus"
    cancellative = True
    zero = NEG_INF
    one = 0

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        if a is NEG_INF or b is NEG_INF:
            return NEG_INF
        return a + b

    def divide(self, a, b):
        if b is NEG_INF:
            raise DivisionByZero("division by -inf")
        if a is NEG_INF:
            return NEG_INF
        return a - b

    def leq(self, a, b):
        return a <= b

    def coerce(self, x, exact=True):
        x = super().coerce(x, exact)
        if x is POS_INF:
            raise ValueError("max-plus carrier does not contain +inf")
        return x


class MinPlus(Semiring):
    tag = "min-plus"
    cancellative = True
    zero = POS_INF
    one = 0

    def add(self, a, b):
        return a if a <= b else b

    def mul(self, a, b):
        if a is POS_INF or b is POS_INF:
            return POS_INF
        return a + b

    def divide(self, a, b):
        if b is POS_INF:
            raise DivisionByZero("division by +inf")
        if a is POS_INF:
            return POS_INF
        return a - b

    def leq(self, a, b):
        return a >= b

    def coerce(self, x, exact=True):
        x = super().coerce(x, exact)
        if x is NEG_INF:
            raise ValueError("min-plus carrier does not contain -inf")
        return x


class MaxTimes(Semiring):
    tag = "max-times"
    cancellative = True
    zero = 0
    one = 1

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        return a * b

    def divide(self, a, b):
        if b == 0:
            raise DivisionByZero("division by 0")
        return exact_div(a, b)

    def leq(self, a, b):
        return a <= b

    def coerce(self, x, exact=True):
        x = super().coerce(x, exact)
        if is_inf(x) or x < 0:
            raise ValueError(f"max-times carrier is [0, inf), got {x!r}")
        return x


class MaxMin(Semiring):
    """Bottleneck semiring on the closed interval ``[lo, hi]``."""

    tag = "max-min"

    def __init__(self, lo=NEG_INF, hi=POS_INF):
        if not lo < hi:
            raise ValueError("max-min needs lo < hi")
        self.zero = lo
        self.one = hi

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        return a if a <= b else b

    def leq(self, a, b):
        return a <= b

    def star(self, a):
        # every element is below the unit, so the series stops at 1
        return self.one

    def coerce(self, x, exact=True):
        x = super().coerce(x, exact)
        if x < self.zero or x > self.one:
            raise ValueError(f"max-min carrier is [{self.zero}, {self.one}], got {x!r}")
        return x

    def _key(self):
        return (self.tag, self.zero, self.one)

    def __repr__(self):
        return f"<semiring max-min [{self.zero}, {self.one}]>"


class Boolean(Semiring):
    tag = "boolean"
    zero = False
    one = True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def leq(self, a, b):
        return (not a) or b

    def star(self, a):
        return True

    def coerce(self, x, exact=True):
        if isinstance(x, bool):
            return x
        if x in (0, 1):
            return bool(x)
        raise TypeError(f"boolean carrier is {{false, true}}, got {x!r}")

    def close(self, a, b, tol=0.0):
        return a == b


PLUS_TIMES = PlusTimes()
MAX_PLUS = MaxPlus()
MIN_PLUS = MinPlus()
MAX_TIMES = MaxTimes()
MAX_MIN = MaxMin()
BOOLEAN = Boolean()

TAGS = ("plus-times", "max-plus", "min-plus", "max-times", "max-min", "boolean")


def get_semiring(tag: str, bounds=None) -> Semiring:
    """Look a semiring up by its string tag; ``bounds`` only applies to max-min."""
    if tag == "max-min":
        return MaxMin(*bounds) if bounds is not None else MAX_MIN
    table = {
        "plus-times": PLUS_TIMES,
        "max-plus": MAX_PLUS,
        "min-plus": MIN_PLUS,
        "max-times": MAX_TIMES,
        "boolean": BOOLEAN,
    }
    try:
        return table[tag]
    except KeyError:
        raise UnsupportedSemiring(f"unknown semiring tag {tag!r}") from None


# functional spellings


def add(a, b, s: Semiring):
    return s.add(a, b)


def mul(a, b, s: Semiring):
    return s.mul(a, b)


def scalar_star(a, s: Semiring):
    return s.star(a)


def nat_leq(a, b, s: Semiring) -> bool:
    return s.leq(a, b)


def divide(a, b, s: Semiring):
    return s.divide(a, b)


def require_cancellative(s: Semiring, what: str = "operation"):
    if not s.cancellative:
        raise UnsupportedSemiring(f"{what} needs a cancellative semiring, got {s.tag}")


def require_max_ordered(s: Semiring, what: str = "operation"):
    if s.tag not in ("max-plus", "max-times"):
        raise UnsupportedSemiring(f"{what} is defined over max-plus or max-times, got {s.tag}")
