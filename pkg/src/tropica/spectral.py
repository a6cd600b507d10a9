"""Maximal cycle mean, critical nodes and the eigenspace of a max-plus or
max-times matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoFiniteCycle
from .matrix import Matrix, Vector, closure_gauss, mat_mul
from .semiring import Semiring, require_max_ordered


@dataclass(frozen=True)
class SpectralResult:
    lam: object
    critical: tuple
    basis: tuple  # of Vector


class _Mean:
    """Orders ``w ** (1/k)`` (max-times) or ``w / k`` (max-plus) without rounding."""

    __slots__ = ("s", "w", "k")

    def __init__(self, s, w, k):
        self.s, self.w, self.k = s, w, k

    def __lt__(self, other):
        a, b = self.w, other.w
        if self.s.tag == "max-plus":
            return a * other.k < b * self.k
        if isinstance(a, float) or isinstance(b, float):
            return math.log(a) * other.k < math.log(b) * self.k
        return a ** other.k < b ** self.k

    def value(self):
        if self.s.tag == "max-plus":
            q = Fraction(self.w) / self.k if not isinstance(self.w, float) else self.w / self.k
            if isinstance(q, Fraction) and q.denominator == 1:
                return q.numerator
            return q
        return _root(self.w, self.k)


def _root(w, k):
    """k-th root, exact when ``w`` is a perfect k-th power of a rational."""
    if k == 1:
        return w
    if not isinstance(w, float):
        q = Fraction(w)
        num = _iroot(q.numerator, k)
        den = _iroot(q.denominator, k)
        if num is not None and den is not None:
            r = Fraction(num, den)
            return r.numerator if r.denominator == 1 else r
        w = float(q)
    return w ** (1.0 / k)


def _iroot(n, k):
    if n < 0:
        return None
    r = round(n ** (1.0 / k)) if n < 2**1000 else int(math.exp(math.log(n) / k))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    return None


def max_cycle_mean(A: Matrix):
    """Largest cycle mean by Karp's recurrence over walk lengths 0..n.

    ``D[k][v]`` is the heaviest walk of exactly k edges ending at v, starting
    anywhere.  Then ``lambda = max_v min_k (D[n][v] / D[k][v]) ** (1/(n-k))``
    over entries where both are nonzero.
    """
    require_max_ordered(A.semiring, "max_cycle_mean")
    if not A.is_square():
        raise ValueError("cycle mean needs a square matrix")
    s = A.semiring
    n = A.rows
    zero = s.zero
    D = [[s.one] * n]
    for _ in range(n):
        prev = D[-1]
        D.append([
            s.sum(s.mul(prev[u], A[u, v]) for u in range(n)) for v in range(n)
        ])
    best = None
    for v in range(n):
        if D[n][v] == zero:
            continue
        worst = None
        for k in range(n):
            if D[k][v] == zero:
                continue
            m = _Mean(s, s.divide(D[n][v], D[k][v]), n - k)
            if worst is None or m < worst:
                worst = m
        if best is None or best < worst:
            best = worst
    if best is None:
        raise NoFiniteCycle("matrix has no cycle of nonzero weight")
    return best.value()


def normalize(A: Matrix, lam) -> Matrix:
    """``A / lam`` entrywise."""
    s = A.semiring
    return A.map(lambda x: x if x == s.zero else s.divide(x, lam))


def _normalize_vec(s: Semiring, v):
    top = s.sum(v)
    return tuple(s.divide(x, top) for x in v)


def dedup_proportional(s: Semiring, vectors) -> list:
    seen = set()
    out = []
    for v in vectors:
        key = _normalize_vec(s, v)
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def critical_nodes(At: Matrix, star: Matrix | None = None, tol: float = 0.0) -> tuple:
    """Nodes on a cycle of weight one in a matrix already scaled to ``lambda = 1``."""
    s = At.semiring
    if star is None:
        star = closure_gauss(At)
    plus = mat_mul(At, star)
    return tuple(i for i in range(At.rows) if s.close(plus[i, i], s.one, tol))


def eig_space(A: Matrix) -> SpectralResult:
    """Eigenvalue ``lambda(A)`` with the critical columns of ``(A/lambda)*`` as basis."""
    lam = max_cycle_mean(A)
    s = A.semiring
    At = normalize(A, lam)
    star = closure_gauss(At)
    tol = 1e-9 if isinstance(lam, float) else 0.0
    crit = critical_nodes(At, star, tol)
    cols = [star.col(i) for i in crit]
    basis = tuple(dedup_proportional(s, cols))
    return SpectralResult(lam, crit, basis)


def eig_residual_ok(A: Matrix, lam, v: Vector, tol: float = 0.0) -> bool:
    s = A.semiring
    lhs = A @ v
    rhs = v.scale(lam)
    return all(s.close(a, b, tol) for a, b in zip(lhs, rhs))

