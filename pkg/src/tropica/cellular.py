"""Combinatorial types, regions and cellular / definite closures over
max-plus or max-times.

A type ``S`` of an n x m matrix is a family of column-index sets ``S_i``, one
for each ``i`` in ``supp(S)``.  ``type(y | A)`` records, for every coordinate
``j`` of ``y``'s support, which columns ``A[:, i]`` satisfy
``A[:, i] <=_j y``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .convexity import leq_j, spans_equal, support
from .errors import (
    DimensionMismatch,
    IncompatibleType,
    NoFiniteCycle,
    NoNonzeroPermutation,
)
from .matrix import Matrix, closure_gauss
from .semiring import POS_INF, Semiring, require_max_ordered
from .spectral import SpectralResult, eig_space, max_cycle_mean


@dataclass(frozen=True)
class CombinatorialType:
    sets: tuple  # frozenset per row index; ignored outside supp
    supp: frozenset

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(x) for x in self.sets))
        object.__setattr__(self, "supp", frozenset(self.supp))

    @property
    def n(self) -> int:
        return len(self.sets)

    def get(self, i) -> frozenset:
        return self.sets[i] if i in self.supp else frozenset()

    def refines(self, other: "CombinatorialType") -> bool:
        """``self <= other``: other has smaller support and larger sets on self's support."""
        if not other.supp <= self.supp:
            return False
        return all(self.sets[i] <= other.get(i) for i in self.supp)

    def to_json(self):
        return {
            "sets": [sorted(self.get(i)) for i in range(self.n)],
            "supp": sorted(self.supp),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["sets"], obj["supp"])


@dataclass(frozen=True)
class DefiniteForm:
    sigma: tuple  # sigma[i] is the column matched to row i
    weight: object
    normalized: Matrix


def comb_type(y, A: Matrix) -> CombinatorialType:
    s = A.semiring
    require_max_ordered(s, "comb_type")
    if len(y) != A.rows:
        raise DimensionMismatch("vector length must equal the number of rows")
    cols = [A.col(i).entries for i in range(A.cols)]
    supp = support(y, s)
    sets = [frozenset()] * A.rows
    for j in supp:
        sets[j] = frozenset(i for i, c in enumerate(cols) if leq_j(c, y, j, s))
    return CombinatorialType(sets, supp)


def build_AS(A: Matrix, S: CombinatorialType) -> Matrix:
    """The n x n matrix whose i-th column is ``sum_{k in S_i} A[:, k] / A[i, k]``,
    ``e_i`` for an empty ``S_i`` and zero outside the support."""
    s = A.semiring
    n = A.rows
    if S.n != n:
        raise DimensionMismatch("type length must equal the number of rows")
    cols = []
    for i in range(n):
        if i not in S.supp:
            cols.append([s.zero] * n)
            continue
        Si = S.sets[i]
        if not Si:
            cols.append([s.one if r == i else s.zero for r in range(n)])
            continue
        col = [s.zero] * n
        for k in sorted(Si):
            if k >= A.cols:
                raise IncompatibleType(f"column index {k} out of range")
            piv = A[i, k]
            if piv == s.zero:
                raise IncompatibleType(f"A[{i}, {k}] is zero but {k} is in S_{i}")
            for r in range(n):
                col[r] = s.add(col[r], s.divide(A[r, k], piv))
        cols.append(col)
    return Matrix.from_columns(s, cols)


def in_region(z, A: Matrix, S: CombinatorialType) -> bool:
    return S.refines(comb_type(z, A))


def region_eigenspace(A: Matrix, S: CombinatorialType) -> SpectralResult | None:
    """Generators of the region of ``S``, or None when the region is empty.

    The region is the part of the unit eigenspace of ``A^S`` whose support
    lies inside ``supp(S)`` and covers every ``i`` with nonempty ``S_i``.
    The returned basis spans its closure: single generators may sit on the
    boundary (zero coordinates) while their max-sum is a region point.
    """
    s = A.semiring
    AS = build_AS(A, S)
    try:
        lam = max_cycle_mean(AS)
    except NoFiniteCycle:
        return None
    if lam != s.one:
        return None
    eig = eig_space(AS)
    basis = tuple(v for v in eig.basis if set(support(v, s)) <= S.supp)
    if not basis:
        return None
    inner = tuple(s.sum(col) for col in zip(*basis))
    if not in_region(inner, A, S):
        return None
    return SpectralResult(s.one, eig.critical, basis)


def is_definite(A: Matrix, tol: float = 0.0) -> bool:
    s = A.semiring
    require_max_ordered(s, "is_definite")
    if not A.is_square():
        return False
    if any(not s.close(A[i, i], s.one, tol) for i in range(A.rows)):
        return False
    return s.close(max_cycle_mean(A), s.one, tol)


def _assignment(s: Semiring, A: Matrix) -> list:
    """Heaviest permutation by the Hungarian method with potentials.

    Runs on costs ``1 / a`` in the multiplicative group of the semiring
    (``-a`` in max-plus), so exact weights stay exact.  Zero entries are
    forbidden cells.
    """
    n = A.rows
    one, zero = s.one, s.zero
    mul, div = s.mul, s.divide
    cost = [[None] * (n + 1)] + [
        [None] + [None if A[i, j] == zero else div(one, A[i, j]) for j in range(n)]
        for i in range(n)
    ]
    u = [one] * (n + 1)
    v = [one] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [POS_INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta, j1 = POS_INF, None
            row = cost[i0]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                c = row[j]
                if c is not None:
                    cur = div(div(c, u[i0]), v[j])
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] < delta:
                    delta, j1 = minv[j], j
            if j1 is None:
                raise NoNonzeroPermutation("no permutation of nonzero weight")
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] = mul(u[p[j]], delta)
                    v[j] = div(v[j], delta)
                elif minv[j] is not POS_INF:
                    minv[j] = div(minv[j], delta)
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    sigma = [0] * n
    for j in range(1, n + 1):
        sigma[p[j] - 1] = j - 1
    return sigma


def permutation_weight(A: Matrix, sigma) -> object:
    s = A.semiring
    return s.prod(A[i, sigma[i]] for i in range(A.rows))


def definite_form(A: Matrix, sigma) -> DefiniteForm:
    """``(D^sigma)^-1 A``: row i of A, divided by ``A[i, sigma(i)]``, lands in row sigma(i)."""
    s = A.semiring
    n = A.rows
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{sigma} is not a permutation of 0..{n - 1}")
    w = permutation_weight(A, sigma)
    if w == s.zero:
        raise NoNonzeroPermutation(f"permutation {sigma} has zero weight")
    rows = [None] * n
    for i in range(n):
        piv = A[i, sigma[i]]
        rows[sigma[i]] = [s.divide(x, piv) for x in A.entries[i]]
    return DefiniteForm(sigma, w, Matrix(s, rows))


def max_weight_permutation(A: Matrix) -> DefiniteForm:
    s = A.semiring
    require_max_ordered(s, "max_weight_permutation")
    if not A.is_square():
        raise DimensionMismatch("need a square matrix")
    return definite_form(A, _assignment(s, A))


def definite_closure(A: Matrix, sigma=None) -> Matrix:
    """Closure of a definite form; the choice of maximal permutation does not matter."""
    form = max_weight_permutation(A) if sigma is None else definite_form(A, sigma)
    return closure_gauss(form.normalized)


def closure_equal_iff_span_equal(A: Matrix, B: Matrix) -> tuple:
    """``(A* == B*, span(cols A*) == span(cols B*))``; the two always agree."""
    s = A.semiring
    if A.shape != B.shape or not A.is_square():
        raise DimensionMismatch("need two square matrices of the same size")
    As, Bs = closure_gauss(A), closure_gauss(B)
    cols_a = [c.entries for c in As.columns()]
    cols_b = [c.entries for c in Bs.columns()]
    return As == Bs, spans_equal(cols_a, cols_b, s)
