"""Generators of max-plus / max-times semimodules.

Extremals are found as minimal elements for the family of preorders

    u <=_j v   iff   u_j != 0, v_j != 0 and u / u_j <= v / v_j  componentwise,

and a vector is a max-linear combination of a finite set exactly when every
coordinate of its support is witnessed by some generator below it in the
matching preorder.  Indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateHyperplane, DimensionMismatch, ZeroPoint
from .semiring import MAX_PLUS, Semiring, require_cancellative, require_max_ordered


@dataclass(frozen=True)
class PointSet:
    semiring: Semiring
    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(p) for p in self.points)
        if pts and any(len(p) != len(pts[0]) for p in pts):
            raise DimensionMismatch("points of different dimension")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def zero_points(self) -> list:
        """Indices of all-zero points (they generate nothing)."""
        z = self.semiring.zero
        return [i for i, p in enumerate(self.points) if all(x == z for x in p)]


@dataclass(frozen=True)
class ExtremalsReport:
    extremal_indices: tuple
    redundant_indices: tuple
    witnesses: dict  # index -> coordinates where the point is minimal


@dataclass(frozen=True)
class Membership:
    member: bool
    coefficients: dict  # generator index -> scalar

    def __bool__(self):
        return self.member


def support(y, s: Semiring) -> list:
    z = s.zero
    return [j for j, v in enumerate(y) if v != z]


def leq_j(u, v, j: int, s: Semiring) -> bool:
    z = s.zero
    uj, vj = u[j], v[j]
    if uj == z or vj == z:
        return False
    div, leq = s.divide, s.leq
    return all(leq(div(a, uj), div(b, vj)) for a, b in zip(u, v))


def normalize_point(y, s: Semiring) -> tuple:
    """Scale ``y`` so its largest coordinate is the unit."""
    top = s.sum(y)
    if top == s.zero:
        raise ZeroPoint("cannot normalize the zero vector")
    return tuple(s.divide(x, top) for x in y)


def is_combination(y, S, s: Semiring | None = None) -> Membership:
    """Is ``y`` a max-linear combination of the points of ``S``?

    When it is, ``coefficients`` gives one explicit combination
    ``y = sum_l c_l x^l`` with ``c_l = y_j / x^l_j`` for a witnessing ``j``.
    """
    s = s or S.semiring
    require_cancellative(s, "is_combination")
    pts = list(S)
    coeffs = {}
    for j in support(y, s):
        for l, x in enumerate(pts):
            if leq_j(x, y, j, s):
                coeffs.setdefault(l, s.divide(y[j], x[j]))
                break
        else:
            return Membership(False, {})
    return Membership(True, coeffs)


def combine(S, coeffs: dict, s: Semiring | None = None) -> tuple:
    s = s or S.semiring
    n = len(S[0])
    acc = [s.zero] * n
    for l, c in coeffs.items():
        for i, x in enumerate(S[l]):
            acc[i] = s.add(acc[i], s.mul(c, x))
    return tuple(acc)


def _representatives(S: PointSet):
    """Normalize and collapse proportional points; returns (reps, rep_index, dups)."""
    s = S.semiring
    require_max_ordered(s, "extremal search")
    if not len(S):
        raise ValueError("empty point set")
    zeros = S.zero_points()
    if zeros:
        raise ZeroPoint(f"all-zero generator at index {zeros[0]}")
    first = {}
    reps, rep_index, dups = [], [], []
    for i, p in enumerate(S.points):
        key = normalize_point(p, s)
        if key in first:
            dups.append(i)
        else:
            first[key] = i
            reps.append(key)
            rep_index.append(i)
    return reps, rep_index, dups


def _report(rep_index, dups, minimal_at) -> ExtremalsReport:
    """``minimal_at[r]`` lists the coordinates at which representative r is minimal."""
    ext, red, wit = [], list(dups), {}
    for r, js in enumerate(minimal_at):
        idx = rep_index[r]
        if js:
            ext.append(idx)
            wit[idx] = tuple(sorted(js))
        else:
            red.append(idx)
    return ExtremalsReport(tuple(sorted(ext)), tuple(sorted(red)), wit)


def extremals_naive(S: PointSet) -> ExtremalsReport:
    """Quadratic scan: y is extremal iff it is <=_j-minimal for some j in supp(y)."""
    s = S.semiring
    reps, rep_index, dups = _representatives(S)
    minimal_at = []
    for r, y in enumerate(reps):
        js = []
        for j in support(y, s):
            if not any(
                q != r and leq_j(x, y, j, s) for q, x in enumerate(reps)
            ):
                js.append(j)
        minimal_at.append(js)
    return _report(rep_index, dups, minimal_at)


def _staircase_minima(pairs):
    """Indices of the Pareto-minimal pairs among distinct 2-d points.

    Sort lexicographically and sweep: a point survives iff its second
    coordinate is strictly below everything seen before it.
    """
    order = sorted(range(len(pairs)), key=pairs.__getitem__)
    keep = []
    best = None
    for i in order:
        b = pairs[i][1]
        if best is None or b < best:
            keep.append(i)
            best = b
    return keep


def extremals_partial_minima(S: PointSet) -> ExtremalsReport:
    """Extremals in dimension 3 by 2-d partial minima, O(k log k).

    For each coordinate j the points with nonzero j-th entry are divided by
    that entry; what remains are points of the plane, and the <=_j-minimal
    ones are the staircase minima.  Other dimensions fall back to
    :func:`extremals_naive`.
    """
    if S.dim != 3:
        return extremals_naive(S)
    s = S.semiring
    reps, rep_index, dups = _representatives(S)
    z = s.zero
    div = s.divide
    minimal_at = [[] for _ in reps]
    for j in range(3):
        a, b = [t for t in range(3) if t != j]
        ids, pairs = [], []
        for r, y in enumerate(reps):
            yj = y[j]
            if yj != z:
                ids.append(r)
                pairs.append((div(y[a], yj), div(y[b], yj)))
        for t in _staircase_minima(pairs):
            minimal_at[ids[t]].append(j)
    return _report(rep_index, dups, minimal_at)


def weak_basis(S: PointSet, fast: bool = True) -> PointSet:
    """Normalized extremals; every input point is a max-combination of them."""
    report = extremals_partial_minima(S) if fast else extremals_naive(S)
    s = S.semiring
    return PointSet(s, [normalize_point(S[i], s) for i in report.extremal_indices])


def spans_equal(X, Y, s: Semiring) -> bool:
    """Do two finite generator families span the same semimodule?"""
    return all(is_combination(x, Y, s) for x in X) and all(
        is_combination(y, X, s) for y in Y
    )


def hyperplane_member(x: Sequence, a: Sequence, b: Sequence) -> bool:
    """Max-plus hyperplane test ``max(a_i + x_i, a_{n+1}) == max(b_i + x_i, b_{n+1})``.

    ``a`` and ``b`` have ``len(x) + 1`` entries; the last one is the constant term.
    """
    s = MAX_PLUS
    n = len(x)
    if len(a) != n + 1 or len(b) != n + 1:
        raise DimensionMismatch("coefficient vectors need len(x) + 1 entries")
    if tuple(a) == tuple(b):
        raise DegenerateHyperplane("both sides are identical")
    if all(c == s.zero for c in a) or all(c == s.zero for c in b):
        raise DegenerateHyperplane("each side needs a nonzero term")

    def side(c):
        return s.add(s.sum(s.mul(ci, xi) for ci, xi in zip(c, x)), c[n])

    return side(a) == side(b)

