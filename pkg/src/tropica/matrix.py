"""Dense matrices and vectors over a semiring, closure algorithms and the
Bellman solver ``x = A x + b``.

All closure routines return ``A* = I + A + A^2 + ...``.  They differ only in
how they get there; for convergent input every route gives the same matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DimensionMismatch,
    NotConverged,
    NotTriangular,
    ResidualError,
    SemiringMismatch,
)
from .semiring import Semiring

FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class Vector:
    semiring: Semiring
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @classmethod
    def zeros(cls, s: Semiring, n: int) -> "Vector":
        return cls(s, (s.zero,) * n)

    @classmethod
    def unit(cls, s: Semiring, n: int, i: int) -> "Vector":
        return cls(s, tuple(s.one if k == i else s.zero for k in range(n)))

    def scale(self, c) -> "Vector":
        mul = self.semiring.mul
        return Vector(self.semiring, (mul(c, x) for x in self.entries))

    def __add__(self, other: "Vector") -> "Vector":
        _check_same(self.semiring, other.semiring)
        if len(self) != len(other):
            raise DimensionMismatch(f"vector lengths {len(self)} and {len(other)}")
        add = self.semiring.add
        return Vector(self.semiring, (add(a, b) for a, b in zip(self, other)))

    def leq(self, other: "Vector") -> bool:
        leq = self.semiring.leq
        return all(leq(a, b) for a, b in zip(self, other))


@dataclass(frozen=True)
class Matrix:
    """Row-major dense matrix; ``entries`` is a tuple of row tuples."""

    semiring: Semiring
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self):
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i) -> Vector:
        return Vector(self.semiring, self.entries[i])

    def col(self, j) -> Vector:
        return Vector(self.semiring, (r[j] for r in self.entries))

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.semiring, zip(*self.entries))

    def map(self, f) -> "Matrix":
        return Matrix(self.semiring, ((f(x) for x in r) for r in self.entries))

    def tolist(self):
        return [list(r) for r in self.entries]

    @classmethod
    def identity(cls, s: Semiring, n: int) -> "Matrix":
        return cls(s, ((s.one if i == j else s.zero for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, s: Semiring, cols: Sequence[Sequence]) -> "Matrix":
        return cls(s, zip(*cols))

    def __matmul__(self, other):
        if isinstance(other, Vector):
            return mat_vec(self, other)
        return mat_mul(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same(self.semiring, other.semiring)
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")
        add = self.semiring.add
        return Matrix(
            self.semiring,
            ((add(a, b) for a, b in zip(r, q)) for r, q in zip(self.entries, other.entries)),
        )

    def close_to(self, other: "Matrix", tol: float = 0.0) -> bool:
        if self.shape != other.shape:
            return False
        close = self.semiring.close
        return all(
            close(a, b, tol)
            for r, q in zip(self.entries, other.entries)
            for a, b in zip(r, q)
        )


def _check_same(s, t):
    if s != t:
        raise SemiringMismatch(f"{s.tag} vs {t.tag}")


def _require_square(A: Matrix):
    if not A.is_square():
        raise DimensionMismatch(f"expected a square matrix, got {A.rows}x{A.cols}")


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    _check_same(A.semiring, B.semiring)
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    s = A.semiring
    add, mul, zero = s.add, s.mul, s.zero
    bcols = list(zip(*B.entries))
    out = []
    for r in A.entries:
        row = []
        for c in bcols:
            acc = zero
            for a, b in zip(r, c):
                acc = add(acc, mul(a, b))
            row.append(acc)
        out.append(row)
    return Matrix(s, out)


def mat_vec(A: Matrix, x: Vector) -> Vector:
    _check_same(A.semiring, x.semiring)
    if A.cols != len(x):
        raise DimensionMismatch(f"cannot multiply {A.shape} by vector of length {len(x)}")
    s = A.semiring
    add, mul, zero = s.add, s.mul, s.zero
    out = []
    for r in A.entries:
        acc = zero
        for a, b in zip(r, x.entries):
            acc = add(acc, mul(a, b))
        out.append(acc)
    return Vector(s, out)


def _with_identity(s: Semiring, a: list) -> list:
    for i in range(len(a)):
        a[i][i] = s.add(a[i][i], s.one)
    return a


def closure_gauss(A: Matrix) -> Matrix:
    """Kleene star by pivot elimination (Floyd-Warshall / Gauss-Jordan form).

    For each pivot k every entry picks up the paths routed through k:
    ``a[i][j] += a[i][k] * a[k][k]* * a[k][j]``.  The result is ``I + A+``.
    """
    _require_square(A)
    s = A.semiring
    add, mul, star = s.add, s.mul, s.star
    n = A.rows
    a = A.tolist()
    for k in range(n):
        pk = star(a[k][k])
        row_k = a[k][:]
        col_k = [a[i][k] for i in range(n)]
        for i in range(n):
            left = mul(col_k[i], pk)
            if left == s.zero:
                continue
            ai = a[i]
            for j in range(n):
                ai[j] = add(ai[j], mul(left, row_k[j]))
    return Matrix(s, _with_identity(s, a))


def closure_escalator(A: Matrix) -> Matrix:
    """Kleene star by bordering the leading principal submatrices.

    With ``C = A_k*`` and the new border ``b`` (column), ``c`` (row), ``d``::

        s   = (d + c C b)*
        new = [[C + C b s c C, C b s],
               [s c C,         s    ]]
    """
    _require_square(A)
    s = A.semiring
    add, mul, star = s.add, s.mul, s.star
    n = A.rows
    C = [[star(A[0, 0])]]
    for k in range(1, n):
        b = [A[i, k] for i in range(k)]
        c = [A[k, j] for j in range(k)]
        d = A[k, k]
        # Cb: column, cC: row
        Cb = [s.sum(mul(C[i][t], b[t]) for t in range(k)) for i in range(k)]
        cC = [s.sum(mul(c[t], C[t][j]) for t in range(k)) for j in range(k)]
        sk = star(add(d, s.sum(mul(c[t], Cb[t]) for t in range(k))))
        Cbs = [mul(x, sk) for x in Cb]
        new = [
            [add(C[i][j], mul(Cbs[i], cC[j])) for j in range(k)] + [Cbs[i]]
            for i in range(k)
        ]
        new.append([mul(sk, x) for x in cC] + [sk])
        C = new
    return Matrix(s, C)


def _same_vec(s: Semiring, x, y, tol):
    return all(s.close(a, b, tol) for a, b in zip(x, y))


def _sweep_cap(s: Semiring, n: int, max_sweeps):
    if max_sweeps is not None:
        return max_sweeps
    return n + 1 if s.idempotent else 10_000


def _tolerance(s: Semiring, values) -> float:
    if not s.idempotent or any(isinstance(v, float) for v in values):
        return FLOAT_TOL
    return 0.0


def closure_jacobi(A: Matrix, B: Vector, max_sweeps: int | None = None) -> Vector:
    """Least solution of ``x = A x + B`` by Jacobi iteration from ``x = B``."""
    _require_square(A)
    _check_same(A.semiring, B.semiring)
    if len(B) != A.rows:
        raise DimensionMismatch("right-hand side length does not match matrix")
    s = A.semiring
    tol = _tolerance(s, [v for r in A.entries for v in r] + list(B))
    cap = _sweep_cap(s, A.rows, max_sweeps)
    x = B
    for _ in range(cap):
        nxt = mat_vec(A, x) + B
        if _same_vec(s, nxt, x, tol):
            return nxt
        x = nxt
    raise NotConverged(f"Jacobi iteration did not reach a fixpoint in {cap} sweeps")


def closure_gauss_seidel(A: Matrix, B: Vector, max_sweeps: int | None = None) -> Vector:
    """Least solution of ``x = A x + B``; each sweep reuses freshly updated components."""
    _require_square(A)
    _check_same(A.semiring, B.semiring)
    if len(B) != A.rows:
        raise DimensionMismatch("right-hand side length does not match matrix")
    s = A.semiring
    add, mul = s.add, s.mul
    tol = _tolerance(s, [v for r in A.entries for v in r] + list(B))
    cap = _sweep_cap(s, A.rows, max_sweeps)
    x = list(B)
    for _ in range(cap):
        old = x[:]
        for i, r in enumerate(A.entries):
            acc = B[i]
            for a, xj in zip(r, x):
                acc = add(acc, mul(a, xj))
            x[i] = acc
        if _same_vec(s, x, old, tol):
            return Vector(s, x)
    raise NotConverged(f"Gauss-Seidel iteration did not reach a fixpoint in {cap} sweeps")


def triangular_kind(A: Matrix) -> str | None:
    """'upper', 'lower' or None; the diagonal is ignored (it gets starred)."""
    if not A.is_square():
        return None
    z = A.semiring.zero
    n = A.rows
    if all(A[i, j] == z for i in range(n) for j in range(i)):
        return "upper"
    if all(A[i, j] == z for i in range(n) for j in range(i + 1, n)):
        return "lower"
    return None


def closure_triangular(A: Matrix) -> Matrix:
    """Kleene star of a triangular matrix by one back-substitution sweep."""
    _require_square(A)
    kind = triangular_kind(A)
    if kind is None:
        raise NotTriangular("matrix is neither upper nor lower triangular")
    if kind == "lower":
        return closure_triangular(A.transpose()).transpose()
    s = A.semiring
    add, mul, star = s.add, s.mul, s.star
    n = A.rows
    X = [[s.zero] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        si = star(A[i, i])
        X[i][i] = si
        for j in range(i + 1, n):
            acc = s.zero
            for k in range(i + 1, j + 1):
                acc = add(acc, mul(A[i, k], X[k][j]))
            X[i][j] = mul(si, acc)
    return Matrix(s, X)


CLOSURES = {
    "gauss": closure_gauss,
    "escalator": closure_escalator,
    "triangular": closure_triangular,
}
ITERATIVE = {
    "jacobi": closure_jacobi,
    "gauss-seidel": closure_gauss_seidel,
}
ALGORITHMS = ("gauss", "escalator", "jacobi", "gauss-seidel", "triangular", "auto")


def resolve_algorithm(A: Matrix, algorithm: str) -> str:
    if algorithm == "auto":
        return "triangular" if triangular_kind(A) else "gauss"
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return algorithm


def closure(A: Matrix, algorithm: str = "gauss") -> Matrix:
    """A* by the named algorithm; iterative ones solve against every unit vector."""
    _require_square(A)
    algorithm = resolve_algorithm(A, algorithm)
    if algorithm in CLOSURES:
        return CLOSURES[algorithm](A)
    solve = ITERATIVE[algorithm]
    n, s = A.rows, A.semiring
    cols = [solve(A, Vector.unit(s, n, j)).entries for j in range(n)]
    return Matrix.from_columns(s, cols)


def bellman_residual_ok(A: Matrix, B: Vector, x: Vector, tol: float | None = None) -> bool:
    s = A.semiring
    if tol is None:
        tol = _tolerance(s, list(x))
    return _same_vec(s, mat_vec(A, x) + B, x, tol)


def solve_bellman(A: Matrix, B: Vector, algorithm: str = "gauss") -> Vector:
    """Least solution ``A* B`` of the Bellman equation ``x = A x + B``.

    The answer is checked against the equation before it is returned;
    a mismatch raises :class:`ResidualError`.
    """
    _require_square(A)
    _check_same(A.semiring, B.semiring)
    if len(B) != A.rows:
        raise DimensionMismatch("right-hand side length does not match matrix")
    algorithm = resolve_algorithm(A, algorithm)
    if algorithm in ITERATIVE:
        x = ITERATIVE[algorithm](A, B)
    else:
        x = mat_vec(CLOSURES[algorithm](A), B)
    if not A.semiring.idempotent:
        # classical arithmetic: check with a tolerance scaled to the data
        scale = max([1.0] + [abs(float(v)) for v in x])
        ok = bellman_residual_ok(A, B, x, tol=1e-9 * scale)
    else:
        ok = bellman_residual_ok(A, B, x)
    if not ok:
        raise ResidualError("solution does not satisfy x = A x + B")
    return x
