import itertools
import random
from fractions import Fraction

import pytest

from oracles import (
    least_solution_lattice_check,
    min_plus_closure_by_paths,
    random_min_plus,
    reachability,
)
from tropica.errors import (
    DimensionMismatch,
    Divergent,
    NotConverged,
    NotTriangular,
    SemiringMismatch,
)
from tropica.matrix import (
    Matrix,
    Vector,
    closure,
    closure_escalator,
    closure_gauss,
    closure_gauss_seidel,
    closure_jacobi,
    closure_triangular,
    mat_mul,
    resolve_algorithm,
    solve_bellman,
    triangular_kind,
)
from tropica.semiring import (
    BOOLEAN,
    MAX_PLUS,
    MAX_TIMES,
    MIN_PLUS,
    NEG_INF,
    PLUS_TIMES,
    POS_INF,
    MaxMin,
)

INF = POS_INF
T, F = True, False

# shortest paths 0 -> 1 (1), 1 -> 2 (2), 0 -> 2 (4)
SP = [[INF, 1, 4], [INF, INF, 2], [INF, INF, INF]]
SP_STAR = [[0, 1, 3], [INF, 0, 2], [INF, INF, 0]]

ALL_CLOSURES = [closure_gauss, closure_escalator, lambda A: closure(A, "jacobi"),
                lambda A: closure(A, "gauss-seidel")]


def test_shortest_path_oracle_matches_frozen_star():
    assert min_plus_closure_by_paths(SP) == SP_STAR


def test_mat_mul_examples():
    A = Matrix(MIN_PLUS, [[0, 1], [INF, 0]])
    # two-edge walks, brute force
    walks = [[min((A[i, k] + A[k, j]) if INF not in (A[i, k], A[k, j]) else INF
                  for k in range(2)) for j in range(2)] for i in range(2)]
    assert walks == [[0, 1], [INF, 0]]
    assert mat_mul(A, A).tolist() == walks

    P = Matrix(BOOLEAN, [[T, F], [F, T]])
    Q = Matrix(BOOLEAN, [[F, T], [T, F]])
    assert mat_mul(P, Q).tolist() == [[F, T], [T, F]]


@pytest.mark.parametrize("s", [MAX_PLUS, MIN_PLUS, MAX_TIMES, BOOLEAN, PLUS_TIMES, MaxMin(0, 5)],
                         ids=lambda s: s.tag)
def test_identity_is_neutral(s):
    rng = random.Random(0)
    vals = {
        "max-plus": [NEG_INF, -3, 0, 4],
        "min-plus": [INF, -3, 0, 4],
        "max-times": [0, 1, Fraction(1, 2), 3],
        "boolean": [T, F],
        "plus-times": [-2, 0, 1, 5],
        "max-min": [0, 1, 3, 5],
    }[s.tag]
    A = Matrix(s, [[rng.choice(vals) for _ in range(3)] for _ in range(3)])
    I = Matrix.identity(s, 3)
    assert mat_mul(I, A) == A == mat_mul(A, I)


def test_mat_mul_errors():
    A = Matrix(MIN_PLUS, [[0, 1, 2]])
    with pytest.raises(DimensionMismatch):
        mat_mul(A, A)
    with pytest.raises(SemiringMismatch):
        mat_mul(Matrix(MIN_PLUS, [[0]]), Matrix(MAX_PLUS, [[0]]))


@pytest.mark.parametrize("algo", ALL_CLOSURES + [closure_triangular])
def test_shortest_path_closure(algo):
    assert algo(Matrix(MIN_PLUS, SP)).tolist() == SP_STAR


@pytest.mark.parametrize("algo", ALL_CLOSURES)
def test_trivial_closures(algo):
    assert algo(Matrix(MAX_PLUS, [[NEG_INF]])).tolist() == [[0]]
    assert algo(Matrix(MAX_PLUS, [[-5]])).tolist() == [[0]]
    assert algo(Matrix(BOOLEAN, [[F, T], [F, F]])).tolist() == [[T, T], [F, T]]


@pytest.mark.parametrize("algo", [closure_gauss, closure_escalator, closure_triangular])
def test_positive_loop_diverges(algo):
    with pytest.raises(Divergent):
        algo(Matrix(MAX_PLUS, [[1]]))


@pytest.mark.parametrize("it", [closure_jacobi, closure_gauss_seidel])
def test_iterative_divergence_is_reported(it):
    with pytest.raises(NotConverged):
        it(Matrix(MAX_PLUS, [[1]]), Vector(MAX_PLUS, [0]))


@pytest.mark.parametrize("it", [closure_jacobi, closure_gauss_seidel])
def test_iterative_examples(it):
    A = Matrix(MIN_PLUS, SP)
    # distances into node 2
    assert it(A, Vector(MIN_PLUS, [INF, INF, 0])).entries == (3, 2, 0)
    assert it(A, Vector.zeros(MIN_PLUS, 3)).entries == (INF, INF, INF)
    # transposed system gives distances out of node 0
    assert it(A.transpose(), Vector(MIN_PLUS, [0, INF, INF])).entries == (0, 1, 3)


def test_boolean_reachability_matches_bfs():
    adj = [[F, T], [F, F]]
    expected = reachability(adj, [T, F])
    assert expected == [T, F]  # node 1 has no path into node 0
    A = Matrix(BOOLEAN, adj)
    assert list(solve_bellman(A, Vector(BOOLEAN, [T, F]))) == expected
    # the transposed system propagates forward: 0 reaches 1
    assert list(solve_bellman(A.transpose(), Vector(BOOLEAN, [T, F]))) == [T, T]
    assert reachability([[F, F], [T, F]], [T, F]) == [T, T]


def test_triangular_examples():
    I = Matrix.identity(MIN_PLUS, 4)
    assert closure_triangular(I) == I
    lower = Matrix(MIN_PLUS, SP).transpose()
    assert triangular_kind(lower) == "lower"
    assert closure_triangular(lower) == Matrix(MIN_PLUS, SP_STAR).transpose()
    with pytest.raises(NotTriangular):
        closure_triangular(Matrix(MIN_PLUS, [[INF, 1], [1, INF]]))


def test_triangular_with_starred_diagonal():
    A = Matrix(MAX_PLUS, [[-1, 2], [NEG_INF, 0]])
    assert closure_triangular(A) == closure_gauss(A)
    with pytest.raises(Divergent):
        closure_triangular(Matrix(MAX_PLUS, [[1, 2], [NEG_INF, 0]]))


def test_auto_algorithm_choice():
    assert resolve_algorithm(Matrix(MIN_PLUS, SP), "auto") == "triangular"
    assert resolve_algorithm(Matrix(MIN_PLUS, [[INF, 1], [1, INF]]), "auto") == "gauss"


def test_solve_bellman_examples():
    A = Matrix(MIN_PLUS, SP)
    assert solve_bellman(A, Vector(MIN_PLUS, [INF, INF, 0])).entries == (3, 2, 0)
    assert solve_bellman(A.transpose(), Vector(MIN_PLUS, [0, INF, INF])).entries == (0, 1, 3)
    assert solve_bellman(A, Vector.zeros(MIN_PLUS, 3)).entries == (INF,) * 3


def test_plus_times_closure_is_inverse():
    A = Matrix(PLUS_TIMES, [[Fraction(1, 2), Fraction(1, 4)], [0, Fraction(1, 3)]])
    star = closure_gauss(A)
    # (I - A)^-1 by hand
    assert star.tolist() == [[2, Fraction(3, 4)], [0, Fraction(3, 2)]]
    assert closure_escalator(A) == star
    assert closure_triangular(A) == star
    x = solve_bellman(A, Vector(PLUS_TIMES, [1, 1]), "jacobi")
    assert float(x[0]) == pytest.approx(2.75)
    assert float(x[1]) == pytest.approx(1.5)


def test_plus_times_divergence():
    with pytest.raises(Divergent):
        closure_gauss(Matrix(PLUS_TIMES, [[0, 2], [2, 0]]))


def test_bottleneck_closure():
    s = MaxMin(0, 10)
    A = Matrix(s, [[0, 7, 2], [0, 0, 5], [3, 0, 0]])
    star = closure_gauss(A)
    # widest path brute force over simple paths
    n = 3
    for i in range(n):
        for j in range(n):
            best = 10 if i == j else 0
            others = [v for v in range(n) if v not in (i, j)]
            for r in range(len(others) + 1):
                for mid in itertools.permutations(others, r):
                    path = (i, *mid, j)
                    if i == j and len(path) == 1:
                        continue
                    best = max(best, min(A[a, b] for a, b in zip(path, path[1:])))
            assert star[i, j] == best
    assert closure_escalator(A) == star == closure(A, "jacobi") == closure(A, "gauss-seidel")


def test_float_mode_matches_exact():
    rng = random.Random(4)
    for _ in range(20):
        rows = random_min_plus(rng, 5)
        exact = closure_gauss(Matrix(MIN_PLUS, rows))
        flt = closure_gauss(Matrix(MIN_PLUS, [[v if v == INF else float(v) for v in r] for r in rows]))
        assert flt.close_to(exact, 1e-12)
        assert closure(Matrix(MIN_PLUS, [[v if v == INF else float(v) for v in r] for r in rows]),
                       "jacobi").close_to(exact, 1e-12)


def _random_matrix(rng, n):
    return Matrix(MIN_PLUS, random_min_plus(rng, n, density=0.5))


def test_star_axioms():
    rng = random.Random(1)
    for _ in range(30):
        A = _random_matrix(rng, rng.randint(1, 7))
        S = closure_gauss(A)
        I = Matrix.identity(MIN_PLUS, A.rows)
        assert S == I + mat_mul(A, S)
        assert mat_mul(S, S) == S


def test_algorithm_agreement_small_sample():
    rng = random.Random(2)
    for _ in range(20):
        A = _random_matrix(rng, 8)
        ref = closure_gauss(A)
        assert closure_escalator(A) == ref
        assert closure(A, "jacobi") == ref
        assert closure(A, "gauss-seidel") == ref
        if triangular_kind(A):
            assert closure_triangular(A) == ref
        B = Vector(MIN_PLUS, [rng.choice([INF, 0, 3, 7]) for _ in range(8)])
        assert solve_bellman(A, B) == closure_jacobi(A, B) == closure_gauss_seidel(A, B)


def test_triangular_agreement_on_dags():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(1, 7)
        rows = [[rng.randint(0, 9) if j > i and rng.random() < 0.6 else INF
                 for j in range(n)] for i in range(n)]
        A = Matrix(MIN_PLUS, rows)
        assert closure_triangular(A) == closure_gauss(A)
        assert closure_triangular(A.transpose()) == closure_gauss(A).transpose()


def test_closure_equals_path_enumeration():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 5)
        rows = random_min_plus(rng, n, density=0.6, diag_inf=False)
        assert closure_gauss(Matrix(MIN_PLUS, rows)).tolist() == min_plus_closure_by_paths(rows)


def test_least_solution_against_lattice_search():
    rng = random.Random(6)
    for _ in range(3):
        rows = random_min_plus(rng, 4, density=0.6, diag_inf=False)
        B = [rng.choice([INF] + list(range(10))) for _ in range(4)]
        x = solve_bellman(Matrix(MIN_PLUS, rows), Vector(MIN_PLUS, B))
        found, bad = least_solution_lattice_check(rows, B, x.entries)
        assert found >= 1
        assert bad == []


def test_zero_weight_cycle_gives_many_solutions():
    # 0 <-> 1 with weight 0: any x0 = x1 <= b works, the least (natural order) is b
    rows = [[INF, 0, INF, INF], [0, INF, INF, INF], [INF, INF, INF, 1], [INF, INF, INF, INF]]
    B = [5, INF, INF, 2]
    x = solve_bellman(Matrix(MIN_PLUS, rows), Vector(MIN_PLUS, B))
    assert x.entries == (5, 5, 3, 2)
    found, bad = least_solution_lattice_check(rows, B, x.entries)
    assert found > 1 and bad == []


def test_dimension_checks():
    A = Matrix(MIN_PLUS, [[0, 1]])
    with pytest.raises(DimensionMismatch):
        closure_gauss(A)
    with pytest.raises(DimensionMismatch):
        solve_bellman(Matrix(MIN_PLUS, [[0]]), Vector(MIN_PLUS, [0, 0]))
    with pytest.raises(DimensionMismatch):
        Matrix(MIN_PLUS, [[0, 1], [2]])
