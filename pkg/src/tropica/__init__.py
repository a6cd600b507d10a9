"""Linear algebra over idempotent semirings: closures, Bellman equations,
max-plus spectral theory, tropical convexity and cellular closures."""

from .cellular import (
    CombinatorialType,
    DefiniteForm,
    build_AS,
    closure_equal_iff_span_equal,
    comb_type,
    definite_closure,
    definite_form,
    is_definite,
    max_weight_permutation,
    region_eigenspace,
)
from .convexity import (
    ExtremalsReport,
    Membership,
    PointSet,
    extremals_naive,
    extremals_partial_minima,
    hyperplane_member,
    is_combination,
    leq_j,
    support,
    weak_basis,
)
from .errors import *  # noqa: F401,F403
from .matrix import (
    Matrix,
    Vector,
    closure,
    closure_escalator,
    closure_gauss,
    closure_gauss_seidel,
    closure_jacobi,
    closure_triangular,
    mat_mul,
    solve_bellman,
)
from .semiring import (
    BOOLEAN,
    MAX_MIN,
    MAX_PLUS,
    MAX_TIMES,
    MIN_PLUS,
    NEG_INF,
    PLUS_TIMES,
    POS_INF,
    MaxMin,
    Semiring,
    add,
    divide,
    get_semiring,
    mul,
    nat_leq,
    scalar_star,
)
from .spectral import SpectralResult, eig_space, max_cycle_mean

__version__ = "0.1.0"
