"""Command-line front end.

    tropica closure --semiring min-plus --algorithm gauss --input a.json
    tropica solve --input bellman.json --dot graph.dot

Exit status: 0 success, 1 bad input, 2 solver failure (divergence, no
fixpoint, ...), 3 a result failed its own self-check.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cellular, convexity, matrix, spectral
from .errors import ResidualError, SolverError, TropicaError, UnsupportedSemiring
from .matrix import Matrix
from .serialize import (
    ParseError,
    dumps,
    encode_scalar,
    infer_exact,
    matrix_from_json,
    matrix_to_json,
    parse_scalar,
    semiring_from_json,
    to_dot,
    vector_from_json,
    vector_to_json,
)

COMMANDS = (
    "closure",
    "solve",
    "eig",
    "extremals",
    "weak-basis",
    "type",
    "definite-closure",
    "hyperplane",
)
MAX_ORDERED_ONLY = {"eig", "extremals", "weak-basis", "type", "definite-closure"}
DEFAULT_MAX_DIM = 512


class SelfCheckFailed(Exception):
    pass


def max_dim() -> int:
    raw = os.environ.get("TROPICA_MAX_DIM")
    if not raw:
        return DEFAULT_MAX_DIM
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"TROPICA_MAX_DIM must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropica",
        description="Idempotent-semiring linear algebra on graph problems.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--semiring", help="overrides the input's 'semiring' key")
    parser.add_argument(
        "--algorithm",
        choices=matrix.ALGORITHMS,
        default="auto",
        help="closure / Bellman algorithm (default: auto)",
    )
    parser.add_argument("--input", help="input JSON file (default: stdin)")
    parser.add_argument("--output", help="result JSON file (default: stdout)")
    parser.add_argument("--dot", metavar="PATH", help="also write the graph of A as DOT")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--float", dest="exact", action="store_false", default=None)
    mode.add_argument("--exact", dest="exact", action="store_true")
    return parser


def _read_input(path):
    try:
        if path is None:
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read input: {e}") from None


def _check_dim(*sizes):
    cap = max_dim()
    for n in sizes:
        if n > cap:
            raise ParseError(f"dimension {n} exceeds the cap of {cap} (TROPICA_MAX_DIM)")


def _load_matrix(obj, s, exact):
    A = matrix_from_json(obj, s, exact)
    _check_dim(A.rows, A.cols)
    return A


def _cmd_closure(obj, s, exact, args):
    A = _load_matrix(obj, s, exact)
    if not A.is_square():
        raise ParseError("closure needs a square matrix")
    star = matrix.closure(A, args.algorithm)
    identity = Matrix.identity(s, A.rows)
    tol = 0.0 if exact and s.idempotent else 1e-9
    if not star.close_to(identity + A @ star, tol):
        raise SelfCheckFailed("closure does not satisfy A* = I + A A*")
    return matrix_to_json(star), A, None


def _cmd_solve(obj, s, exact, args):
    A = _load_matrix(obj, s, exact)
    if "rhs" not in obj:
        raise ParseError("solve needs an 'rhs' vector")
    B = vector_from_json(obj["rhs"], s, exact)
    if not A.is_square() or len(B) != A.rows:
        raise ParseError("solve needs a square matrix and a conformal 'rhs'")
    x = matrix.solve_bellman(A, B, args.algorithm)
    return vector_to_json(x), A, x


def _cmd_eig(obj, s, exact, args):
    A = _load_matrix(obj, s, exact)
    if not A.is_square():
        raise ParseError("eig needs a square matrix")
    res = spectral.eig_space(A)
    tol = 0.0 if not isinstance(res.lam, float) else 1e-9
    for v in res.basis:
        if not spectral.eig_residual_ok(A, res.lam, v, tol):
            raise SelfCheckFailed("basis vector violates A v = lambda v")
    out = {
        "lambda": encode_scalar(res.lam),
        "critical": list(res.critical),
        "basis": [[encode_scalar(x) for x in v] for v in res.basis],
    }
    return out, A, None


def _load_points(obj, s, exact):
    pts = obj.get("points")
    if not isinstance(pts, list) or not pts or not all(isinstance(p, list) for p in pts):
        raise ParseError("'points' must be a non-empty list of vectors")
    S = convexity.PointSet(s, [[parse_scalar(x, s, exact) for x in p] for p in pts])
    if "dim" in obj and obj["dim"] != S.dim:
        raise ParseError(f"'dim' is {obj['dim']} but points have dimension {S.dim}")
    _check_dim(S.dim)
    return S


def _check_basis(S, basis):
    for p in S:
        if not convexity.is_combination(p, basis):
            raise SelfCheckFailed("an input point is not generated by the weak basis")


def _point_set_json(P):
    return {
        "semiring": P.semiring.tag,
        "dim": P.dim,
        "points": [[encode_scalar(x) for x in p] for p in P],
    }


def _cmd_extremals(obj, s, exact, args):
    S = _load_points(obj, s, exact)
    report = convexity.extremals_partial_minima(S)
    basis = convexity.weak_basis(S)
    _check_basis(S, basis)
    out = {
        "extremal_indices": list(report.extremal_indices),
        "redundant_indices": list(report.redundant_indices),
        "witnesses": {str(i): list(js) for i, js in sorted(report.witnesses.items())},
        "weak_basis": _point_set_json(basis)["points"],
    }
    return out, None, None


def _cmd_weak_basis(obj, s, exact, args):
    S = _load_points(obj, s, exact)
    basis = convexity.weak_basis(S)
    _check_basis(S, basis)
    return _point_set_json(basis), None, None


def _cmd_type(obj, s, exact, args):
    A = _load_matrix(obj, s, exact)
    if "y" not in obj:
        raise ParseError("type needs a 'y' vector")
    y = vector_from_json(obj["y"], s, exact)
    if len(y) != A.rows:
        raise ParseError("'y' must have one entry per matrix row")
    return cellular.comb_type(y.entries, A).to_json(), None, None


def _cmd_definite_closure(obj, s, exact, args):
    A = _load_matrix(obj, s, exact)
    if not A.is_square():
        raise ParseError("definite-closure needs a square matrix")
    form = cellular.max_weight_permutation(A)
    tol = 0.0 if exact else 1e-9
    if not cellular.is_definite(form.normalized, tol):
        raise SelfCheckFailed("definite form is not definite")
    out = matrix_to_json(matrix.closure_gauss(form.normalized))
    out["sigma"] = list(form.sigma)
    out["weight"] = encode_scalar(form.weight)
    return out, A, None


def _cmd_hyperplane(obj, s, exact, args):
    if s.tag != "max-plus":
        raise UnsupportedSemiring("hyperplane is a max-plus predicate")
    for key in ("x", "a", "b"):
        if not isinstance(obj.get(key), list):
            raise ParseError(f"hyperplane needs a list '{key}'")
    x = [parse_scalar(v, s, exact) for v in obj["x"]]
    a = [parse_scalar(v, s, exact) for v in obj["a"]]
    b = [parse_scalar(v, s, exact) for v in obj["b"]]
    return {"member": convexity.hyperplane_member(x, a, b)}, None, None


HANDLERS = {
    "closure": _cmd_closure,
    "solve": _cmd_solve,
    "eig": _cmd_eig,
    "extremals": _cmd_extremals,
    "weak-basis": _cmd_weak_basis,
    "type": _cmd_type,
    "definite-closure": _cmd_definite_closure,
    "hyperplane": _cmd_hyperplane,
}


def run(args) -> int:
    """Execute one parsed request; returns the process exit status."""
    try:
        obj = _read_input(args.input)
        if not isinstance(obj, dict):
            raise ParseError("input JSON must be an object")
        if obj.get("semiring") is None and args.command == "hyperplane" and not args.semiring:
            obj = {**obj, "semiring": "max-plus"}
        s = semiring_from_json(obj, args.semiring)
        if args.command in MAX_ORDERED_ONLY and s.tag not in ("max-plus", "max-times"):
            raise UnsupportedSemiring(f"{args.command} needs max-plus or max-times, not {s.tag}")
        if args.algorithm != "auto" and args.command not in ("closure", "solve"):
            raise ParseError(f"--algorithm does not apply to {args.command}")
        exact = infer_exact(obj) if args.exact is None else args.exact
        result, A, node_values = HANDLERS[args.command](obj, s, exact, args)
    except (ResidualError, SelfCheckFailed) as e:
        print(f"tropica: self-check failed: {e}", file=sys.stderr)
        return 3
    except SolverError as e:
        print(f"tropica: solver error: {e}", file=sys.stderr)
        return 2
    except (TropicaError, TypeError, ValueError) as e:
        print(f"tropica: bad input: {e}", file=sys.stderr)
        return 1

    text = dumps(result)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.dot:
        if A is None:
            print(f"tropica: --dot ignored for {args.command}", file=sys.stderr)
        else:
            with open(args.dot, "w") as fh:
                fh.write(to_dot(A, node_values))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
