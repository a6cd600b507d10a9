"""JSON and DOT encodings.

Scalars: JSON numbers for ints and floats, ``"inf"`` / ``"-inf"`` for the
infinities, ``true`` / ``false`` for booleans and ``"p/q"`` strings for
non-integral exact rationals, so exact results survive a round trip.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction

from .matrix import Matrix, Vector
from .semiring import NEG_INF, POS_INF, Semiring, get_semiring, is_inf

_RATIONAL = re.compile(r"^\s*-?\d+\s*/\s*\d+\s*$")


class ParseError(ValueError):
    pass


def raw_is_integral(x) -> bool:
    if isinstance(x, bool) or isinstance(x, int):
        return True
    if isinstance(x, str):
        return True  # sentinels and p/q strings are exact already
    return False


def parse_scalar(x, s: Semiring, exact: bool = True):
    if isinstance(x, str):
        t = x.strip().lower()
        if t in ("inf", "+inf", "infinity"):
            x = POS_INF
        elif t in ("-inf", "-infinity"):
            x = NEG_INF
        elif _RATIONAL.match(t):
            x = Fraction(t.replace(" ", ""))
            if not exact:
                x = float(x)
        else:
            raise ParseError(f"cannot read scalar {x!r}")
    elif isinstance(x, float) and exact:
        x = Fraction(repr(x))
    try:
        return s.coerce(x, exact)
    except (TypeError, ValueError) as e:
        raise ParseError(str(e)) from None


def encode_scalar(x):
    if is_inf(x):
        return repr(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return f"{x.numerator}/{x.denominator}"
    return x


def semiring_from_json(obj, override: str | None = None) -> Semiring:
    tag = override or obj.get("semiring")
    if tag is None:
        raise ParseError("no semiring given (use --semiring or a 'semiring' key)")
    bounds = obj.get("bounds")
    if bounds is not None:
        if not isinstance(bounds, list) or len(bounds) != 2:
            raise ParseError("'bounds' must be [lo, hi]")
        bounds = [_bound(b) for b in bounds]
    try:
        return get_semiring(tag, bounds)
    except Exception as e:
        raise ParseError(str(e)) from None


def _raw_values(obj):
    for key in ("entries", "rhs", "points", "y", "x", "a", "b"):
        val = obj.get(key)
        if val is None:
            continue
        stack = [val]
        while stack:
            v = stack.pop()
            if isinstance(v, list):
                stack.extend(v)
            else:
                yield v


def _bound(b):
    if isinstance(b, str):
        t = b.strip().lower()
        if t in ("inf", "+inf"):
            return POS_INF
        if t == "-inf":
            return NEG_INF
        if _RATIONAL.match(t):
            return Fraction(t.replace(" ", ""))
        raise ParseError(f"bad bound {b!r}")
    if isinstance(b, (int, float)) and not isinstance(b, bool):
        return b
    raise ParseError(f"bad bound {b!r}")


def infer_exact(obj) -> bool:
    """Exact arithmetic unless some input weight is a non-integral float."""
    return all(raw_is_integral(v) or float(v).is_integer() for v in _raw_values(obj))


def matrix_from_json(obj, s: Semiring, exact: bool = True) -> Matrix:
    try:
        rows = obj["entries"]
    except (KeyError, TypeError):
        raise ParseError("matrix JSON needs an 'entries' list") from None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("'entries' must be a non-empty list of rows")
    if "rows" in obj and obj["rows"] != len(rows):
        raise ParseError(f"'rows' is {obj['rows']} but {len(rows)} rows given")
    if "cols" in obj and any(len(r) != obj["cols"] for r in rows):
        raise ParseError(f"every row must have {obj['cols']} entries")
    if len({len(r) for r in rows}) != 1:
        raise ParseError("ragged matrix rows")
    return Matrix(s, [[parse_scalar(x, s, exact) for x in r] for r in rows])


def matrix_to_json(A: Matrix) -> dict:
    out = {"semiring": A.semiring.tag, "rows": A.rows, "cols": A.cols}
    if A.semiring.tag == "max-min":
        out["bounds"] = [encode_scalar(A.semiring.zero), encode_scalar(A.semiring.one)]
    out["entries"] = [[encode_scalar(x) for x in r] for r in A.entries]
    return out


def vector_from_json(values, s: Semiring, exact: bool = True) -> Vector:
    if not isinstance(values, list):
        raise ParseError("vector must be a JSON list")
    return Vector(s, [parse_scalar(x, s, exact) for x in values])


def vector_to_json(v: Vector) -> dict:
    return {
        "semiring": v.semiring.tag,
        "len": len(v),
        "entries": [encode_scalar(x) for x in v],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _dot_id(i):
    return f"n{i}"


def _dot_escape(text) -> str:
    return str(text).replace("\\", "\\\\").replace('"', '\\"')


def to_dot(A: Matrix, node_values=None, name: str = "G") -> str:
    """Weighted digraph of ``A``: an edge i -> j for every nonzero ``A[i, j]``."""
    s = A.semiring
    lines = [f"digraph {name} {{"]
    for i in range(A.rows):
        label = str(i)
        if node_values is not None:
            label = f"{i}: {encode_scalar(node_values[i])}"
        lines.append(f'  {_dot_id(i)} [label="{_dot_escape(label)}"];')
    for i in range(A.rows):
        for j in range(A.cols):
            w = A[i, j]
            if w != s.zero:
                lines.append(
                    f'  {_dot_id(i)} -> {_dot_id(j)} [label="{_dot_escape(encode_scalar(w))}"];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"
