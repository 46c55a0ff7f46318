"""JSON formats for algebras, operators and homology reports.

Rationals are written as strings ``"p/q"`` (``"p"`` when integral) and parsed
with :class:`fractions.Fraction`. Parse errors raise :class:`InputError`
carrying a JSON-path style location.
"""

import json
import re
from fractions import Fraction

from .algebra import (
    AlgebraError,
    FinDimAlgebra,
    base_field,
    dual_numbers,
    group_algebra_cyclic,
    matrix_algebra,
    truncated_poly,
)
from .jacobi import JacobiOperator, TailSequence
from .linalg import as_rational

__all__ = [
    "InputError",
    "rat_str",
    "parse_rat",
    "algebra_to_json",
    "algebra_from_json",
    "algebra_by_name",
    "operator_to_json",
    "operator_from_json",
    "load_json",
]


class InputError(ValueError):
    def __init__(self, where, message):
        self.where = where
        super().__init__(f"{where}: {message}")


def rat_str(x):
    return str(Fraction(x))


def parse_rat(s, where):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise InputError(where, f"expected a rational string, got {s!r}")
    try:
        return as_rational(Fraction(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(where, f"bad rational {s!r}") from exc


def _need(data, key, kind, where):
    if not isinstance(data, dict):
        raise InputError(where, "expected an object")
    if key not in data:
        raise InputError(where, f"missing field {key!r}")
    value = data[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise InputError(f"{where}.{key}", f"expected an integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        names = "/".join(k.__name__ for k in kind) if isinstance(kind, tuple) else kind.__name__
        raise InputError(f"{where}.{key}", f"expected {names}, got {type(value).__name__}")
    return value


# -- algebras -----------------------------------------------------------------


def algebra_to_json(A):
    table = [
        [{str(k): rat_str(c) for k, c in sorted(A.mult[i][j].items())} for j in range(A.dim)]
        for i in range(A.dim)
    ]
    return {
        "dim": A.dim,
        "unit": [rat_str(u) for u in A.unit],
        "table": table,
        "label": A.label,
    }


def algebra_from_json(data, where="$"):
    dim = _need(data, "dim", int, where)
    if dim < 1:
        raise InputError(f"{where}.dim", "must be positive")
    unit = _need(data, "unit", list, where)
    if len(unit) != dim:
        raise InputError(f"{where}.unit", f"expected {dim} entries, got {len(unit)}")
    unit = [parse_rat(u, f"{where}.unit[{i}]") for i, u in enumerate(unit)]
    rows = _need(data, "table", list, where)
    if len(rows) != dim:
        raise InputError(f"{where}.table", f"expected {dim} rows, got {len(rows)}")
    table = {}
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise InputError(f"{where}.table[{i}]", f"expected a list of {dim} maps")
        for j, cell in enumerate(row):
            loc = f"{where}.table[{i}][{j}]"
            if not isinstance(cell, dict):
                raise InputError(loc, "expected an object {k: \"p/q\"}")
            vec = {}
            for k, c in cell.items():
                try:
                    kk = int(k)
                except ValueError:
                    raise InputError(loc, f"bad basis index {k!r}") from None
                if not 0 <= kk < dim:
                    raise InputError(loc, f"basis index {kk} out of range")
                vec[kk] = parse_rat(c, f"{loc}[{k!r}]")
            if vec:
                table[(i, j)] = vec
    label = data.get("label", "A")
    if not isinstance(label, str):
        raise InputError(f"{where}.label", "expected a string")
    try:
        return FinDimAlgebra(dim, table, unit, label)
    except AlgebraError as exc:
        raise InputError(where, str(exc)) from exc


_NAMED = [
    (re.compile(r"^(Q|base_field|k)$"), lambda m: base_field()),
    (re.compile(r"^(Q\[eps\]|dual_numbers)$"), lambda m: dual_numbers()),
    (re.compile(r"^Q\[x\]/\(x\^(\d+)\)$"), lambda m: truncated_poly(int(m.group(1)))),
    (re.compile(r"^truncated_poly:(\d+)$"), lambda m: truncated_poly(int(m.group(1)))),
    (re.compile(r"^Q\[Z/(\d+)\]$"), lambda m: group_algebra_cyclic(int(m.group(1)))),
    (re.compile(r"^group_algebra_cyclic:(\d+)$"), lambda m: group_algebra_cyclic(int(m.group(1)))),
]


def algebra_by_name(name):
    """Resolve built-in labels like ``Q``, ``Q[eps]``, ``Q[Z/2]``, ``M2(Q[eps])``."""
    m = re.match(r"^M(\d+)\((.*)\)$", name)
    if m:
        return matrix_algebra(algebra_by_name(m.group(2)), int(m.group(1)))
    for pattern, build in _NAMED:
        m = pattern.match(name)
        if m:
            return build(m)
    raise InputError("$", f"unknown algebra name {name!r}")


# -- operators ----------------------------------------------------------------


def _coords(x):
    return [rat_str(c) for c in x.coords]


def operator_to_json(a, inline_ring=False):
    ring = algebra_to_json(a.ring) if inline_ring else a.ring.label
    terms = []
    for m, seq in a.terms.items():
        terms.append(
            {
                "offset": m,
                "left_tail": _coords(seq.left),
                "window_start": seq.start,
                "window": [_coords(x) for x in seq.window],
                "right_tail": _coords(seq.right),
            }
        )
    return {"ring": ring, "terms": terms}


def _element(ring, arr, where):
    if not isinstance(arr, list) or len(arr) != ring.dim:
        raise InputError(where, f"expected {ring.dim} rational strings")
    return ring.element([parse_rat(c, f"{where}[{i}]") for i, c in enumerate(arr)])


def operator_from_json(data, where="$"):
    ring_spec = _need(data, "ring", (str, dict), where)
    if isinstance(ring_spec, str):
        try:
            ring = algebra_by_name(ring_spec)
        except InputError:
            raise InputError(f"{where}.ring", f"unknown algebra name {ring_spec!r}") from None
    else:
        ring = algebra_from_json(ring_spec, f"{where}.ring")
    terms = {}
    for t, term in enumerate(_need(data, "terms", list, where)):
        loc = f"{where}.terms[{t}]"
        m = _need(term, "offset", int, loc)
        if m in terms:
            raise InputError(f"{loc}.offset", f"duplicate offset {m}")
        left = _element(ring, _need(term, "left_tail", list, loc), f"{loc}.left_tail")
        start = _need(term, "window_start", int, loc)
        window = [
            _element(ring, x, f"{loc}.window[{i}]")
            for i, x in enumerate(_need(term, "window", list, loc))
        ]
        right = _element(ring, _need(term, "right_tail", list, loc), f"{loc}.right_tail")
        terms[m] = TailSequence(left, start, window, right)
    return JacobiOperator(ring, terms)


def load_json(path):
    """Read a JSON file, turning syntax errors into :class:`InputError`."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(path), exc.strerror or str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
