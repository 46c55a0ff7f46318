"""Command-line entry point: ``deloop <command> [options]``.

Exit status: 0 success, 1 a check failed, 2 bad input, 3 size budget exceeded.
Every flag in ``ENV_FLAGS`` can also be set through ``DELOOP_<NAME>``; an
explicit flag wins over the environment.
"""

import argparse
import csv
import io
import json
import os
import re
import sys

from .algebra import AlgebraError, base_field
from .budget import DEFAULT_BUDGET, DEFAULT_CAP, SizeBudgetExceeded
from .hochschild import RouteDisagreement, cyclic_homology, hochschild_homology
from .io import InputError, algebra_by_name, algebra_from_json, load_json, operator_from_json, rat_str
from .jacobi import (
    RingMismatch,
    cocycle,
    cocycle_identity_check,
    in_I0,
    in_Iminus,
    in_Iplus,
    lattice_witness_backward,
    lattice_witness_forward,
    make_rng,
    op_commutator,
    random_operator,
    shift_power,
    split,
    trace_I0,
    validate_lattice_witnesses,
)
from .lie import LieAlgebraError, abelian, gl, lie_homology, primitive_dim, sl2
from .verify import FAIL, run_criterion, verify_all

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = ("hh", "hc", "lie-homology", "prim", "cocycle-check", "ideal-check", "lattice-bound", "verify")
FORMATS = ("json", "csv", "text")
DEFAULT_SEED = 0
ENV_FLAGS = ("cap", "budget", "seed", "format", "input")


class UsageError(Exception):
    pass


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise ValueError(f"{text} is negative")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise ValueError(f"{text} is not positive")
    return value


def _argtype(conv):
    def parse(text):
        try:
            return conv(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    parse.__name__ = conv.__name__.strip("_")
    return parse


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_argtype(_nonneg), help=f"degree cap (default {DEFAULT_CAP})")
    common.add_argument("--budget", type=_argtype(_positive), help=f"largest chain space allowed (default {DEFAULT_BUDGET})")
    common.add_argument("--seed", type=_argtype(_nonneg), help=f"seed for randomized checks (default {DEFAULT_SEED})")
    common.add_argument("--format", choices=FORMATS, help="output format (default text)")
    common.add_argument("--input", help="JSON input: an algebra, or an operator / list of operators")
    common.add_argument("--algebra", help="built-in algebra name, e.g. Q, Q[eps], Q[Z/2], M2(Q)")
    common.add_argument("--n", type=_argtype(_positive), default=1, help="matrix size for gl_n(A) (default 1)")
    common.add_argument("--lie", help="built-in Lie algebra: sl2, gl<n>, ab<d>")
    common.add_argument("--trials", type=_argtype(_nonneg), default=100, help="random trials (default 100)")
    common.add_argument("--at", type=int, default=0, help="lattice-bound: index n for the forward witness")
    common.add_argument("--m", type=int, default=0, help="lattice-bound: index m for the backward witness")

    parser = argparse.ArgumentParser(prog="deloop", description="Exact Hochschild, cyclic and Lie homology checks.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "hh": "Hochschild homology of an algebra",
        "hc": "cyclic homology (two routes, must agree)",
        "lie-homology": "Chevalley-Eilenberg homology",
        "prim": "Lie homology with primitive dimensions",
        "cocycle-check": "two-cocycle table and identity checks",
        "ideal-check": "ideal membership of operators",
        "lattice-bound": "lattice witnesses of operators",
        "verify": "run every acceptance criterion",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def resolve_config(args, environ):
    """Fill unset flags from ``DELOOP_*`` variables, then from defaults."""
    env_types = {"cap": _nonneg, "budget": _positive, "seed": _nonneg, "format": str, "input": str}
    defaults = {"cap": DEFAULT_CAP, "budget": DEFAULT_BUDGET, "seed": DEFAULT_SEED, "format": "text", "input": None}
    for name in ENV_FLAGS:
        if getattr(args, name) is not None:
            continue
        raw = environ.get(f"DELOOP_{name.upper()}")
        if raw is None or raw == "":
            setattr(args, name, defaults[name])
            continue
        try:
            value = env_types[name](raw)
        except ValueError:
            raise UsageError(f"DELOOP_{name.upper()}: bad value {raw!r}") from None
        if name == "format" and value not in FORMATS:
            raise UsageError(f"DELOOP_FORMAT: expected one of {', '.join(FORMATS)}, got {raw!r}")
        setattr(args, name, value)
    return args


# -- inputs -------------------------------------------------------------------


def _load_algebra(args):
    if args.input and args.algebra:
        raise UsageError("give either --input or --algebra, not both")
    if args.input:
        return algebra_from_json(load_json(args.input))
    if args.algebra:
        return algebra_by_name(args.algebra)
    return base_field()


def _load_lie(args):
    if args.lie:
        m = re.match(r"^(sl2|gl(\d+)|ab(\d+))$", args.lie)
        if not m:
            raise InputError("--lie", f"unknown Lie algebra {args.lie!r}")
        if m.group(2):
            return gl(int(m.group(2)), _load_algebra(args))
        if m.group(3):
            return abelian(int(m.group(3)))
        return sl2()
    return gl(args.n, _load_algebra(args))


def _load_operators(args):
    data = load_json(args.input)
    if isinstance(data, list):
        return [operator_from_json(x, f"$[{i}]") for i, x in enumerate(data)]
    return [operator_from_json(data)]


# -- output -------------------------------------------------------------------


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def _cell(x):
    x = _plain(x)
    if isinstance(x, (dict, list)):
        return json.dumps(x, separators=(",", ":"))
    return "" if x is None else str(x)


def render(result, fmt):
    """``result`` has ``rows`` (list of dicts) plus scalar header fields."""
    if fmt == "json":
        return json.dumps(_plain(result["json"]), indent=2) + "\n"
    rows = result["rows"]
    columns = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in columns])
        return buf.getvalue()
    lines = [f"{k}: {_cell(v)}" for k, v in result["header"].items()]
    table = [columns] + [[_cell(row[c]) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(columns))]
    for r in table:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _homology_result(report, command):
    rows = []
    for n in sorted(report.dims):
        row = {"degree": n, "dim": report.dims[n]}
        if report.prim_dims is not None:
            row["prim_dim"] = report.prim_dims.get(n, 0)
        rows.append(row)
    return {
        "json": report.to_json(),
        "header": {"command": command, "label": report.label},
        "rows": rows,
    }, EXIT_OK


def _check_result(command, seed, rows, failures, extra=None):
    status = "pass" if not failures else "fail"
    out = {"command": command, "seed": seed, "status": status, "rows": rows, "failures": failures}
    if extra:
        out.update(extra)
    header = {"command": command, "seed": seed, "status": status}
    if extra:
        header.update(extra)
    if failures:
        header["failures"] = "; ".join(failures[:5])
    return {"json": out, "header": header, "rows": rows}, EXIT_OK if not failures else EXIT_FAIL


# -- commands -----------------------------------------------------------------


def cmd_hh(args):
    A = _load_algebra(args)
    return _homology_result(hochschild_homology(A, args.cap, args.budget), "hh")


def cmd_hc(args):
    A = _load_algebra(args)
    return _homology_result(cyclic_homology(A, args.cap, args.budget), "hc")


def cmd_lie_homology(args):
    g = _load_lie(args)
    return _homology_result(lie_homology(g, args.cap, args.budget, representatives=False), "lie-homology")


def cmd_prim(args):
    g = _load_lie(args)
    report = lie_homology(g, args.cap, args.budget)
    report.prim_dims = {n: primitive_dim(g, n, args.cap, args.budget, report) for n in range(1, args.cap + 1)}
    return _homology_result(report, "prim")


def cmd_cocycle_check(args):
    failures = []
    if args.input:
        ops = _load_operators(args)
        rows = []
        for i, a in enumerate(ops):
            for j, b in enumerate(ops):
                if i < j:
                    c = cocycle(a, b)
                    rows.append({"a": i, "b": j, "c(a,b)": [rat_str(x) for x in c.coords]})
                    if cocycle(b, a) != -c:
                        failures.append(f"antisymmetry on ({i}, {j})")
        for i in range(len(ops)):
            for j in range(i + 1, len(ops)):
                for k in range(j + 1, len(ops)):
                    if not cocycle_identity_check(ops[i], ops[j], ops[k]):
                        failures.append(f"cocycle identity on ({i}, {j}, {k})")
        return _check_result("cocycle-check", args.seed, rows, failures)
    rows = []
    for j in range(1, 5):
        Tj, Tmj = shift_power(j), shift_power(-j)
        value = cocycle(Tj, Tmj).coords[0]
        commutator_zero = op_commutator(Tj, Tmj).is_zero()
        ok = value == -j and commutator_zero
        rows.append({"j": j, "c(T^j,T^-j)": rat_str(value), "expected": rat_str(-j), "commutator_zero": commutator_zero,
                     "status": "pass" if ok else "fail"})
        if not ok:
            failures.append(f"c(T^{j}, T^-{j}) = {value}")
    rng = make_rng(args.seed)
    for t in range(args.trials):
        a, b, c = (random_operator(rng, band=3) for _ in range(3))
        if cocycle(a, a) or cocycle(a, b) != -cocycle(b, a):
            failures.append(f"antisymmetry, random trial {t}")
        if not cocycle_identity_check(a, b, c):
            failures.append(f"cocycle identity, random trial {t}")
    return _check_result("cocycle-check", args.seed, rows, failures, {"random_triples": args.trials})


def _suite(name, args, command):
    entry = run_criterion(name, args.seed, args.budget)
    rows = [{"criterion": entry.name, "status": entry.status, "computed": entry.computed}]
    failures = [entry.detail or entry.name] if entry.status == FAIL else []
    return _check_result(command, args.seed, rows, failures)


def cmd_ideal_check(args):
    if not args.input:
        return _suite("c6_ideal_suite", args, "ideal-check")
    failures = []
    rows = []
    for i, a in enumerate(_load_operators(args)):
        p, m = split(a)
        if not (in_Iplus(p) and in_Iminus(m) and p + m == a):
            failures.append(f"split of operator {i}")
        plus, minus = in_Iplus(a), in_Iminus(a)
        zero = in_I0(a)
        if zero != (plus and minus):
            failures.append(f"I0 membership of operator {i}")
        rows.append({
            "operator": i,
            "in_Iplus": plus,
            "in_Iminus": minus,
            "in_I0": zero,
            "trace": [rat_str(x) for x in trace_I0(a).coords] if zero else None,
        })
    return _check_result("ideal-check", args.seed, rows, failures)


def cmd_lattice_bound(args):
    if not args.input:
        return _suite("c8_lattice_membership", args, "lattice-bound")
    failures = []
    rows = []
    for i, a in enumerate(_load_operators(args)):
        problems = validate_lattice_witnesses(a, args.at, args.m)
        failures.extend(f"operator {i}: {p}" for p in problems)
        rows.append({
            "operator": i,
            "n": args.at,
            "forward": lattice_witness_forward(a, args.at),
            "m": args.m,
            "backward": lattice_witness_backward(a, args.m),
            "status": "fail" if problems else "pass",
        })
    return _check_result("lattice-bound", args.seed, rows, failures)


def cmd_verify(args):
    report = verify_all(args.seed, args.budget)
    rows = [
        {"criterion": e.name, "status": e.status, "computed": e.computed, "expected": e.expected, "detail": e.detail}
        for e in report.entries
    ]
    header = {"command": "verify", "seed": args.seed, "budget": args.budget}
    if args.format == "text":
        rows = [{"criterion": r["criterion"], "status": r["status"], "detail": r["detail"]} for r in rows]
    return {"json": report.to_json(), "header": header, "rows": rows}, report.exit_status


HANDLERS = {
    "hh": cmd_hh,
    "hc": cmd_hc,
    "lie-homology": cmd_lie_homology,
    "prim": cmd_prim,
    "cocycle-check": cmd_cocycle_check,
    "ideal-check": cmd_ideal_check,
    "lattice-bound": cmd_lattice_bound,
    "verify": cmd_verify,
}

def run(argv=None, environ=None, stdout=None, stderr=None):
    """Parse ``argv``, run the command and return the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    environ = os.environ if environ is None else environ
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        args = resolve_config(args, environ)
        result, status = HANDLERS[args.command](args)
    except (InputError, UsageError, AlgebraError, LieAlgebraError, RingMismatch) as exc:
        print(f"deloop: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except SizeBudgetExceeded as exc:
        print(f"deloop: size budget exceeded in degree {exc.degree}: {exc}", file=stderr)
        return EXIT_BUDGET
    except RouteDisagreement as exc:
        print(f"deloop: {exc}", file=stderr)
        return EXIT_FAIL
    stdout.write(render(result, args.format))
    return status


def main():
    sys.exit(run())
