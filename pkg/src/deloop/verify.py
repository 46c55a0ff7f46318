"""The one-shot verification run.

Each criterion is a function ``(seed, budget) -> Entry``. Randomized criteria
draw from ``random.Random`` seeded from the run seed, so a report is
reproducible from the seed it prints. Failures are data: a criterion never
raises, except that a size-budget abort turns into a ``skipped`` entry.
"""

import time
from dataclasses import dataclass, field

from .algebra import base_field, dual_numbers, group_algebra_cyclic, matrix_algebra
from .budget import DEFAULT_BUDGET, SizeBudgetExceeded
from .hochschild import (
    bicomplex_homology_dims,
    hochschild_homology,
    hochschild_two_column_dims,
    lambda_homology_dims,
)
from .jacobi import (
    cocycle,
    cocycle_identity_check,
    in_I0,
    in_Iminus,
    in_Iplus,
    lattice_witness_backward,
    lattice_witness_forward,
    make_rng,
    op_commutator,
    random_finite_operator,
    random_operator,
    shift_power,
    split,
    trace_I0,
    truncate,
    truncated_product,
    validate_lattice_witnesses,
)
from .lie import gl, lie_homology, primitive_dim

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

@dataclass
class Entry:
    name: str
    status: str
    computed: object = None
    expected: object = None
    detail: str = ""
    seconds: float = 0.0

    @property
    def passed(self):
        return self.status == PASS

    def to_json(self):
        return {
            "name": self.name,
            "status": self.status,
            "computed": _jsonable(self.computed),
            "expected": _jsonable(self.expected),
            "detail": self.detail,
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def _tuple(dims):
    return tuple(dims[n] for n in sorted(dims))


def _entry(name, ok, computed, expected, detail=""):
    return Entry(name, PASS if ok else FAIL, computed, expected, detail)


# -- 1 -------------------------------------------------------------------------


def homology_tables(seed, budget):
    start = time.perf_counter()
    Q, D, M2 = base_field(), dual_numbers(), matrix_algebra(base_field(), 2)
    rows = {
        "HC(Q)": (
            lambda_homology_dims(Q, 3, budget),
            bicomplex_homology_dims(Q, 3, budget),
            (1, 0, 1, 0),
        ),
        "HH(M2(Q))": (
            hochschild_homology(M2, 2, budget).dims,
            hochschild_two_column_dims(M2, 2, budget),
            (1, 0, 0),
        ),
        "HH(Q[eps])": (
            hochschild_homology(D, 3, budget).dims,
            hochschild_two_column_dims(D, 3, budget),
            (2, 1, 1, 1),
        ),
    }
    elapsed = time.perf_counter() - start
    computed = {k: (_tuple(a), _tuple(b)) for k, (a, b, _) in rows.items()}
    expected = {k: (e, e) for k, (_, _, e) in rows.items()}
    ok = computed == expected and elapsed < 60
    return _entry("c1_homology_tables", ok, computed, expected, "both routes, limit 60s")


# -- 2 -------------------------------------------------------------------------


def morita_invariance(seed, budget):
    bad = []
    computed = {}
    for A in (base_field(), dual_numbers(), group_algebra_cyclic(2)):
        for n in (2, 3):
            M = matrix_algebra(A, n)
            # degree 3 needs C_4 = M^(x)5; fall back to degree 2 past the budget
            cap = 3 if M.dim**5 <= budget else 2
            hh_A = _tuple(hochschild_homology(A, cap, budget).dims)
            hh_M = _tuple(hochschild_homology(M, cap, budget).dims)
            hc_A = (
                _tuple(lambda_homology_dims(A, cap, budget)),
                _tuple(bicomplex_homology_dims(A, cap, budget)),
            )
            hc_M = (
                _tuple(lambda_homology_dims(M, cap, budget)),
                _tuple(bicomplex_homology_dims(M, cap, budget)),
            )
            computed[M.label] = {"HH": hh_M, "HC": hc_M[0], "degrees": cap}
            if hh_A != hh_M:
                bad.append(f"HH {M.label} {hh_M} != {A.label} {hh_A}")
            if not (hc_A[0] == hc_A[1] == hc_M[0] == hc_M[1]):
                bad.append(f"HC {M.label} {hc_M} != {A.label} {hc_A}")
    return _entry(
        "c2_morita_invariance", not bad, computed, "HH, HC of M_n(A) equal those of A", "; ".join(bad)
    )


# -- 3 -------------------------------------------------------------------------


def lqt_degree_one(seed, budget):
    cases = [(A, n) for A in (base_field(), dual_numbers(), group_algebra_cyclic(2)) for n in (2, 3)]
    cases.append((matrix_algebra(base_field(), 2), 2))
    computed, expected = {}, {}
    for A, n in cases:
        g = gl(n, A)
        h1 = lie_homology(g, 1, budget, representatives=False).dims[1]
        hc0 = lambda_homology_dims(A, 0, budget)[0]
        computed[g.label] = h1
        expected[g.label] = hc0
    return _entry("c3_lqt_degree_one", computed == expected, computed, expected)


# -- 4 -------------------------------------------------------------------------

GL2_PRIM_DIMS = (1, 0, 1, 0)  # degrees 1..4
GL2_TOTAL_DIMS = (1, 1, 1, 1, 0)  # degrees 0..4, as required


def gl2_primitives(seed, budget):
    g = gl(2)
    report = lie_homology(g, 4, budget)
    prim = tuple(primitive_dim(g, n, 4, budget, report) for n in range(1, 5))
    total = _tuple(report.dims)
    ok = prim == GL2_PRIM_DIMS and total == GL2_TOTAL_DIMS
    detail = ""
    if total != GL2_TOTAL_DIMS:
        detail = (
            "H(gl2) = H(sl2) (x) H(Q) = (1,0,0,1) (x) (1,1) gives (1,1,0,1,1); "
            "the required total dims are not attainable"
        )
    return _entry(
        "c4_gl2_primitives",
        ok,
        {"prim": prim, "total": total},
        {"prim": GL2_PRIM_DIMS, "total": GL2_TOTAL_DIMS},
        detail,
    )


# -- 5 -------------------------------------------------------------------------


def degree_two_witness(seed, budget, trials=100):
    rng = make_rng(seed * 1000 + 5)
    bad = []
    for t in range(trials):
        a, b, c = (random_operator(rng, band=3) for _ in range(3))
        if cocycle(a, a) or cocycle(a, b) != -cocycle(b, a):
            bad.append(f"antisymmetry, trial {t}")
        if not cocycle_identity_check(a, b, c):
            bad.append(f"cocycle identity, trial {t}")
    values = {}
    for j in range(1, 5):
        Tj, Tmj = shift_power(j), shift_power(-j)
        values[j] = cocycle(Tj, Tmj).coords[0]
        if values[j] != -j:
            bad.append(f"c(T^{j}, T^-{j}) = {values[j]}")
        if not op_commutator(Tj, Tmj).is_zero():
            bad.append(f"[T^{j}, T^-{j}] != 0")
    return _entry(
        "c5_degree_two_witness",
        not bad,
        {"c(T^j,T^-j)": values, "random_triples": trials},
        {"c(T^j,T^-j)": {j: -j for j in range(1, 5)}},
        "; ".join(bad[:5]),
    )


# -- 6 -------------------------------------------------------------------------


def ideal_suite(seed, budget, trials=100, sandwiches=50):
    rng = make_rng(seed * 1000 + 6)
    bad = []
    plus, minus = [], []
    for t in range(trials):
        a = random_operator(rng)
        p, m = split(a)
        if not in_Iplus(p) or not in_Iminus(m) or p + m != a:
            bad.append(f"split, trial {t}")
        for x in (a, p, m):
            if in_I0(x) != (in_Iplus(x) and in_Iminus(x)):
                bad.append(f"I0 logic, trial {t}")
        plus.append(p)
        minus.append(m)
    for s in range(sandwiches):
        x, y = random_operator(rng, band=2), random_operator(rng, band=2)
        ap, am = rng.choice(plus), rng.choice(minus)
        a0 = random_finite_operator(rng, band=2)
        if not in_Iplus(x * ap * y):
            bad.append(f"I+ closure, sandwich {s}")
        if not in_Iminus(x * am * y):
            bad.append(f"I- closure, sandwich {s}")
        if not in_I0(x * a0 * y):
            bad.append(f"I0 closure, sandwich {s}")
    for t in range(trials):
        a0 = random_finite_operator(rng)
        b = random_operator(rng)
        if trace_I0(op_commutator(a0, b)):
            bad.append(f"trace on [I0, J], trial {t}")
    return _entry("c6_ideal_suite", not bad, {"failures": len(bad)}, {"failures": 0}, "; ".join(bad[:5]))


# -- 7 -------------------------------------------------------------------------


def oracle_coherence(seed, budget, trials=100, N=5):
    rng = make_rng(seed * 1000 + 7)
    bad = []
    for t in range(trials):
        a, b = random_operator(rng), random_operator(rng)
        w = a.band_width + b.band_width
        big = truncated_product(truncate(a, N + w), truncate(b, N + w), a.ring)
        interior = [row[w : w + 2 * N + 1] for row in big[w : w + 2 * N + 1]]
        if interior != truncate(a * b, N):
            bad.append(f"product, trial {t}")
    for t in range(trials):
        a, b, c = (random_operator(rng) for _ in range(3))
        if (a * b) * c != a * (b * c):
            bad.append(f"associativity, trial {t}")
    return _entry("c7_oracle_coherence", not bad, {"failures": len(bad)}, {"failures": 0}, "; ".join(bad[:5]))


# -- 8 -------------------------------------------------------------------------


def lattice_membership(seed, budget, trials=100):
    rng = make_rng(seed * 1000 + 8)
    bad = []
    for t in range(trials):
        a = random_operator(rng)
        n, m = rng.randint(-8, 8), rng.randint(-8, 8)
        problems = validate_lattice_witnesses(a, n, m)
        if problems:
            bad.append(f"trial {t}: {problems[0]}")
    for k in range(-4, 5):
        Tk = shift_power(k)
        for n in range(-3, 4):
            if lattice_witness_forward(Tk, n) != n + k:
                bad.append(f"forward(T^{k}, {n})")
            if lattice_witness_backward(Tk, n) != n - k:
                bad.append(f"backward(T^{k}, {n})")
    return _entry("c8_lattice_membership", not bad, {"failures": len(bad)}, {"failures": 0}, "; ".join(bad[:5]))


CRITERIA = {
    "c1_homology_tables": homology_tables,
    "c2_morita_invariance": morita_invariance,
    "c3_lqt_degree_one": lqt_degree_one,
    "c4_gl2_primitives": gl2_primitives,
    "c5_degree_two_witness": degree_two_witness,
    "c6_ideal_suite": ideal_suite,
    "c7_oracle_coherence": oracle_coherence,
    "c8_lattice_membership": lattice_membership,
}

VERIFY_TIME_LIMIT = 300.0


def run_criterion(name, seed=0, budget=DEFAULT_BUDGET):
    start = time.perf_counter()
    try:
        entry = CRITERIA[name](seed, budget)
    except SizeBudgetExceeded as exc:
        entry = Entry(name, SKIPPED, detail=f"size budget: {exc}")
    entry.seconds = time.perf_counter() - start
    return entry


@dataclass
class VerifyReport:
    seed: int
    budget: int
    entries: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def exit_status(self):
        if any(e.status == FAIL for e in self.entries):
            return 1
        if any(e.status == SKIPPED for e in self.entries):
            return 3
        return 0

    def to_json(self):
        return {
            "seed": self.seed,
            "budget": self.budget,
            "entries": [e.to_json() for e in self.entries],
        }


def verify_all(seed=0, budget=DEFAULT_BUDGET):
    """Run every criterion; entries are sorted by name."""
    start = time.perf_counter()
    entries = [run_criterion(name, seed, budget) for name in CRITERIA]
    others_ok = all(e.passed for e in entries)
    elapsed = time.perf_counter() - start
    not_passed = [e.name for e in entries if not e.passed]
    detail = f"limit {VERIFY_TIME_LIMIT:.0f}s"
    if not_passed:
        detail += "; not passing: " + ", ".join(not_passed)
    if elapsed >= VERIFY_TIME_LIMIT:
        detail += "; time limit exceeded"
    entries.append(
        _entry(
            "c9_full_run",
            others_ok and elapsed < VERIFY_TIME_LIMIT,
            {"all_entries_pass": others_ok},
            {"all_entries_pass": True},
            detail,
        )
    )
    if any(e.status == SKIPPED for e in entries[:-1]) and not any(e.status == FAIL for e in entries[:-1]):
        entries[-1].status = SKIPPED
    entries.sort(key=lambda e: e.name)
    return VerifyReport(seed, budget, entries, elapsed)
