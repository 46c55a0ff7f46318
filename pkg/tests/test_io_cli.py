import io
import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deloop.algebra import base_field, dual_numbers, group_algebra_cyclic, matrix_algebra, truncated_poly
from deloop.cli import run
from deloop.homology import HomologyReport
from deloop.io import (
    InputError,
    algebra_by_name,
    algebra_from_json,
    algebra_to_json,
    load_json,
    operator_from_json,
    operator_to_json,
)
from deloop.jacobi import make_rng, projection_P, random_operator, shift_power
from deloop.verify import run_criterion

ALGEBRAS = [base_field(), dual_numbers(), truncated_poly(3), group_algebra_cyclic(3), matrix_algebra(dual_numbers(), 2)]


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda A: A.label)
def test_algebra_json_round_trip(A):
    data = algebra_to_json(A)
    B = algebra_from_json(json.loads(json.dumps(data)))
    assert B == A and B.label == A.label
    assert algebra_to_json(B) == data


@pytest.mark.parametrize("name", ["Q", "Q[eps]", "Q[x]/(x^3)", "Q[Z/2]", "M2(Q)", "M2(M2(Q[eps]))"])
def test_algebra_names(name):
    assert algebra_by_name(name).label == name


@given(st.integers(0, 2**32 - 1), st.booleans())
def test_operator_json_round_trip(seed, inline):
    ring = dual_numbers() if seed % 2 else base_field()
    a = random_operator(make_rng(seed), ring=ring)
    data = json.loads(json.dumps(operator_to_json(a, inline_ring=inline)))
    b = operator_from_json(data)
    assert b == a
    assert operator_to_json(b, inline_ring=inline) == data


def test_homology_report_round_trip():
    r = HomologyReport("H(gl2(Q))", {0: 1, 1: 1, 2: 0}, prim_dims={1: 1, 2: 0})
    assert HomologyReport.from_json(json.loads(json.dumps(r.to_json()))).to_json() == r.to_json()
    assert r.to_json() == {"label": "H(gl2(Q))", "dims": {"0": 1, "1": 1, "2": 0}, "prim_dims": {"1": 1, "2": 0}}


@pytest.mark.parametrize(
    "data, where",
    [
        ({"unit": ["1"], "table": [[{}]]}, "$"),
        ({"dim": 1, "unit": ["1", "0"], "table": [[{"0": "1"}]]}, "$.unit"),
        ({"dim": 1, "unit": ["1"], "table": [[{"3": "1"}]]}, "$.table[0][0]"),
        ({"dim": 1, "unit": ["1"], "table": [[{"0": "1/0"}]]}, "$.table[0][0]['0']"),
        ({"dim": 1, "unit": ["1"], "table": [[{"0": 0.5}]]}, "$.table[0][0]['0']"),
        ({"dim": "2", "unit": [], "table": []}, "$.dim"),
        ({"dim": 2, "unit": ["1", "0"], "table": [[{"0": "1"}, {}], [{}, {}]]}, "$"),
    ],
)
def test_algebra_parse_errors_have_locations(data, where):
    with pytest.raises(InputError) as info:
        algebra_from_json(data)
    assert info.value.where == where


def test_operator_parse_errors_have_locations():
    good = operator_to_json(shift_power(1))
    bad = json.loads(json.dumps(good))
    bad["terms"][0]["window"] = [["x"]]
    with pytest.raises(InputError) as info:
        operator_from_json(bad)
    assert info.value.where == "$.terms[0].window[0][0]"
    bad = dict(good, ring="nope")
    with pytest.raises(InputError) as info:
        operator_from_json(bad)
    assert info.value.where == "$.ring"


def test_load_json_reports_line_and_column(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{\n  "dim": 1,\n  "unit": [1,]\n}')
    with pytest.raises(InputError) as info:
        load_json(p)
    assert info.value.where.endswith("broken.json:3:14")


# -- CLI ------------------------------------------------------------------------


def cli(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), environ=env or {}, stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture
def field_file(tmp_path):
    p = tmp_path / "field.json"
    p.write_text(json.dumps(algebra_to_json(base_field())))
    return str(p)


def test_hc_on_inline_base_field(field_file):
    status, out, _ = cli("hc", "--input", field_file, "--cap", "3", "--format", "json")
    assert status == 0
    assert json.loads(out)["dims"] == {"0": 1, "1": 0, "2": 1, "3": 0}


def test_hh_csv_rows():
    status, out, _ = cli("hh", "--algebra", "Q[eps]", "--format", "csv")
    assert status == 0
    assert out == "degree,dim\n0,2\n1,1\n2,1\n3,1\n"


def test_prim_on_gl2():
    status, out, _ = cli("prim", "--n", "2", "--cap", "4", "--format", "json")
    data = json.loads(out)
    assert status == 0
    assert data["dims"] == {"0": 1, "1": 1, "2": 0, "3": 1, "4": 1}
    assert data["prim_dims"] == {"1": 1, "2": 0, "3": 1, "4": 0}


def test_lie_homology_named():
    status, out, _ = cli("lie-homology", "--lie", "sl2", "--format", "csv")
    assert status == 0 and out.splitlines()[-1] == "3,1"


def test_cocycle_check_default_table():
    status, out, _ = cli("cocycle-check", "--format", "json", "--trials", "20")
    data = json.loads(out)
    assert status == 0 and data["seed"] == 0
    assert [(r["j"], r["c(T^j,T^-j)"]) for r in data["rows"]] == [(1, "-1"), (2, "-2"), (3, "-3"), (4, "-4")]


def _write_ops(tmp_path, ops):
    p = tmp_path / "ops.json"
    p.write_text(json.dumps([operator_to_json(a) for a in ops]))
    return str(p)


def test_operator_inputs(tmp_path):
    path = _write_ops(tmp_path, [shift_power(-2) + projection_P(), shift_power(1), shift_power(-1)])
    status, out, _ = cli("lattice-bound", "--input", path, "--at", "3", "--m", "0", "--format", "json")
    assert status == 0
    first = json.loads(out)["rows"][0]
    assert (first["forward"], first["backward"]) == (1, 2)
    status, out, _ = cli("ideal-check", "--input", path, "--format", "json")
    assert status == 0
    assert json.loads(out)["rows"][1] == {
        "operator": 1, "in_Iplus": False, "in_Iminus": False, "in_I0": False, "trace": None,
    }
    status, out, _ = cli("cocycle-check", "--input", path, "--format", "json")
    rows = json.loads(out)["rows"]
    assert status == 0 and rows[2] == {"a": 1, "b": 2, "c(a,b)": ["-1"]}


def test_parse_error_status(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 1, "unit": ["1"], "table": [[{"0": "one"}]]}')
    status, out, err = cli("hh", "--input", str(p))
    assert status == 2 and out == ""
    assert "$.table[0][0]['0']" in err
    p.write_text("{")
    status, _, err = cli("hh", "--input", str(p))
    assert status == 2 and "bad.json:1:2" in err
    assert cli("hh", "--cap", "-1")[0] == 2
    assert cli("frobnicate")[0] == 2


def test_budget_status_names_degree():
    status, out, err = cli("hh", "--algebra", "M3(Q)", "--budget", "1000")
    assert status == 3 and out == ""
    assert "degree 3" in err


def test_environment_overrides():
    env = {"DELOOP_CAP": "1", "DELOOP_FORMAT": "csv"}
    assert cli("hh", env=env)[1] == "degree,dim\n0,1\n1,0\n"
    assert cli("hh", "--cap", "0", env=env)[1] == "degree,dim\n0,1\n"
    assert cli("hh", env={"DELOOP_BUDGET": "0"})[0] == 2
    assert cli("hh", env={"DELOOP_FORMAT": "xml"})[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("hc", "--algebra", "Q[Z/2]", "--format", "json"),
        ("cocycle-check", "--trials", "10"),
        ("ideal-check", "--seed", "3", "--format", "csv"),
    ],
)
def test_output_is_deterministic(argv):
    first = cli(*argv)
    assert first[0] == 0
    assert cli(*argv) == first


@pytest.mark.parametrize("name", ["c5_degree_two_witness", "c6_ideal_suite", "c7_oracle_coherence", "c8_lattice_membership"])
def test_randomized_verdicts_do_not_depend_on_seed(name):
    verdicts = {run_criterion(name, seed).status for seed in range(5)}
    assert verdicts == {"pass"}


def test_verify_with_unit_budget_marks_skips():
    status, out, _ = cli("verify", "--budget", "1", "--format", "json")
    data = json.loads(out)
    assert status == 3
    statuses = {e["name"]: e["status"] for e in data["entries"]}
    for name in ("c1_homology_tables", "c2_morita_invariance", "c3_lqt_degree_one", "c4_gl2_primitives"):
        assert statuses[name] == "skipped"
    assert statuses["c9_full_run"] == "skipped"
    assert "size budget" in data["entries"][0]["detail"]


def test_module_entry_point(field_file):
    proc = subprocess.run(
        [sys.executable, "-m", "deloop", "hh", "--input", field_file, "--format", "csv"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "degree,dim\n0,1\n1,0\n2,0\n3,0\n"
