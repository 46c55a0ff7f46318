"""One test per acceptance criterion, read from a single ``deloop verify`` run.

Each test prints a ``PASS``/``FAIL`` line, also collected into the terminal
summary. The run happens in a subprocess so that criterion 9 times the real
command-line entry point.
"""

import json
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES

VERIFY_LIMIT = 300.0


@pytest.fixture(scope="module")
def verify_run():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "deloop", "verify", "--format", "json", "--seed", "0"],
        capture_output=True,
        text=True,
        check=False,
    )
    elapsed = time.perf_counter() - start
    report = json.loads(proc.stdout)
    entries = {e["name"]: e for e in report["entries"]}
    return proc.returncode, elapsed, entries


def _record(name, ok, message):
    line = f"{'PASS' if ok else 'FAIL'} {name}: {message}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _check_entry(entries, name):
    e = entries[name]
    msg = f"computed={json.dumps(e['computed'])} expected={json.dumps(e['expected'])}"
    if e["detail"]:
        msg += f" ({e['detail']})"
    assert _record(name, e["status"] == "pass", msg), msg


def test_c1_homology_tables(verify_run):
    _check_entry(verify_run[2], "c1_homology_tables")


def test_c2_morita_invariance(verify_run):
    _check_entry(verify_run[2], "c2_morita_invariance")


def test_c3_lqt_degree_one(verify_run):
    _check_entry(verify_run[2], "c3_lqt_degree_one")


def test_c4_gl2_primitives(verify_run):
    _check_entry(verify_run[2], "c4_gl2_primitives")


def test_c5_degree_two_witness(verify_run):
    _check_entry(verify_run[2], "c5_degree_two_witness")


def test_c6_ideal_suite(verify_run):
    _check_entry(verify_run[2], "c6_ideal_suite")


def test_c7_oracle_coherence(verify_run):
    _check_entry(verify_run[2], "c7_oracle_coherence")


def test_c8_lattice_membership(verify_run):
    _check_entry(verify_run[2], "c8_lattice_membership")


def test_c9_full_run(verify_run):
    status, elapsed, entries = verify_run
    ok = status == 0 and elapsed < VERIFY_LIMIT and entries["c9_full_run"]["status"] == "pass"
    msg = f"exit status {status}, {elapsed:.1f}s of {VERIFY_LIMIT:.0f}s ({entries['c9_full_run']['detail']})"
    assert _record("c9_full_run", ok, msg), msg
