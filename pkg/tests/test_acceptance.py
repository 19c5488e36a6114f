"""The thirteen acceptance criteria, each at tolerance zero.

Every test records one PASS/FAIL line (printed in the terminal summary).
"""

import pytest

from conftest import record
from tiltlab import suite
from tiltlab.report import Report

OPTS = suite.Options()


def run(fn, *keys):
    rep = Report(["acceptance"] + list(keys))
    fn(rep, OPTS)
    return rep


def failing(rep):
    return [c.name for c in rep.checks if not c.passed]


def finish(key, rep, extra_ok=True):
    ok = rep.passed and extra_ok
    record(key, ok, "" if ok else f"failing: {failing(rep)}")
    assert ok, failing(rep)


def value(rep, name):
    return next(c.computed for c in rep.checks if c.name == name)


def test_criterion_01_a4_resolutions():
    rep = run(suite.criterion_1, "1")
    finish("1", rep, value(rep, "c01.injres.P2") == [["I1", "I4"], ["I2"]])


def test_criterion_02_d4_resolutions():
    rep = run(suite.criterion_2, "2")
    finish("2", rep, value(rep, "c02.projres.I4") == [["P3"], ["P2"]])


@pytest.fixture(scope="module")
def sweep():
    return run(suite.criterion_3_4, "3", "4")


def test_criterion_03_gorenstein_sweep(sweep):
    checks = [c for c in sweep.checks if c.name.startswith("c03")]
    ok = all(c.passed for c in checks) and value(sweep, "c03.closure_size.A4") == 42
    record("3", ok, "" if ok else str([c.name for c in checks if not c.passed]))
    assert ok


def test_criterion_04_hereditary_or_infinite(sweep):
    checks = [c for c in sweep.checks if c.name.startswith("c04")]
    ok = all(c.passed for c in checks) and len(checks) == 4
    record("4", ok, "" if ok else str([c.name for c in checks if not c.passed]))
    assert ok


def test_criterion_05_cy3_duality():
    rep = run(suite.criterion_5, "5")
    finish("5", rep, [tuple(p) for p in rep.results["c05_a4_exempt_ordered"]] == [("S2", "S1")])


def test_criterion_06_ar_formula():
    rep = run(suite.criterion_6, "6")
    finish("6", rep)


@pytest.mark.xfail(strict=True, reason="the 3-cluster-tilted A_7 algebra is stably 4-CY, not 3-CY; "
                                       "see the decisions ledger")
def test_criterion_07_selfinjective_and_stable_cy():
    rep = run(suite.criterion_7, "7")
    # the parts that do hold are asserted unconditionally before the red one
    held = [c for c in rep.checks if c.name != "c07.a7.stable_3cy"]
    assert all(c.passed for c in held), [c.name for c in held if not c.passed]
    assert rep.results["c07_a7_4cy_passes"] is True
    finish("7", rep)


def test_criterion_08_cluster_category_model():
    rep = run(suite.criterion_8, "8")
    finish("8", rep, value(rep, "c08.closure_size") == 42)


def test_criterion_09_module_category_count():
    rep = run(suite.criterion_9, "9")
    finish("9", rep, value(rep, "c09.knitted") == 10)


def test_criterion_10_relative_cy():
    rep = run(suite.criterion_10, "10")
    finish("10", rep, value(rep, "c10.preproj_A2.global_dim") == "3")


def test_criterion_11_d_cluster_construction():
    rep = run(suite.criterion_11, "11")
    finish("11", rep, bool(rep.results["c11_kxk_sets"]))


def test_criterion_12_triangular_resolutions():
    rep = run(suite.criterion_12, "12")
    finish("12", rep)


def test_criterion_13_property_suites():
    rep = run(suite.criterion_13, "13")
    finish("13", rep)
