import pathlib

import pytest

import twistlab

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def test_q_polynomials():
    assert twistlab.q_coeffs(0) == [1]
    assert twistlab.q_coeffs(5) == [0, 3, 0, -4, 0, 1]
    assert twistlab.q_eval(5, 2) == 6
    assert twistlab.q_eval(11, 3, mod=6) == 0
    # big values survive the trip through Python ints
    assert twistlab.q_eval(200, 3) > 2**64


def test_symplectic():
    assert twistlab.symplectic_group_order(1, 5) == 120
    assert twistlab.symplectic_group_order(2, 2) == 720
    assert twistlab.nu(6, 1) == 6
    r = twistlab.congruence_check(2, 2)
    assert r["kernel_order"] == 1024
    assert r["normal_closure_order"] == 1024
    assert r["elementary_subgroup_order"] == 256
    assert not r["equal"]


def test_quotients():
    assert twistlab.quotient_order(3, 3) == (24, "direct")
    order, method = twistlab.quotient_order(3, 6, cap=500)
    assert order is None and method == "exceeded"


def test_words_equal():
    # Z^2: ab = ba; F_2: not
    assert twistlab.words_equal(2, [(0, 1)], [(0, 1), (1, 1)], [(1, 1), (0, 1)])
    assert not twistlab.words_equal(2, [], [(0, 1), (1, 1)], [(1, 1), (0, 1)])
    with pytest.raises(IndexError):
        twistlab.words_equal(2, [], [(5, 1)], [])


def test_reports():
    rep = twistlab.coxeter_report([(3, 3), (2, 5)])
    assert rep["schema_version"] == 1
    assert rep["summary"]["pass"] == 2
    assert "timing" not in rep
    cheb = twistlab.chebyshev_report(max_n=10, max_d=20, trials=10)
    verdicts = {r["name"]: r["verdict"] for r in cheb["records"]}
    assert verdicts["chebyshev.table_at_0"] == "pass"
    assert verdicts["chebyshev.table_at_minus1"] == "fail"


def test_diagram_reports():
    text = (FIXTURES / "chain3.diagram").read_text()
    v = twistlab.validate_report(text)
    assert v["summary"]["fail"] == 0
    r = twistlab.raag_report(text, power=3, trials=50)
    assert r["summary"]["fail"] == 0
    with pytest.raises(Exception):
        twistlab.raag_report((FIXTURES / "dangling.diagram").read_text())
