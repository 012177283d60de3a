from fractions import Fraction

import pytest

import qconn


def test_parse_scalar():
    assert qconn.parse_scalar("2/5") == Fraction(2, 5)
    assert qconn.parse_scalar("-1/3+2/7i") == (Fraction(-1, 3), Fraction(2, 7))
    with pytest.raises(qconn.QconnError) as info:
        qconn.parse_scalar("1/0")
    assert info.value.args[0] == "DivisionByZero"


def test_invert_little_q_laguerre():
    values = qconn.invert("little-q-laguerre", {"a": "1/2"}, "1/3", 1)
    assert values == [Fraction(5, 6), Fraction(-5, 6)]
    assert qconn.invert("little-q-laguerre", {"a": Fraction(1, 2)}, Fraction(1, 3), 1, oracle=True) == values


def test_connect_delta_and_oracle():
    p = {"a": "1/3", "b": "2/7"}
    assert qconn.connect("big-q-laguerre", p, "big-q-laguerre", p, "2/5", 3) == [0, 0, 0, 1]
    t = {"a": "1/3", "b": "5/9"}
    closed = qconn.connect("big-q-laguerre", p, "big-q-laguerre", t, "2/5", 4)
    assert closed == qconn.connect("big-q-laguerre", p, "big-q-laguerre", t, "2/5", 4, oracle=True)


def test_racah_precondition():
    src = {"alpha": "1/2", "beta": "1/7", "gamma": "3/5", "delta": "2/3"}
    tgt = {"alpha": "1/2", "beta": "1/7", "gamma": "2/9", "delta": "1/5"}
    with pytest.raises(qconn.QconnError) as info:
        qconn.connect("q-racah", src, "q-racah", tgt, "2/5", 2)
    assert info.value.args[0] == "PreconditionViolated"


def test_verify_and_ledger():
    reports = qconn.verify("lemma22", q="2/5", n_max=6)
    assert reports and all(r["status"] == "Match" for r in reports)
    assert "lemma22" in qconn.suite_names()
    locations = {e["location"] for e in qconn.ledger()}
    assert "Eq4.1" in locations


def test_run_cli():
    code, doc, diag = qconn.run(["invert", "--family", "little-q-laguerre", "--param", "a=1/2", "--q", "1/3", "--n", "1"])
    assert code == 0 and diag == ""
    assert [row["value"] for row in doc["rows"]] == ["5/6", "-5/6"]
    code, _, _ = qconn.run(["bogus"])
    assert code == 2
