import json
from fractions import Fraction

import pytest

from tiltlab.exactlin import QQ
from tiltlab.report import Check, Report, parse_report, plain


def test_plain():
    assert plain((1, [2, 3])) == [1, [2, 3]]
    assert plain({1: frozenset({3, 2})}) == {"1": [2, 3]}
    assert plain(QQ(3)) == 3
    assert plain(Fraction(1, 2)) == "1/2"


def test_bad_tag():
    with pytest.raises(ValueError):
        Check("x", 1, 1, "GUESS", "nowhere")


def test_pass_flag_is_computed():
    r = Report(["demo"])
    r.add("a", 2, 2, "TRIVIAL", "arithmetic")
    assert r.passed
    r.add("b", 2, 3, "DERIVED", "oracle")
    assert not r.passed
    d = parse_report(r.to_json())
    assert [c["name"] for c in d["checks"]] == ["a", "b"]
    assert [c["passed"] for c in d["checks"]] == [True, False]
    assert "[FAIL] b" in r.human()


def test_parse_rejects_tampering():
    r = Report(["demo"])
    r.add("a", 2, 3, "PAPER", "table")
    d = json.loads(r.to_json())
    d["checks"][0]["passed"] = True
    with pytest.raises(ValueError):
        parse_report(json.dumps(d))
    d = json.loads(r.to_json())
    d["checks"][0]["expected"]["tag"] = "VIBES"
    with pytest.raises(ValueError):
        parse_report(json.dumps(d))
    d = json.loads(r.to_json())
    del d["environment"]
    with pytest.raises(ValueError):
        parse_report(json.dumps(d))
