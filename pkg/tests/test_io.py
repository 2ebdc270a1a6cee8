import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from torideform.exceptions import ParseError
from torideform.io import PolyhedronDocument, Report, format_rational, parse_rational


@pytest.mark.parametrize("text,value", [("1/2", F(1, 2)), ("-3", F(-3)), (" 4 / 6 ", F(2, 3)), (5, F(5))])
def test_parse_rational(text, value):
    assert parse_rational(text, "x") == value


@pytest.mark.parametrize("bad", ["0.5", "1e3", "1/0", "a", True, 0.5, None])
def test_parse_rational_rejects(bad):
    with pytest.raises(ParseError):
        parse_rational(bad, "x")


@given(st.fractions(max_denominator=1000))
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x), "x") == x


def test_document_round_trip():
    doc = PolyhedronDocument(2, [[F(-1, 6), F(1, 2)], [F(2, 3), F(1, 2)]], [], "height")
    again = PolyhedronDocument.loads(doc.dumps())
    assert again == doc
    assert again.polyhedron().edges[0].g_d == 2


@pytest.mark.parametrize("payload,field", [
    ({"vertices": [["0"]]}, "lattice_rank"),
    ({"lattice_rank": 1, "vertices": [["0.5"]]}, "vertices[0][0]"),
    ({"lattice_rank": 2, "vertices": [["0"]]}, "vertices[0]"),
    ({"lattice_rank": 1, "vertices": [["0"]], "tail_rays": [["1/2"]]}, "tail_rays[0][0]"),
    ({"lattice_rank": 1, "vertices": [["0"]], "colour": "red"}, "colour"),
    ({"lattice_rank": 1, "vertices": []}, "vertices"),
])
def test_document_errors_name_the_field(payload, field):
    with pytest.raises(ParseError) as err:
        PolyhedronDocument.loads(json.dumps(payload))
    assert err.value.field == field


def test_json_syntax_error_has_position():
    with pytest.raises(ParseError) as err:
        PolyhedronDocument.loads('{"lattice_rank": 1,\n "vertices": [}')
    assert "line 2" in str(err.value)


def test_report_round_trip_and_stable_text():
    rep = Report("analyze", {"dim": 2, "edges": [{"g_d": 1, "len": F(5, 6)}], "ok": True})
    again = Report.from_json(rep.to_json())
    assert again.to_dict() == rep.to_dict()
    assert rep.to_text() == rep.to_text()
    assert "len: 5/6" in rep.to_text() and "ok: yes" in rep.to_text()
