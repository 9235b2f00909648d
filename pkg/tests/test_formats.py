import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ccms2.formats import (
    FormatError, dump_instance, fmt_rat, fmt_vector, load_instance, parse_points, parse_rat,
    parse_row_line, parse_rows, row_line, rows_text,
)
from ccms2.ineqs import all_family_ineqs, family_ineq
from ccms2.model import new_instance

EX = new_instance(6, {1, 2, 3}, {3, 4, 5}, 1, 3)


@given(st.fractions())
def test_rational_round_trip(v):
    assert parse_rat(fmt_rat(v)) == v


def test_rational_formats():
    assert fmt_rat(F(3, 1)) == "3" and fmt_rat(F(-1, 2)) == "-1/2"
    assert parse_rat(4) == 4
    for bad in ("0.5", "1/0", "x", True, 0.5, None):
        with pytest.raises(FormatError):
            parse_rat(bad, "c")


def test_instance_round_trip():
    inst, p = load_instance(dump_instance(EX))
    assert inst == EX and p is None


@pytest.mark.parametrize("text, field", [
    ('{"S1": [1], "S2": [2], "l": 0, "u": 1}', "'n'"),
    ('{"n": 3, "S1": [1], "S2": [2], "l": 0, "u": "1"}', "'u'"),
    ('{"n": 3, "S1": 1, "S2": [2], "l": 0, "u": 1}', "'S1'"),
    ('{"n": 3, "S1": [1], "S2": [2], "l": 2, "u": 1}', "l=2"),
    ('{"n": 3, "S1": [1], "S2": [2], "l": 0, "u": 1, "space": "y"}', "'space'"),
    ('[1, 2]', "JSON object"),
    ('{"n": 3,', "invalid JSON"),
])
def test_instance_errors_name_the_field(text, field):
    with pytest.raises(FormatError, match=field):
        load_instance(text)


def test_x_space_instance():
    data = {"space": "x", "n": 4, "T1": [1, 2], "T2": [2, 3], "gamma": [1, "1/2"],
            "c": [0, 0, 0, -1], "L": 1, "U": 3, "sense": "max"}
    inst, p = load_instance(json.dumps(data))
    assert (inst.n, inst.l, inst.u) == (4, 1, 3) and p.gamma == (1, F(1, 2))
    data["T1"] = [1, 9]
    with pytest.raises(FormatError, match="T1"):
        load_instance(json.dumps(data))


def test_points():
    text = "ccms2/1 points 2\n# comment\n1 0 1/2 0  0 1\n\n0 0 0 0 1 0  # tail\n"
    pts = parse_points(text, 6)
    assert pts == [(1, 0, F(1, 2), 0, 0, 1), (0, 0, 0, 0, 1, 0)]
    assert fmt_vector(pts[0]) == "1 0 1/2 0 0 1"
    with pytest.raises(FormatError, match="line 1"):
        parse_points("1 2", 6)


def test_row_line_example():
    row = family_ineq(EX, "U1", (), {1, 4, 6})
    assert row_line(row) == "U1;;{1,4,6};0,1,1,0;1,0,0,1,0,1;3"
    assert parse_row_line(row_line(row)) == row


def test_rows_round_trip():
    rows = list(all_family_ineqs(EX))
    text = rows_text(rows)
    assert text.startswith("ccms2/1 rows\n")
    assert parse_rows(text) == rows
    assert rows_text(rows[:1], machine=False).split() == ["T1a", "d0", "<=", "1"]


@pytest.mark.parametrize("line", ["U1;;{1};0,1;1;3", "U1;x;;0,0,0,0;1;3", ";;;0,0,0,0;1;3",
                                  "U1;;1,2;0,0,0,0;1;3", "U1;;;0,0,0,0;1"])
def test_bad_row_lines(line):
    with pytest.raises(FormatError):
        parse_row_line(line)
