import pytest

from trirep.catalog import load_catalog
from trirep.formats import (
    ParseError, format_algebra, format_rep, parse_algebra_file, parse_rep_file, parse_scalar,
)
from trirep.gaussian import GQ

LAW_TEXT = """\
# [e1,e3] = e2
dim 3
bracket 1 3 -> 2: 1
"""

REP_TEXT = """\
size 3
e 1 = -X 2 3
e 2 = X 1 3
e 3 = X 1 2
"""


def test_parse_law_and_rep():
    A = parse_algebra_file(LAW_TEXT)
    assert A.dim == 3 and A.structure_constant(1, 3, 2) == 1
    R = parse_rep_file(REP_TEXT)
    assert R.k == 3 and R.image(1) == {(2, 3): GQ(-1)}


@pytest.mark.parametrize("text, value", [
    ("2 i", GQ(0, 2)), ("(1 + i)^2", GQ(0, 2)), ("1/2 - 3/4 i", GQ("1/2", "-3/4")),
    ("-(2)", GQ(-2)), ("2 ** 3", GQ(8)),
])
def test_scalar_expressions(text, value):
    assert parse_scalar(text) == value


def test_parametric_round_trip():
    text = ("dim 3\nparam alpha\nparam Z rel Z^2 = alpha + 1\n"
            "bracket 1 3 -> 1: alpha, 2: Z\nbracket 2 3 -> 2: 1/alpha\n")
    A = parse_algebra_file(text)
    assert A.is_parametric()
    assert parse_algebra_file(format_algebra(A)) == A


@pytest.mark.parametrize("text, line, column", [
    ("dim 3\nbracket 3 1 -> 2: 1\n", 2, 9),
    ("dim 3\nbracket 1 2 -> 4: 1\n", 2, 16),
    ("dim 3\nbracket 1 2 -> 3: beta\n", 2, 19),
    ("dim 3\nfrobnicate\n", 2, 1),
    ("bracket 1 2 -> 3: 1\n", 1, 1),
    ("dim 3\nbracket 1 2 -> 3: (1\n", 2, 21),
])
def test_algebra_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_algebra_file(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_rep_errors():
    with pytest.raises(ParseError) as info:
        parse_rep_file("size 2\ne 1 = X 1 3\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_rep_file("size 2\ne 1 = 3\n")
    with pytest.raises(ParseError):
        parse_rep_file("size 2\ne 1 = X 1 2\ne 1 = X 2 2\n")


def test_rep_gap_recorded():
    R = parse_rep_file("size 2\ne 1 = X 1 1\ne 3 = X 1 2\n")
    assert R.missing == (2,) and R.dim == 3


@pytest.mark.parametrize("entry", load_catalog(), ids=lambda e: e.id)
def test_catalog_round_trip(entry):
    assert parse_algebra_file(format_algebra(entry.law)) == entry.law
    assert parse_rep_file(format_rep(entry.rep)) == entry.rep
