import numpy as np
import pytest
from schemes import johnson

from asch.errors import FormatError
from asch.textio import (
    format_partition,
    format_scheme,
    format_weighing,
    parse_partition,
    parse_scheme,
    parse_weighing,
)


def test_scheme_round_trip():
    rp = johnson(5, 2)
    text = format_scheme(rp)
    assert text.startswith("ASCH v1\nn=10 d=2\n")
    assert (parse_scheme(text).rel == rp.rel).all()


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("ASCH v2\nn=2 d=1\n0 1\n1 0\n", 1, 1),
        ("ASCH v1\nn=2 e=1\n0 1\n1 0\n", 2, 1),
        ("ASCH v1\nn=2 d=1\n0 1\n1 x\n", 4, 2),
        ("ASCH v1\nn=2 d=1\n0 1\n1 7\n", 4, 2),
        ("ASCH v1\nn=2 d=1\n0 1 1\n1 0\n", 3, None),
        ("ASCH v1\nn=3 d=1\n0 1 1\n1 0 1\n", 5, None),
    ],
)
def test_scheme_errors_locate_the_problem(text, line, col):
    with pytest.raises(FormatError) as info:
        parse_scheme(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_partition_round_trip_and_errors():
    blocks = np.array([0, 0, 1, 1, 2, 2])
    text = format_partition(blocks)
    assert text.splitlines()[:2] == ["PART v1", "n=6 f=3"]
    assert (parse_partition(text, 6) == blocks).all()
    with pytest.raises(FormatError):
        parse_partition(text, 7)
    with pytest.raises(FormatError) as info:
        parse_partition("PART v1\nn=2 f=2\n0\n2\n")
    assert info.value.line == 4
    with pytest.raises(FormatError):
        parse_partition("PART v1\nn=3 f=2\n0\n1\n")


def test_weighing_round_trip():
    W = np.array([[1, 0], [0, -1]])
    a, b, w, back = parse_weighing(format_weighing(W, 3, 0, 1))
    assert (a, b, w) == (3, 0, 1) and (back == W).all()
    with pytest.raises(FormatError):
        parse_weighing("W a=1 b=0 w=4\n2 0\n")
