import pytest

from holonomic import ParseError, VarTable, format_element, parse_operator, parse_polynomial


def test_examples():
    r = VarTable.make(["x", "y"])
    assert parse_operator("dx*x - x*dx", r) == r.one()
    lhs = parse_operator("y*(y-1)*(dy - x)", r)
    assert lhs == parse_operator("y^2*dy - y*dy - x*y^2 + x*y", r)
    x, y, dx, dy = r.gen("x"), r.gen("y"), r.d("x"), r.d("y")
    assert parse_operator("2*y*dx + 3*x^2*dy", r) == 2 * y * dx + 3 * x * x * dy


def test_rationals_and_unary():
    r = VarTable.make(["x"])
    assert parse_operator("+x - -1", r) == r.gen("x") + 1
    p = parse_operator("-1/2*x + 3", r)
    assert format_element(p) == "-1/2*x + 3"


def test_errors():
    r = VarTable.make(["x"])
    with pytest.raises(ParseError) as e:
        parse_operator("x + ", r)
    assert e.value.pos >= 3
    with pytest.raises(ParseError):
        parse_operator("y", r)
    with pytest.raises(ParseError):
        parse_operator("(x", r)
    with pytest.raises(ValueError):
        parse_polynomial("dx", r)


@pytest.mark.parametrize("text", [
    "x*dx^2 + (-x + 2)*dx - 1",
    "(t^5 + 3*t^3 + 2*t)*dt^2 + (2*t^4 + 3*t^2)*dt",
    "2*x*dx + 3*y*dy - 6*s",
    "0",
    "-7/3",
])
def test_round_trip(text):
    r = VarTable.make(["x", "y", "t"], (), ["s"])
    p = parse_operator(text, r)
    assert parse_operator(format_element(p), r) == p
