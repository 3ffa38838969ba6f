from itertools import pairwise, product

import pytest

from holonomic import (
    VarTable,
    WeylIdeal,
    ann_delta_hypersurface,
    char_dimension,
    characteristic_ideal,
    dimension,
    exp_twist,
    intersect,
    is_holonomic,
    parse_operator,
    parse_polynomial,
    quotient,
    right_divide,
)
from holonomic.weyl import apply_to_polynomial

from conftest import ideal, ops


def staircase_count(leads, nvars, degree):
    """Brute-force count of monomials of total degree <= degree outside the monomial ideal."""
    n = 0
    for e in product(range(degree + 1), repeat=nvars):
        if sum(e) > degree:
            continue
        if not any(all(a >= b for a, b in zip(e, m)) for m in leads):
            n += 1
    return n


def test_intersect_with_itself(r2):
    i = ideal(r2, "x*dx + y*dy - 1", "y*dx - x*dy")
    assert intersect(i, i).equals(i)


def test_intersect_two_eigen_ideals(r1):
    out = intersect(ideal(r1, "x*dx - 1"), ideal(r1, "x*dx - 2"))
    expected = ideal(r1, "x^2*dx^2 - 2*x*dx + 2")
    assert out.equals(expected)
    # the candidate kills both x and x^2
    op = expected.gens[0]
    for f in ("x", "x^2", "x + x^2"):
        assert apply_to_polynomial(op, parse_polynomial(f, r1)).is_zero()


def test_intersect_with_unit_ideal(r2):
    j = ideal(r2, "dx - y", "dy - x")
    assert intersect(WeylIdeal([r2.one()], r2), j).equals(j)


def test_intersection_members_lie_in_both(r2):
    i, j = ideal(r2, "dx", "dy"), ideal(r2, "x*dx - 1", "dy")
    out = intersect(i, j)
    assert all(i.contains(g) and j.contains(g) for g in out.gens)


def test_quotient_basic(r1):
    x = r1.gen("x")
    assert quotient(ideal(r1, "x"), x).contains(r1.one())
    i = ideal(r1, "x*dx - 3")
    assert quotient(i, r1.one()).equals(i)


def test_quotient_members_times_divisor(r2):
    i = ideal(r2, "x*dx + y*dy", "y*dx - x*dy")
    p = parse_polynomial("x^2 + y^2", r2)
    q = quotient(i, p)
    for g in q.gens:
        assert i.contains(g * p)


def test_quotient_feeds_vanishing_integral():
    # delta(t - x^2 - y^2 - z^2) divided by 2x^2 - y^2 - z^2 integrates to zero
    from holonomic import ann_delta_graph, integration_ideal
    r = VarTable.make(["x", "y", "z"])
    i = ann_delta_graph(parse_polynomial("x^2+y^2+z^2", r), "t")
    f = parse_polynomial("2*x^2 - y^2 - z^2", i.ring)
    q = quotient(i, f)
    res = integration_ideal(q, ["x", "y", "z"])
    assert res.ideal.is_unit()


def test_right_divide(r1):
    assert right_divide(parse_operator("x*dx + 1", r1), r1.gen("x")) == r1.d("x")
    with pytest.raises(ValueError, match="not a left multiple"):
        right_divide(parse_operator("x*dx", r1), r1.gen("x"))
    p = parse_operator("x^2*dx + 3*dx^2 - 1", r1)
    q = parse_operator("x*dx - 2*x + 5", r1)
    assert right_divide(p * q, q) == p


def test_exp_twist(r1):
    assert exp_twist(ideal(r1, "dx"), r1.gen("x")).equals(ideal(r1, "dx - 1"))
    assert exp_twist(ideal(r1, "dx + 2*x"), parse_polynomial("x^2", r1)).equals(ideal(r1, "dx"))


def test_exp_twist_is_an_involution(r2):
    i = ideal(r2, "x*dx + y*dy - 2", "dx^2 + dy")
    h = parse_polynomial("x*y - y^3", r2)
    back = exp_twist(exp_twist(i, h), -h)
    assert [g for g in back.gens] == list(i.gens)


@pytest.mark.parametrize("text", ["x*dx", "dx"])
def test_dimension_one_variable(r1, text):
    i = ideal(r1, text)
    assert dimension(i) == 1 and is_holonomic(i)
    leads = [e[:2] for e in i.gb().leading_exponents()]
    # Hilbert function of the staircase grows linearly: 2k+1 for x*xi
    counts = [staircase_count(leads, 2, k) for k in range(1, 7)]
    diffs = {b - a for a, b in pairwise(counts)}
    assert len(diffs) == 1


def test_dimension_of_zero_and_full_modules(r1):
    assert dimension(WeylIdeal([], r1)) == 2 and not is_holonomic(WeylIdeal([], r1))
    assert dimension(WeylIdeal([r1.one()], r1)) == float("-inf")


def test_staircase_matches_hand_count(r1):
    i = ideal(r1, "x*dx")
    leads = [e[:2] for e in i.gb().leading_exponents()]
    assert [staircase_count(leads, 2, k) for k in range(6)] == [2 * k + 1 for k in range(6)]


def test_characteristic_ideal_one_generator():
    r = VarTable.make(["x"], (), ["s"])
    i = WeylIdeal([parse_operator("x*dx - s", r)], r)
    from holonomic import specialize
    j = specialize(i, {"s": 0})
    assert [str(c) for c in characteristic_ideal(j)] == ["x*xi_x"]
    assert char_dimension(j) == 1


def test_characteristic_ideal_of_circle(r2):
    i = ann_delta_hypersurface(parse_polynomial("x^2+y^2-1", r2))
    symbols = {str(c) for c in characteristic_ideal(i)}
    assert "x^2 + y^2 - 1" in symbols
    assert "y*xi_x - x*xi_y" in symbols
    assert char_dimension(i) == 2 == dimension(i)


def test_characteristic_ideal_of_unit(r2):
    u = WeylIdeal([r2.one()], r2)
    assert [str(c) for c in characteristic_ideal(u)] == ["1"]
    assert char_dimension(u) == float("-inf")


def test_unit_and_membership(r1):
    u = WeylIdeal(ops(r1, "x", "dx"), r1)
    assert u.is_unit() and u.contains(parse_operator("x^5*dx^3 + 7", r1))
