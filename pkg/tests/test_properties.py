"""Randomized algebraic invariants."""

from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from holonomic import (
    Bounds,
    DifferenceDiffOp,
    ResourceLimitError,
    VarTable,
    WeylElement,
    WeylIdeal,
    ann_delta_hypersurface,
    ann_fs,
    ann_log_power,
    ann_times_powers,
    bs_polynomial,
    buchberger,
    eliminate,
    fourier,
    from_roots,
    grevlex,
    mu_map,
    nm_normalize,
    ord_w,
    parse_operator,
    parse_polynomial,
    principal_symbol,
    right_divide,
    specialize,
)
from holonomic.difference import difference_ring, shift_minimality
from holonomic.groebner import s_pairs_reduce_to_zero
from holonomic.parse import format_element
from holonomic.weyl import dehomogenize, homogenize

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
FEW = settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])

R2 = VarTable.make(["x", "y"])
R1S = VarTable.make(["x"], (), ["s"])

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=3)


def elements(ring, max_exp=2, max_terms=4, nonzero=False):
    slots = ring.nslots

    @st.composite
    def build(draw):
        n = draw(st.integers(1 if nonzero else 0, max_terms))
        terms = {}
        for _ in range(n):
            e = tuple(draw(st.integers(0, max_exp)) for _ in range(slots))
            c = draw(coeffs)
            if c:
                terms[e] = Fraction(c)
        p = WeylElement(ring, terms) if terms else ring.zero()
        if nonzero:
            assume(not p.is_zero())
        return p
    return build()


# ---------------------------------------------------------------------------
# ring structure


@SETTINGS
@given(elements(R2), elements(R2), elements(R2))
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert p * R2.one() == p == R2.one() * p


@SETTINGS
@given(elements(R2, nonzero=True))
def test_commutator_with_a_variable(p):
    # [dx, p] is the partial derivative of p with respect to x
    from holonomic.weyl import diff
    x = R2.gen("x")
    assert R2.d("x") * x - x * R2.d("x") == R2.one()
    lhs = R2.d("x") * p - p * R2.d("x")
    assert lhs == diff(p, "x")


@SETTINGS
@given(elements(R2, nonzero=True), elements(R2, nonzero=True))
def test_principal_symbol_is_multiplicative(p, q):
    assert principal_symbol(p * q) == principal_symbol(p) * principal_symbol(q)


weights = st.tuples(st.integers(-2, 3), st.integers(-2, 3)).flatmap(
    lambda wx: st.tuples(st.just(wx), st.integers(-wx[0], 3), st.integers(-wx[1], 3)))


@SETTINGS
@given(elements(R2, nonzero=True), elements(R2, nonzero=True), weights)
def test_weighted_order_is_additive(p, q, w):
    (wx, wy), wdx, wdy = w
    vec = {"x": wx, "y": wy, "dx": wdx, "dy": wdy}
    assert ord_w(p * q, vec) == ord_w(p, vec) + ord_w(q, vec)


@SETTINGS
@given(elements(R2), elements(R2))
def test_fourier_is_a_homomorphism(p, q):
    for names in (["x"], ["x", "y"]):
        assert fourier(p * q, names) == fourier(p, names) * fourier(q, names)


@SETTINGS
@given(elements(R2))
def test_homogenization_round_trip(p):
    assert dehomogenize(homogenize(p)) == p


@SETTINGS
@given(elements(R2), elements(R2, nonzero=True))
def test_right_division_round_trip(p, q):
    assert right_divide(p * q, q) == p


@SETTINGS
@given(elements(R1S, max_exp=3, max_terms=5))
def test_parse_print_round_trip(p):
    text = format_element(p)
    assert parse_operator(text, R1S) == p


# ---------------------------------------------------------------------------
# Gröbner bases

R1 = VarTable.make(["x"])
SMALL = Bounds(max_pairs=60, max_reductions=5_000)


def small_ideals(ring):
    return st.lists(elements(ring, max_exp=2, max_terms=3, nonzero=True), min_size=1, max_size=3)


@FEW
@given(small_ideals(R2))
def test_s_pairs_reduce_to_zero(gens):
    try:
        gb = buchberger(gens, grevlex(R2), SMALL)
    except ResourceLimitError:
        assume(False)
    assert s_pairs_reduce_to_zero(gb)
    assert all(gb.contains(g) for g in gens)


@FEW
@given(small_ideals(R2), elements(R2, max_exp=3, max_terms=5))
def test_normal_form_is_idempotent(gens, p):
    try:
        gb = buchberger(gens, grevlex(R2), SMALL)
    except ResourceLimitError:
        assume(False)
    nf = gb.normal_form(p)
    assert gb.normal_form(nf) == nf
    assert gb.contains(p - nf)


@FEW
@given(small_ideals(R1))
def test_chain_criterion_does_not_change_the_basis(gens):
    try:
        a = buchberger(gens, grevlex(R1), SMALL)
        b = buchberger(gens, grevlex(R1), Bounds(max_pairs=60, max_reductions=5_000,
                                                  chain_criterion=False))
    except ResourceLimitError:
        assume(False)
    assert a.monic_elements() == b.monic_elements()


COMM = VarTable((), (), ("a", "b", "c"), None)
comm_polys = st.lists(elements(COMM, max_exp=2, max_terms=3, nonzero=True), min_size=1, max_size=3)


def to_sympy(p):
    syms = sympy.symbols("a b c")
    out = 0
    for e, c in p.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, k in zip(syms, e):
            term *= s ** k
        out += term
    return out


@FEW
@given(comm_polys)
def test_commutative_elimination_matches_sympy(gens):
    a, b, c = sympy.symbols("a b c")
    ours = eliminate(gens, ["c"], SMALL)
    ref = sympy.groebner([to_sympy(g) for g in gens], a, b, c, order="lex")
    ref_keep = [g for g in ref.exprs if not g.free_symbols & {a, b}]
    if not ref_keep:
        assert ours == [] or all(g.is_zero() for g in ours)
        return
    ours_s = [to_sympy(g) for g in ours]
    # both generate the same ideal of Q[c]
    g_ours = sympy.groebner(ours_s, c) if ours_s else None
    g_ref = sympy.groebner(ref_keep, c)
    assert g_ours is not None and list(g_ours.exprs) == list(g_ref.exprs)


# ---------------------------------------------------------------------------
# dimension on the suite of ideals the library produces


def produced_ideals():
    r2 = VarTable.make(["x", "y"])
    r1 = VarTable.make(["x"])
    cusp = parse_polynomial("x^3 - y^2", r2)
    out = {
        "cusp-heaviside": specialize(ann_fs(cusp, ["s"]), {"s": 0}),
        "cusp-power": specialize(ann_fs(cusp, ["s"]), {"s": Fraction(1, 3)}),
        "circle-delta": ann_delta_hypersurface(parse_polynomial("x^2+y^2-1", r2)),
        "log": ann_log_power(parse_polynomial("x", r1), 1, 2),
        "exp-times-power": ann_times_powers(WeylIdeal([parse_operator("dx + 1", r1)], r1),
                                            [r1.gen("x")], ["t"]),
        "disk-indicator": specialize(ann_fs(parse_polynomial("1-x^2-y^2", r2), ["s"]), {"s": 0}),
        "first-order": WeylIdeal([parse_operator("dx - y", r2), parse_operator("dy - x", r2)], r2),
    }
    return out


@pytest.fixture(scope="module")
def suite():
    return produced_ideals()


def test_bernstein_inequality_and_holonomicity(suite):
    for name, i in suite.items():
        n = i.ring.N
        d = i.dimension()
        assert d >= n, name
        assert i.is_holonomic(), name


def test_dimension_equals_characteristic_dimension(suite):
    for name, i in suite.items():
        assert i.dimension() == i.char_dimension(), name


# ---------------------------------------------------------------------------
# b-functions

linear_roots = st.lists(st.integers(-2, 2), min_size=1, max_size=3)


@FEW
@given(linear_roots)
def test_bernstein_sato_minimality(roots):
    r = VarTable.make(["x"])
    f = r.one()
    for a in roots:
        f = f * (r.gen("x") - a)
    b = bs_polynomial(f)
    assert all(b(q) != 0 for q in range(5))
    ann = ann_fs(f, ["s"])
    rs = ann.ring
    j = WeylIdeal(list(ann.gens) + [f.to_ring(rs)], rs)
    s = rs.gen("s")

    def poly_in_s(cs):
        acc = rs.zero()
        for c in reversed(cs):
            acc = acc * s + c
        return acc

    assert j.contains(poly_in_s(b.coeffs))
    rts = [x for x, m in b.roots.items() for _ in range(m)]
    assume(len(rts) == b.degree)
    for sub in {tuple(sorted(c)) for c in combinations(rts, b.degree - 1)}:
        assert not j.contains(poly_in_s(from_roots(list(sub)).coeffs))


# ---------------------------------------------------------------------------
# shift operators

RT = VarTable.make(["x"], ["t"])
RA = difference_ring(["x"], ["a"])


@SETTINGS
@given(elements(RT, max_exp=2, max_terms=3), elements(RT, max_exp=2, max_terms=3))
def test_mu_is_a_homomorphism(p, q):
    assert mu_map(p * q, ["t"], ["a"]) == mu_map(p, ["t"], ["a"]) * mu_map(q, ["t"], ["a"])


@st.composite
def laurent_ops(draw):
    n = draw(st.integers(1, 4))
    terms = {}
    for _ in range(n):
        d = draw(st.integers(-3, 3))
        c = draw(elements(RA, max_exp=1, max_terms=2, nonzero=True))
        terms[(d,)] = c
    return DifferenceDiffOp(RA, ["a"], terms)


@SETTINGS
@given(laurent_ops())
def test_nm_is_minimal(q):
    n = nm_normalize(q)
    assert n.is_normalized() and shift_minimality(q, n)
