from fractions import Fraction

import pytest

from holonomic import (
    DifferenceDiffOp,
    IntegralProblem,
    OmegaAssertionMissing,
    OmegaCheckFailed,
    VarTable,
    WeylIdeal,
    ann_delta_graph,
    base_from_difference,
    bessel_operators,
    definite_integral_ideal,
    difference_system_for_integral,
    parse_operator,
)
from holonomic.difference import difference_ring
from holonomic.pipelines import integrand_ideal
from holonomic.weyl import apply_to_series, substitute

from oracles import difference_residual, exp_minus_one_over_x, gaussian_cusp_moments

P = parse_operator


def single(ring, text):
    return WeylIdeal([P(text, ring)], ring)


def exp_over_interval(route):
    r = VarTable.make(["x", "y"])
    return IntegralProblem(r, ["y"], heaviside=[P("y", r), P("1-y", r)], exponent=P("x*y", r), route=route)


@pytest.mark.parametrize("route", ["shortcut", "tensor"])
def test_exponential_over_unit_interval(route):
    res = definite_integral_ideal(exp_over_interval(route))
    ro = res.ideal.ring
    op = P("x*dx^2 - (x-2)*dx - 1", ro)
    assert res.ideal.contains(op)
    assert res.ideal.equals(single(ro, "x*dx^2 - (x-2)*dx - 1"))
    assert apply_to_series(op, exp_minus_one_over_x(24), "x").is_zero()
    assert res.assumptions


def test_gamma_recurrence():
    r = VarTable.make(["x"])
    p = IntegralProblem(r, ["x"], powers=[(P("x", r), "s")], exponent=P("-x", r))
    ds = difference_system_for_integral(p)
    ra = ds.operators[0].ring
    E = DifferenceDiffOp.shift(ra, ["s"], [1])
    assert ds.operators == [E - DifferenceDiffOp.from_weyl(P("s + 1", ra), ["s"])]
    assert ds.parameters == {"t": "s"}


def test_rational_over_disk():
    r = VarTable.make(["x", "y", "t"])
    p = IntegralProblem(r, ["x", "y"], heaviside=[P("t-x^2-y^2", r)], powers=[(P("1+x^4+y^4", r), -1)],
                        assume_omega=True)
    res = definite_integral_ideal(p)
    assert res.ideal.equals(single(res.ideal.ring, "(t^5+3*t^3+2*t)*dt^2 + (2*t^4+3*t^2)*dt"))
    assert res.ideal.is_holonomic()
    assert "caller asserted that the exponents are admissible" in res.assumptions


def test_gaussian_over_cusp_region():
    r = VarTable.make(["x", "y", "t"])
    p = IntegralProblem(r, ["x", "y"], heaviside=[P("x^3-y^2", r)], exponent=P("-t*(x^2+y^2)", r))
    res = definite_integral_ideal(p)
    target = ("216*t^4*dt^4 + (32*t^4 + 1836*t^3)*dt^3 + (224*t^3 + 3594*t^2)*dt^2"
              " + (326*t^2 + 1371*t)*dt + 70*t + 15")
    assert res.ideal.equals(single(res.ideal.ring, target))


def test_power_over_disk_with_parameter():
    r = VarTable.make(["x", "y", "z"])
    p = IntegralProblem(r, ["x", "y"], heaviside=[P("1-x^2-y^2", r)], powers=[(P("x+z", r), "s")])
    res = definite_integral_ideal(p)
    ro = res.ideal.ring
    assert ro.cparams == ("s",)
    assert res.ideal.equals(single(ro, "(1-z^2)*dz^2 + (2*s+1)*z*dz - s*(s+2)"))


def sphere_delta():
    r = VarTable.make(["x", "y", "z"])
    return ann_delta_graph(P("x^2+y^2+z^2", r), "t")


def test_delta_sphere_with_exponential():
    base = sphere_delta()
    rt = base.ring
    res = definite_integral_ideal(IntegralProblem(rt, ["x", "y", "z"], base=base,
                                                  exponent=P("x-y^2-z^2", rt)))
    assert res.ideal.equals(single(res.ideal.ring, "4*t*dt^3 + (4*t+6)*dt^2 + 5*dt - 1"))


def test_delta_sphere_with_harmonic_denominator():
    base = sphere_delta()
    rt = base.ring
    res = definite_integral_ideal(IntegralProblem(rt, ["x", "y", "z"], base=base,
                                                  factor=P("2*x^2-y^2-z^2", rt)))
    assert res.ideal.is_unit()


CUSP_FIFTH_ORDER = ("108*t^2*dt^5 + (-216*t^2 + 648*t)*dt^4 + (108*t^2 - 972*t + 627)*dt^3"
                    " + (356*t - 606)*dt^2 + (-64*t + 108)*dt + 32*t - 48")


def test_delta_cusp_with_gaussian():
    r = VarTable.make(["x", "y"])
    base = ann_delta_graph(P("x^3-y^2", r), "t")
    rt = base.ring
    res = definite_integral_ideal(IntegralProblem(rt, ["x", "y"], base=base, exponent=P("-x^2-y^2", rt)))
    assert res.ideal.equals(single(res.ideal.ring, CUSP_FIFTH_ORDER))


def cusp_moment_problem():
    r = VarTable.make(["x", "y"])
    return IntegralProblem(r, ["x", "y"], powers=[(P("x^3-y^2", r), "s")], exponent=P("-x^2-y^2", r))


# Coefficients of our recurrence for the Gaussian moments of (x^3 - y^2)_+^s.
CUSP_RECURRENCE = [
    "32", "64*s + 208", "-108*s^3 - 940*s^2 - 2692*s - 2532",
    "-216*s^4 - 2052*s^3 - 7194*s^2 - 11022*s - 6228",
    "-108*s^5 - 972*s^4 - 3327*s^3 - 5382*s^2 - 4089*s - 1170",
]
# The same operator in the reference indexing, three shifts lower.
CUSP_RECURRENCE_REFERENCE = [
    "32", "64*s + 16", "-108*s^3 + 32*s^2 + 32*s", "-216*s^4 + 540*s^3 - 390*s^2 + 66*s",
    "-3*s*(s-1)*(s-2)*(6*s-5)*(6*s-13)",
]


def recurrence(ra, coeffs):
    out = DifferenceDiffOp(ra, ["s"], {})
    for k, c in zip(range(4, -1, -1), coeffs):
        out = out + DifferenceDiffOp.from_weyl(P(c, ra), ["s"]) * DifferenceDiffOp.shift(ra, ["s"], [k])
    return out


@pytest.fixture(scope="module")
def cusp_system():
    return difference_system_for_integral(cusp_moment_problem())


def test_cusp_moments_integration_ideal(cusp_system):
    ideal = cusp_system.integration.ideal
    rt = ideal.ring
    assert rt.weyl == ("t",)
    assert ideal.equals(single(rt, CUSP_FIFTH_ORDER))


def test_cusp_moments_recurrence(cusp_system):
    ra = difference_ring([], ["s"])
    ours = recurrence(ra, CUSP_RECURRENCE)
    assert [str(q) for q in cusp_system.operators] == [str(ours)]
    # the reference operator is ours with s replaced by s - 3
    reference = recurrence(ra, CUSP_RECURRENCE_REFERENCE)
    shifted = DifferenceDiffOp(ra, ["s"], {d: c.to_ring(ra) for d, c in reference.terms.items()})
    moved = DifferenceDiffOp(ra, ["s"], {d: substitute(c, ra, var_rules={"s": ra.gen("s") + 3})
                                         for d, c in shifted.terms.items()})
    assert moved == ours


@pytest.mark.slow
def test_cusp_moments_numeric_oracle(cusp_system):
    vals = gaussian_cusp_moments(7)
    op = cusp_system.operators[0]
    for s in range(3):
        assert abs(difference_residual(op, vals, s)) < 1e-12
    ra = difference_ring([], ["s"])
    reference = recurrence(ra, CUSP_RECURRENCE_REFERENCE)
    assert all(abs(difference_residual(reference, vals, s)) > 1 for s in range(3))


def test_omega_single_factor_checked():
    r = VarTable.make(["x", "y"])
    bad = IntegralProblem(r, ["x"], powers=[(P("x^3-y^2", r), Fraction(-5, 6))])
    with pytest.raises(OmegaCheckFailed):
        definite_integral_ideal(bad)
    fine = IntegralProblem(r, ["y"], powers=[(P("x", r), Fraction(-1, 2))])
    _, _, assumptions = integrand_ideal(fine)
    assert len(assumptions) == 1 and "verified" in assumptions[0]


def test_nonnegative_exponents_are_recorded():
    r = VarTable.make(["x", "y"])
    p = IntegralProblem(r, ["y"], heaviside=[P("y", r)], powers=[(P("x^3-y^2", r), "1/6")])
    assert p.powers[0][1] == Fraction(1, 6)
    _, _, assumptions = integrand_ideal(p)
    assert assumptions == ["exponents are nonnegative, where the family is holomorphic"]


def test_omega_assertion_required():
    r = VarTable.make(["x", "y", "t"])
    p = IntegralProblem(r, ["x", "y"], heaviside=[P("t-x^2-y^2", r)], powers=[(P("1+x^4+y^4", r), -1)])
    with pytest.raises(OmegaAssertionMissing):
        definite_integral_ideal(p)


def test_problem_validation():
    r = VarTable.make(["x", "y"])
    with pytest.raises(ValueError, match="assignment missing"):
        IntegralProblem(r, ["y"], powers=[(P("x", r), None)])
    with pytest.raises(TypeError):
        IntegralProblem(r, ["y"], powers=[(P("x", r), 0.5)])
    with pytest.raises(ValueError):
        IntegralProblem(r, ["w"])
    with pytest.raises(ValueError):
        IntegralProblem(r, ["y"], route="other")


def test_bessel_system():
    ops = bessel_operators("x", "nu")
    ra = ops[0].ring
    assert str(ops[0]) == "x^2*dx^2 + x*dx + x^2 - nu^2"
    # J_{nu+2} - (2(nu+1)/x) J_{nu+1} + J_nu = 0, multiplied by x
    E = DifferenceDiffOp.shift(ra, ["nu"], [1])
    X = DifferenceDiffOp.from_weyl(ra.gen("x"), ["nu"])
    assert ops[1] == E * E * X + X - DifferenceDiffOp.from_weyl(P("2*nu + 2", ra), ["nu"]) * E


def test_bessel_base_ideal_is_holonomic():
    r = VarTable.make(["x", "y"], ["t1"])
    base = base_from_difference(bessel_operators("x", "nu"), r, {"t1": "nu"})
    assert base.contains(r.d("y"))
    assert base.is_holonomic()


@pytest.mark.slow
def test_sextic_region_area():
    r = VarTable.make(["x", "y", "t"])
    p = IntegralProblem(r, ["x", "y"], heaviside=[P("t-x^6-x^4*y^2-y^4", r)])
    res = definite_integral_ideal(p)
    target = ("(147456*t^7 - 995328*t^6)*dt^7 + (3096576*t^6 - 15925248*t^5)*dt^6"
              " + (20604416*t^5 - 74822400*t^4)*dt^5 + (51215360*t^4 - 115430400*t^3)*dt^4"
              " + (43401540*t^3 - 46770960*t^2)*dt^3 + (8707020*t^2 - 2078400*t)*dt^2 + (110880*t - 105)*dt")
    assert res.ideal.equals(single(res.ideal.ring, target))


@pytest.mark.slow
def test_bessel_over_paraboloid():
    r = VarTable.make(["x", "y", "z"], ["t1"])
    base = base_from_difference(bessel_operators("x", "nu"), r, {"t1": "nu"})
    p = IntegralProblem(r, ["x", "y"], base=base, heaviside=[P("z-x^2-y^2", r)], powers=[(P("y", r), "s")],
                        shift_vars={"t1": "nu"})
    res = definite_integral_ideal(p)
    ro = res.ideal.ring
    assert set(ro.cparams) == {"nu", "s"}
    assert res.ideal.equals(single(ro, "8*z^2*dz^3 + (-8*s + 8)*z*dz^2 + (2*z - 2*nu^2 + 2*s^2)*dz - s - 1"))
