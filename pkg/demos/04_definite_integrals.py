"""Differential equations for parametric definite integrals.

Each problem lists the integrand pieces: Heaviside factors for the domain,
an exponential, and powers.  The pipeline returns a holonomic ideal in the
remaining variables.
"""

import time
from fractions import Fraction
from math import factorial

from holonomic import IntegralProblem, VarTable, definite_integral_ideal, parse_operator
from holonomic.weyl import Series, apply_to_series


def show(title, problem):
    t0 = time.perf_counter()
    res = definite_integral_ideal(problem)
    print(f"{title}  ({time.perf_counter() - t0:.1f} s)")
    for g in res.ideal.reduced().gens:
        print("    ", g)
    for a in res.assumptions:
        print("     assumption:", a)
    return res


# v(x) = ∫_0^1 exp(x*y) dy = (e^x - 1)/x
r = VarTable.make(["x", "y"])
P = lambda text, ring=r: parse_operator(text, ring)
res = show("exp(x*y) over [0, 1]",
           IntegralProblem(r, ["y"], heaviside=[P("y"), P("1-y")], exponent=P("x*y")))
op = res.ideal.reduced().gens[0]
series = Series.from_function(lambda k: Fraction(1, factorial(k + 1)), 20)
print("     kills (e^x - 1)/x to order 20:", apply_to_series(op, series, "x").is_zero())

# v(t) = ∫∫_{x^2+y^2 <= t} 1/(1 + x^4 + y^4)
r3 = VarTable.make(["x", "y", "t"])
show("rational function over a growing disk",
     IntegralProblem(r3, ["x", "y"], heaviside=[P("t-x^2-y^2", r3)], powers=[(P("1+x^4+y^4", r3), -1)],
                     assume_omega=True))

# v(z) = ∫∫_{disk} (x + z)^s, with s kept symbolic
rz = VarTable.make(["x", "y", "z"])
show("(x + z)^s over the unit disk",
     IntegralProblem(rz, ["x", "y"], heaviside=[P("1-x^2-y^2", rz)], powers=[(P("x+z", rz), "s")]))
