"""Recurrences in a parameter from integration ideals.

Integrating against ``x^s`` and mapping ``t -> E_s`` turns differential
equations into difference equations.  The first case recovers the gamma
function recurrence.  The second uses the Bessel function as a base
integrand, where ``t1`` plays the role of the shift in ``nu``.
"""

from holonomic import (
    IntegralProblem,
    VarTable,
    base_from_difference,
    bessel_operators,
    difference_system_for_integral,
    parse_operator,
)

r = VarTable.make(["x"])
gamma = IntegralProblem(r, ["x"], powers=[(parse_operator("x", r), "s")], exponent=parse_operator("-x", r))
ds = difference_system_for_integral(gamma)
print("Gamma(s+1) = ∫ x^s e^-x dx satisfies:", ds.operators[0], "= 0")

print("\nBessel system in (x, nu):")
for q in bessel_operators("x", "nu"):
    print("    ", q)

rb = VarTable.make(["x", "y"], ["t1"])
base = base_from_difference(bessel_operators("x", "nu"), rb, {"t1": "nu"})
problem = IntegralProblem(rb, ["x", "y"], base=base,
                          heaviside=[parse_operator(h, rb) for h in ("x", "y", "1-x-y")],
                          shift_vars={"t1": "nu"})
ds = difference_system_for_integral(problem)
print("\n∫_simplex J_nu(x) dx dy: b-function", ds.integration.b_function.factored())
for q in ds.operators:
    print("    ", q)
