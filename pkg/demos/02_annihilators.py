"""Annihilating ideals of powers, logarithms and delta functions.

The cusp ``x^3 - y^2`` is the running example.  Its Bernstein-Sato
polynomial tells us for which exponents the distribution ``f_+^lam``
needs care.
"""

from fractions import Fraction

from holonomic import (
    VarTable,
    ann_delta_graph,
    ann_delta_hypersurface,
    ann_fs,
    ann_log_power,
    bs_polynomial,
    omega_check,
    parse_polynomial,
)

r = VarTable.make(["x", "y"])
cusp = parse_polynomial("x^3 - y^2", r)

print("Ann f^s:")
for g in ann_fs(cusp, ["s"]).reduced().gens:
    print("   ", g)

b = bs_polynomial(cusp)
print("\nBernstein-Sato polynomial:", b.factored())
for lam in (Fraction(1, 2), Fraction(-5, 6), Fraction(-1, 3)):
    print(f"   lam = {lam}: admissible = {omega_check(cusp, lam, b)}")

print("\noperators killing f^lam * log f (lam symbolic):")
for g in ann_log_power(cusp, 1, None, "lam").reduced().gens[:3]:
    print("   ", g)

print("\ndelta(t - f) lives on the graph:")
for g in ann_delta_graph(cusp, "t").gens:
    print("   ", g)

circle = parse_polynomial("x^2 + y^2 - 1", r)
print("\ndelta on the unit circle:", [str(g) for g in ann_delta_hypersurface(circle).gens])
