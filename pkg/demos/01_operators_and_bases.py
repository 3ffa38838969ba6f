"""Operators, orders and Gröbner bases in the Weyl algebra.

Differential operators multiply like compositions, so ``dx*x`` is not
``x*dx``.  The script shows the normal ordering, then builds a Gröbner basis
and uses it to decide membership.
"""

from holonomic import VarTable, WeylIdeal, buchberger, grevlex, parse_operator, weight_order

r = VarTable.make(["x", "y"])
P = lambda text: parse_operator(text, r)

print("dx*x            =", P("dx*x"))
print("[dx, x^3*y]     =", P("dx*x^3*y - x^3*y*dx"))
print("(x*dx)^2        =", P("(x*dx)^2"))

# Two first-order equations satisfied by exp(x*y).
gens = [P("dx - y"), P("dy - x")]
gb = buchberger(gens, grevlex(r))
print("\nreduced basis under grevlex:")
for g in gb.monic_elements():
    print("   ", g)

# exp(x*y) satisfies dx*dy u = (1 + x*y) u, so the probe reduces to zero.
probe = P("dx*dy - x*y - 1")
print("\nnormal form of", probe, "->", gb.normal_form(probe))

# A weight with negative entries forces the homogenized algorithm.
w = weight_order(r, {"x": -1, "y": 0, "dx": 1, "dy": 0})
print("needs homogenization:", w.needs_homogenization)
wgb = buchberger(gens, w)
print("basis for (-1,0,1,0):", [str(g) for g in wgb.monic_elements()])

ideal = WeylIdeal(gens, r)
print("\ndimension", ideal.dimension(), "holonomic:", ideal.is_holonomic())
