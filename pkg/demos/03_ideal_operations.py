"""Intersections, quotients, exponential twists and dimension counts."""

from holonomic import (
                       VarTable,
                       WeylIdeal,
                       char_dimension,
                       characteristic_ideal,
                       exp_twist,
                       intersect,
                       parse_operator,
                       parse_polynomial,
                       quotient,
)

r = VarTable.make(["x"])
P = lambda text: parse_operator(text, r)

# x and x^2 are both killed by the intersection.
both = intersect(WeylIdeal([P("x*dx - 1")], r), WeylIdeal([P("x*dx - 2")], r))
print("Ann x  ∩  Ann x^2 :", [str(g) for g in both.reduced().gens])

# Dividing by a polynomial: Ann(u) : p contains the operators Q with Q*p in Ann(u).
q = quotient(WeylIdeal([P("x*dx - 3")], r), r.gen("x"))
print("(x*dx - 3) : x     :", [str(g) for g in q.reduced().gens])

# Multiplying a solution by exp(x^2) conjugates every operator.
print("twist of <dx>      :", [str(g) for g in exp_twist(WeylIdeal([P("dx")], r), parse_polynomial("x^2", r)).gens])

r2 = VarTable.make(["x", "y"])
i = WeylIdeal([parse_operator("x*dx + y*dy - 1", r2), parse_operator("y*dx - x*dy", r2)], r2)
print("\ncharacteristic ideal:", [str(g) for g in characteristic_ideal(i)])
print("dimension", i.dimension(), "= characteristic dimension", char_dimension(i))
print("holonomic:", i.is_holonomic())
