import pytest

from holonomic import (
    Bounds,
    ModuleOrder,
    ModuleVector,
    ResourceLimitError,
    VarTable,
    buchberger,
    eliminate,
    grevlex,
    normal_form,
    parse_operator,
    weight_order,
)
from holonomic.groebner import s_pairs_reduce_to_zero

from conftest import ops


def test_unit_ideal(r1):
    gb = buchberger([r1.gen("x"), r1.d("x")], grevlex(r1))
    assert gb.is_unit_ideal() and gb.elements == [r1.one()]


def test_single_generator_is_a_basis():
    r = VarTable.make(["x"], (), ["s"])
    g = parse_operator("x*dx - s", r)
    gb = buchberger([g], grevlex(r))
    assert len(gb.elements) == 1 and gb.elements[0] == g


def test_cusp_system_basis(r2s):
    gens = ops(r2s, "2*y*dx + 3*x^2*dy", "2*x*dx + 3*y*dy - 6*s")
    gb = buchberger(gens, grevlex(r2s))
    assert s_pairs_reduce_to_zero(gb)
    for g in gens:
        assert gb.contains(g)
    assert not gb.contains(r2s.d("x"))


def test_normal_forms(r1):
    gb = buchberger([r1.gen("x")], grevlex(r1))
    assert normal_form(r1.d("x") * r1.gen("x"), gb).is_zero()
    assert normal_form(r1.gen("x") * r1.d("x"), gb) == -r1.one()
    assert normal_form(r1.zero(), gb).is_zero()


def test_transcript_reconstructs_input(r2):
    gens = ops(r2, "x*dx + y*dy - 1", "y*dx - x*dy")
    gb = buchberger(gens, grevlex(r2))
    p = parse_operator("x^2*dx^2 + y*dy + 5*x", r2)
    tr = []
    rem = gb.normal_form(p, tr)
    monic = gb.monic_elements()
    acc = rem
    for coef, mono, idx in tr:
        acc = acc + r2.monomial(mono, coef) * monic[idx]
    assert acc == p


def test_weight_order_basis_is_dehomogenized():
    r = VarTable.make(["x", "t"])
    gens = ops(r, "t - x^2", "dx + 2*x*dt")
    gb = buchberger(gens, weight_order(r, {"t": 1, "dt": -1}))
    assert gb.homogenized
    assert all(g.ring == r for g in gb.elements)
    with pytest.raises(ValueError):
        gb.normal_form(r.one())
    assert s_pairs_reduce_to_zero(gb)


def test_elimination():
    r = VarTable.make(["x"], (), ["u", "v"])
    out = eliminate(ops(r, "u*v - 1", "u"), ["x", "dx", "v"])
    assert out == [r.one()]
    r2 = VarTable.make(["x"])
    g = ops(r2, "x*dx - 1")
    assert buchberger(eliminate(g, ["x", "dx"]), grevlex(r2)).contains(g[0])
    with pytest.raises(ValueError):
        eliminate(g, ["dx"])


def test_module_basis(r1):
    x, d = r1.gen("x"), r1.d("x")
    vecs = [ModuleVector([x, r1.one()], r1), ModuleVector([d, r1.zero()], r1)]
    gb = buchberger(vecs, ModuleOrder(grevlex(r1), 2))
    # d*(x, 1) - x*(d, 0) = (1, d)
    assert gb.contains(ModuleVector([r1.one(), d], r1))
    assert s_pairs_reduce_to_zero(gb)


def test_bounds_are_enforced(r2s):
    gens = ops(r2s, "2*y*dx + 3*x^2*dy", "2*x*dx + 3*y*dy - 6*s")
    with pytest.raises(ResourceLimitError) as e:
        buchberger(gens, grevlex(r2s), Bounds(max_pairs=1))
    assert "s_pairs" in e.value.stats
    with pytest.raises(ResourceLimitError):
        buchberger(gens, grevlex(r2s), Bounds(max_reductions=1))
    with pytest.raises(ValueError):
        Bounds(strategy="random")


@pytest.mark.parametrize("strategy", ["normal", "sugar"])
@pytest.mark.parametrize("chain", [True, False])
def test_strategies_agree(r2s, strategy, chain):
    gens = ops(r2s, "2*y*dx + 3*x^2*dy", "2*x*dx + 3*y*dy - 6*s")
    ref = buchberger(gens, grevlex(r2s))
    gb = buchberger(gens, grevlex(r2s), Bounds(strategy=strategy, chain_criterion=chain))
    assert sorted(map(str, gb.elements)) == sorted(map(str, ref.elements))
