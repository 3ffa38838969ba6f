"""Integration and restriction of D-modules, b-functions for the integration weight."""

from __future__ import annotations

import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import product
from math import factorial

from gmpy2 import mpq

from .annihilators import NotHolonomicError, fresh_names
from .bfunction import BFunction
from .groebner import ModuleVector, ResourceLimitError, buchberger
from .ideal import WeylIdeal, is_holonomic
from .orders import ModuleOrder, TermOrder, grevlex
from .weyl import VarTable, WeylElement, fourier, initial_form, ord_w, substitute


def integration_weight(ring: VarTable, tvars: Sequence[str]) -> tuple:
    """``+1`` on each integration variable, ``-1`` on its derivation."""
    w = {}
    for t in tvars:
        i = ring.slot(t)
        if i >= ring.N:
            raise ValueError(f"{t!r} is not a variable with a derivation")
        w[t] = 1
        w["d" + t] = -1
    return ring.weight(w)


def _theta(ring: VarTable, tvars: Sequence[str]) -> WeylElement:
    th = ring.zero()
    for t in tvars:
        th = th - ring.d(t) * ring.gen(t)
    return th


@dataclass
class BFunctionSearch:
    b: BFunction
    initial_basis: object
    transcript: list = field(default_factory=list)


def _w_basis(i: WeylIdeal, tvars: Sequence[str]):
    w = integration_weight(i.ring, tvars)
    return w, i.gb(TermOrder(i.ring, [w]))


def b_function_weight(i: WeylIdeal, tvars: Sequence[str], check: bool = False,
                      var: str = "s") -> BFunction:
    """Minimal monic ``b`` with ``b(theta)`` in the initial ideal, ``theta = -sum dt_i t_i``."""
    return _b_function(i, tvars, check, var).b


def _b_function(i: WeylIdeal, tvars, check, var) -> BFunctionSearch:
    if check and not is_holonomic(i):
        raise NotHolonomicError("the ideal is not holonomic")
    r = i.ring
    w, gb = _w_basis(i, tvars)
    init = [initial_form(g, w) for g in gb.elements]
    igb = buchberger(init, grevlex(r), i.bounds)
    theta = _theta(r, tvars)
    cap = i.bounds.max_bfunction_degree
    rows: list = []       # (pivot, vector, combination)
    cur = igb.normal_form(r.one())
    transcript = []
    for k in range(cap + 1):
        transcript.append(cur)
        vec = dict(cur.terms)
        combo = {k: mpq(1)}
        for piv, rv, rc in rows:
            c = vec.get(piv)
            if c:
                for m, v in rv.items():
                    nv = vec.get(m, 0) - c * v
                    if nv:
                        vec[m] = nv
                    else:
                        vec.pop(m, None)
                for m, v in rc.items():
                    nv = combo.get(m, 0) - c * v
                    if nv:
                        combo[m] = nv
                    else:
                        combo.pop(m, None)
        if not vec:
            coeffs = [mpq(0)] * (k + 1)
            for m, v in combo.items():
                coeffs[m] = v
            return BFunctionSearch(BFunction(tuple(coeffs), var), igb, transcript)
        piv = max(vec, key=lambda e: (sum(e), e))
        inv = 1 / vec[piv]
        vec = {m: v * inv for m, v in vec.items()}
        combo = {m: v * inv for m, v in combo.items()}
        # keep the rows reduced with respect to the new pivot
        new_rows = []
        for p2, rv, rc in rows:
            c = rv.get(piv)
            if c:
                rv = dict(rv)
                rc = dict(rc)
                for m, v in vec.items():
                    nv = rv.get(m, 0) - c * v
                    if nv:
                        rv[m] = nv
                    else:
                        rv.pop(m, None)
                for m, v in combo.items():
                    nv = rc.get(m, 0) - c * v
                    if nv:
                        rc[m] = nv
                    else:
                        rc.pop(m, None)
            new_rows.append((p2, rv, rc))
        new_rows.append((piv, vec, combo))
        rows = new_rows
        cur = igb.normal_form(theta * cur)
    raise ResourceLimitError(
        f"b-function not found within bound (degree {cap}); input may not be holonomic")


@dataclass
class IntegrationResult:
    """Output of the integration algorithm with its intermediate data."""

    ideal: WeylIdeal
    b_function: BFunction | None
    k1: int | None
    module_generators: list = field(default_factory=list)
    betas: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    assumptions: list = field(default_factory=list)

    @property
    def generators(self) -> list:
        return list(self.ideal.gens)


def _drop_vars(ring: VarTable, names: Sequence[str]) -> VarTable:
    keep = [v for v in ring.weyl if v not in names]
    return VarTable(tuple(keep), tuple(ring.kinds[ring.slot(v)] for v in keep), ring.cparams, None)


def _falling(c: int, e: int) -> int:
    return factorial(c) // factorial(c - e)


def chi(p: WeylElement, tvars: Sequence[str], out_ring: VarTable, index: dict) -> ModuleVector:
    """Residue of ``p`` modulo ``sum dt_i D`` written as ``sum_beta R_beta t^beta``."""
    r = p.ring
    N = r.N
    ts = [r.slot(t) for t in tvars]
    rank = len(index)
    parts = [{} for _ in range(rank)]
    other = [(i, out_ring.slot(r.slot_names[i])) for i in range(2 * N + r.K)
             if i not in ts and i - N not in ts]
    for e, c in p.terms.items():
        coef = c
        beta = []
        ok = True
        for s in ts:
            a, b = e[s], e[N + s]
            if a < b:
                ok = False
                break
            if b:
                coef = coef * _falling(a, b) * (-1 if b % 2 else 1)
            beta.append(a - b)
        if not ok:
            continue
        beta = tuple(beta)
        if beta not in index:
            raise ArithmeticError(f"component t^{beta} exceeds the b-function bound")
        mono = [0] * out_ring.nslots
        for i, j in other:
            mono[j] = e[i]
        d = parts[index[beta]]
        key = tuple(mono)
        v = d.get(key, 0) + coef
        if v:
            d[key] = v
        else:
            d.pop(key, None)
    return ModuleVector([WeylElement(out_ring, d) for d in parts], out_ring)


def integration_ideal(i: WeylIdeal, tvars: Sequence[str], check: bool = False) -> IntegrationResult:
    """Integration ideal ``D_n ∩ (sum dt_i D + I)`` of a holonomic ideal."""
    t0 = time.perf_counter()
    r = i.ring
    tvars = list(tvars)
    if not tvars:
        raise ValueError("no integration variables")
    out_ring = _drop_vars(r, tvars)
    search = _b_function(i, tvars, check, "s")
    b = search.b
    k1 = b.max_integral_root()
    w, gb = _w_basis(i, tvars)
    stats = {"w_basis_size": len(gb.elements), "b_degree": b.degree}
    if k1 is None or k1 < 0:
        stats["wall_ms"] = round(1000 * (time.perf_counter() - t0), 3)
        return IntegrationResult(WeylIdeal([out_ring.one()], out_ring, i.bounds), b, k1, [], [], stats)
    d = len(tvars)
    betas = [bt for bt in product(range(k1 + 1), repeat=d) if sum(bt) <= k1]
    # the t^0 component comes last so that it ranks lowest
    betas.sort(key=lambda bt: (-sum(bt), tuple(-x for x in bt)))
    index = {bt: n for n, bt in enumerate(betas)}
    vecs = []
    for P in gb.elements:
        o = ord_w(P, w)
        if o > k1:
            continue
        for alpha in product(range(k1 - o + 1), repeat=d):
            if sum(alpha) + o > k1:
                continue
            tp = r.monomial([alpha[tvars.index(n)] if n in tvars else 0 for n in r.slot_names]) * P
            v = chi(tp, tvars, out_ring, index)
            if not v.is_zero():
                vecs.append(v)
    rank = len(betas)
    if not vecs:
        ideal = WeylIdeal([], out_ring, i.bounds)
    else:
        order = ModuleOrder(grevlex(out_ring), rank)
        mgb = buchberger(vecs, order, i.bounds)
        last = rank - 1
        gens = [v[last].primitive() for v in mgb.elements
                if all(v[c].is_zero() for c in range(last))]
        ideal = WeylIdeal(gens, out_ring, i.bounds)
        stats.update(module_s_pairs=mgb.stats.get("s_pairs"), module_basis_size=len(mgb.elements))
    stats["rank"] = rank
    stats["wall_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    return IntegrationResult(ideal, b, k1, vecs, betas, stats)


def restriction_ideal(i: WeylIdeal, zvars: Sequence[str], check: bool = False) -> IntegrationResult:
    """Restriction to ``z = 0``, computed as the integration of the Fourier transform."""
    f = WeylIdeal([fourier(g, zvars) for g in i.gens], i.ring, i.bounds)
    return integration_ideal(f, zvars, check)


def tensor_product_ideal(i: WeylIdeal, j: WeylIdeal, check: bool = False) -> IntegrationResult:
    """Annihilator of the product ``u*v`` from ideals of ``u`` and ``v`` (diagonal restriction)."""
    r = i.ring
    if j.ring != r:
        raise ValueError("ideals live in different variable tables")
    if check and not (is_holonomic(i) and is_holonomic(j)):
        raise NotHolonomicError("tensor product inputs must be holonomic")
    xs = list(r.weyl)
    zs = fresh_names(r, "z", len(xs))
    rz = VarTable(r.weyl + tuple(zs), r.kinds + ("spatial",) * len(zs), r.cparams, None)
    # P(x, dx) -> P(x, dx - dz);  Q(y, dy) -> Q(x + z, dz)
    left_rules = {x: rz.d(x) - rz.d(z) for x, z in zip(xs, zs)}
    right_vars = {x: rz.gen(x) + rz.gen(z) for x, z in zip(xs, zs)}
    right_ders = {x: rz.d(z) for x, z in zip(xs, zs)}
    gens = [substitute(g.to_ring(rz), rz, deriv_rules=left_rules) for g in i.gens]
    gens += [substitute(g.to_ring(rz), rz, var_rules=right_vars, deriv_rules=right_ders) for g in j.gens]
    res = restriction_ideal(WeylIdeal(gens, rz, i.bounds), zs)
    res.ideal = res.ideal.to_ring(r)
    return res
