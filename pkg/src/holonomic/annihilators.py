"""Annihilating ideals of powers, logarithms and delta functions of polynomials."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from math import comb

from gmpy2 import mpq

from .bfunction import BFunction
from .groebner import DEFAULT_BOUNDS, Bounds, ModuleVector, buchberger, eliminate
from .ideal import WeylIdeal, is_holonomic
from .orders import ModuleOrder, TermOrder, elimination_order
from .weyl import DUMMY, VarTable, WeylElement, diff, substitute, to_scalar


class NotHolonomicError(ValueError):
    """An input ideal was required to be holonomic and is not."""


class SingularHypersurfaceError(ValueError):
    """The polynomial and its gradient have a common complex zero."""


def fresh_names(ring: VarTable, base: str, count: int, taken: Sequence[str] = ()) -> list[str]:
    """``count`` names derived from ``base`` that are free in ``ring``."""
    used = set(ring.slot_names) | set(taken) | {"d" + n for n in ring.slot_names}
    out = []
    if count == 1 and base not in used and "d" + base not in used:
        return [base]
    k = 1
    while len(out) < count:
        name = f"{base}{k}"
        if name not in used and "d" + name not in used:
            out.append(name)
            used.add(name)
        k += 1
    return out


def _polys(fs, ring: VarTable | None = None) -> list[WeylElement]:
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one polynomial")
    ring = ring or fs[0].ring
    out = []
    for f in fs:
        if f.ring != ring:
            f = f.to_ring(ring)
        if f.is_zero():
            raise ValueError("polynomials must be nonzero")
        if not f.derivation_free():
            raise ValueError(f"{f} is not a polynomial")
        out.append(f)
    return out


def _extend(ring: VarTable, dummies: Sequence[str] = (), cparams: Sequence[str] = ()) -> VarTable:
    return VarTable(ring.weyl + tuple(dummies), ring.kinds + (DUMMY,) * len(dummies),
                    ring.cparams + tuple(cparams), ring.homog)


# ---------------------------------------------------------------------------
# graph ideal and power products


def ann_times_powers(i: WeylIdeal, fs: Sequence[WeylElement], dummies: Sequence[str] | None = None,
                     check: bool = True) -> WeylIdeal:
    """Ideal annihilating ``u * f_1^{s_1} ... f_p^{s_p}`` in the ring with new dummies ``t_j``.

    ``t_j`` acts as the shift ``s_j -> s_j + 1`` and ``-dt_j t_j`` as ``s_j``.
    Each generator ``P(x, dx)`` becomes ``P(x, dx + sum_j (df_j/dx) dt_j)``.
    """
    r = i.ring
    fs = _polys(fs, r)
    if check and not is_holonomic(i):
        raise NotHolonomicError("the input ideal is not holonomic")
    names = list(dummies) if dummies else fresh_names(r, "t", len(fs))
    if len(names) != len(fs):
        raise ValueError("one dummy name per polynomial is needed")
    rt = _extend(r, names)
    fs_t = [f.to_ring(rt) for f in fs]
    rules = {}
    for v in r.weyl:
        img = rt.d(v)
        for f, t in zip(fs_t, names):
            df = diff(f, v)
            if not df.is_zero():
                img = img + df * rt.d(t)
        rules[v] = img
    gens = [substitute(g.to_ring(rt), rt, deriv_rules=rules) for g in i.gens]
    gens += [rt.gen(t) - f for f, t in zip(fs_t, names)]
    return WeylIdeal(gens, rt, i.bounds)


def graph_ideal(fs: Sequence[WeylElement], dummies: Sequence[str] | None = None,
                bounds: Bounds = DEFAULT_BOUNDS) -> WeylIdeal:
    """``<dx_i + sum_j (df_j/dx_i) dt_j, t_j - f_j>``, the annihilator of ``delta(t - f) f^s``."""
    fs = _polys(fs)
    r = fs[0].ring
    base = WeylIdeal([r.d(v) for v in r.weyl], r, bounds) if r.weyl else WeylIdeal([], r, bounds)
    return ann_times_powers(base, fs, dummies, check=False)


def restrict_to_Dns(j: WeylIdeal, dummies: Sequence[str] | None = None,
                    s_names: Sequence[str] | None = None) -> WeylIdeal:
    """Generators of ``J ∩ D[s]`` where ``s_j = -dt_j t_j`` for the chosen dummies.

    Each generator is multi-homogenized with a central ``u_j`` (weights
    ``t_j, u_j: -1`` and ``dt_j: +1``), ``1 - u_j v_j`` is added and ``u, v``
    are eliminated.  Each survivor is shifted to weight zero by a monomial in
    ``t_j`` or ``dt_j`` and rewritten through ``t^a dt^a = prod_{i<a} (t dt - i)``.
    """
    r = j.ring
    if dummies is None:
        dummies = r.dummies
    dummies = list(dummies)
    if not dummies:
        raise ValueError("no dummy variables to restrict")
    for t in dummies:
        if r.kind(t) not in (DUMMY, "spatial") or r.slot(t) >= r.N:
            raise ValueError(f"{t!r} is not a variable with a derivation")
    if s_names is None:
        s_names = fresh_names(r, "s", len(dummies))
    s_names = list(s_names)
    if len(s_names) != len(dummies):
        raise ValueError("one parameter name per dummy is needed")
    N = r.N
    tslots = [r.slot(t) for t in dummies]
    uv = fresh_names(r, "u", len(dummies), s_names) + fresh_names(r, "v", len(dummies), s_names)
    p = len(dummies)
    ru = VarTable(r.weyl, r.kinds, r.cparams + tuple(uv), r.homog)
    uslots = [ru.slot(n) for n in uv[:p]]
    gens = []
    for g in j.gens:
        terms = {}
        wts = {e: [e[N + ts] - e[ts] for ts in tslots] for e in g.terms}
        top = [max(w[k] for w in wts.values()) for k in range(p)]
        for e, c in g.terms.items():
            ne = list(e[: 2 * N + r.K]) + [0] * (2 * p)
            for k in range(p):
                ne[uslots[k]] = top[k] - wts[e][k]
            terms[tuple(ne)] = c
        gens.append(WeylElement(ru, terms))
    for k in range(p):
        gens.append(ru.one() - ru.gen(uv[k]) * ru.gen(uv[p + k]))
    gb = buchberger(gens, elimination_order(ru, uv), j.bounds)
    survivors = [g.to_ring(r) for g in gb.elements if not g.uses(uv)]

    keep_weyl = [v for v in r.weyl if v not in dummies]
    out_ring = VarTable(tuple(keep_weyl), tuple(r.kinds[r.slot(v)] for v in keep_weyl),
                        r.cparams + tuple(s_names), None)
    theta_pow: dict = {}

    def falling(k: int, a: int) -> WeylElement:
        # t^a dt^a = prod_{i<a} (theta - i) with theta = t dt = -s - 1
        key = (k, a)
        if key not in theta_pow:
            theta = -out_ring.gen(s_names[k]) - 1
            acc = out_ring.one()
            for i in range(a):
                acc = acc * (theta - i)
            theta_pow[key] = acc
        return theta_pow[key]

    other = [i for i in range(2 * N + r.K) if i not in tslots and i - N not in tslots]
    out = []
    for P in survivors:
        e0 = next(iter(P.terms))
        shift = r.one()
        for k, ts in enumerate(tslots):
            d = e0[N + ts] - e0[ts]
            if d > 0:
                shift = shift * r.gen(dummies[k]) ** d
            elif d < 0:
                shift = shift * r.d(dummies[k]) ** (-d)
        SP = shift * P
        acc = out_ring.zero()
        for e, c in SP.terms.items():
            term = out_ring.const(c)
            mono = [0] * out_ring.nslots
            for i in other:
                if e[i]:
                    mono[out_ring.slot(r.slot_names[i])] = e[i]
            term = term * out_ring.monomial(mono)
            for k, ts in enumerate(tslots):
                a, b = e[ts], e[N + ts]
                if a != b:
                    raise ArithmeticError("survivor is not multi-homogeneous")
                if a:
                    term = term * falling(k, a)
            acc = acc + term
        if not acc.is_zero():
            out.append(acc.primitive())
    return WeylIdeal(_dedupe(out), out_ring, j.bounds)


def _dedupe(gens):
    seen = set()
    out = []
    for g in gens:
        if g not in seen:
            seen.add(g)
            out.append(g)
    return out


def ann_fs(fs: Sequence[WeylElement] | WeylElement, s_names: Sequence[str] | None = None,
           bounds: Bounds = DEFAULT_BOUNDS) -> WeylIdeal:
    """``Ann_{D[s]} f_1^{s_1} ... f_m^{s_m}``."""
    if isinstance(fs, WeylElement):
        fs = [fs]
    fs = _polys(fs)
    r = fs[0].ring
    if s_names is None:
        s_names = fresh_names(r, "s", len(fs))
    dummies = fresh_names(r, "t", len(fs), s_names)
    j = graph_ideal(fs, dummies, bounds)
    return restrict_to_Dns(j, dummies, s_names)


def specialize(i: WeylIdeal, values: Mapping[str, object]) -> WeylIdeal:
    """Substitute rational values for parameters (``P(s) -> P(lambda)``)."""
    vals = {}
    for k, v in values.items():
        if isinstance(v, float):
            raise TypeError("parameter values must be exact rationals")
        vals[k] = to_scalar(v)
    r = i.ring
    keep = tuple(n for n in r.cparams if n not in vals)
    target = VarTable(r.weyl, r.kinds, keep, r.homog)
    return WeylIdeal([g.specialize(vals, target) for g in i.gens], target, i.bounds)


# ---------------------------------------------------------------------------
# logarithms


def _ds(p: WeylElement, s: str, k: int) -> WeylElement:
    for _ in range(k):
        p = diff(p, s)
    return p


def ann_log_power(f: WeylElement, k: int, lam=None, s_name: str = "s",
                  bounds: Bounds = DEFAULT_BOUNDS) -> WeylIdeal:
    """Ideal annihilating ``f_+^lambda (log f)^k``.

    With ``lam`` ``None`` the result keeps ``lambda`` as the central parameter
    ``s_name``; otherwise it is specialized to the given rational.
    """
    if k < 0:
        raise ValueError("the power of the logarithm must be nonnegative")
    g1 = ann_fs([f], [s_name], bounds)
    r = g1.ring
    if k == 0:
        res = g1
    else:
        vecs = []
        for P in g1.gens:
            for jj in range(k + 1):
                entries = [r.zero() for _ in range(k + 1)]
                for i in range(jj + 1):
                    entries[i] = entries[i] + _ds(P, s_name, jj - i) * comb(jj, i)
                vecs.append(ModuleVector(entries, r))
        # parameter weighs like x and dx; components e_1..e_k dominate e_{k+1}
        to = TermOrder(r, [{n: 1 for n in r.slot_names}])
        order = ModuleOrder(to, k + 1)
        gb = buchberger(vecs, order, bounds)
        out = []
        for v in gb.elements:
            if all(v[i].is_zero() for i in range(k)):
                out.append(v[k].primitive())
        res = WeylIdeal(out, r, bounds)
    if lam is not None:
        res = specialize(res, {s_name: lam})
    return res


# ---------------------------------------------------------------------------
# delta functions


def ann_delta_graph(g: WeylElement, t: str = "t") -> WeylIdeal:
    """``<t - g, dx_i + (dg/dx_i) dt>``, the annihilator of ``delta(t - g(x))``."""
    r = g.ring
    if not g.derivation_free():
        raise ValueError("g must be a polynomial")
    if r.has(t):
        raise ValueError(f"{t!r} is already declared")
    rt = VarTable(r.weyl + (t,), r.kinds + ("spatial",), r.cparams, r.homog)
    gt = g.to_ring(rt)
    gens = [rt.gen(t) - gt]
    for v in r.weyl:
        gens.append(rt.d(v) + diff(gt, v) * rt.d(t))
    return WeylIdeal(gens, rt)


def is_nonsingular(f: WeylElement, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    """True when ``f = df/dx_1 = ... = 0`` has no complex solution."""
    r = f.ring
    comm = VarTable((), (), r.weyl + r.cparams, None)
    polys = [f] + [diff(f, v) for v in r.weyl]
    polys = [p.to_ring(comm) for p in polys if not p.is_zero()]
    gb = buchberger(polys, elimination_order(comm, []), bounds)
    return gb.is_unit_ideal()


def ann_delta_hypersurface(f: WeylElement, check: bool = True,
                           bounds: Bounds = DEFAULT_BOUNDS) -> WeylIdeal:
    """``<f, f_j dx_i - f_i dx_j>`` for a nonsingular hypersurface ``f = 0``."""
    r = f.ring
    if not f.derivation_free() or f.is_zero():
        raise ValueError("f must be a nonzero polynomial")
    if check and not is_nonsingular(f, bounds):
        raise SingularHypersurfaceError(f"{f} = 0 is singular")
    grads = [diff(f, v) for v in r.weyl]
    gens = [f]
    n = len(r.weyl)
    for i in range(n):
        for j in range(i + 1, n):
            op = grads[j] * r.d(r.weyl[i]) - grads[i] * r.d(r.weyl[j])
            if not op.is_zero():
                gens.append(op)
    return WeylIdeal(gens, r, bounds)


# ---------------------------------------------------------------------------
# Bernstein-Sato polynomial


def bs_polynomial(f: WeylElement, s_name: str = "s", bounds: Bounds = DEFAULT_BOUNDS) -> BFunction:
    """Monic ``b(s)`` generating ``(Ann f^s + D[s] f) ∩ Q[s]``."""
    ann = ann_fs([f], [s_name], bounds)
    r = ann.ring
    gens = list(ann.gens) + [f.to_ring(r)]
    out = eliminate(gens, [s_name], bounds)
    polys = [g for g in out if not g.is_zero()]
    if not polys:
        raise ArithmeticError("elimination produced no polynomial in s")
    g = min(polys, key=lambda p: p.total_degree())
    si = r.slot(s_name)
    coeffs = [mpq(0)] * (g.total_degree() + 1)
    for e, c in g.terms.items():
        coeffs[e[si]] += c
    return BFunction(tuple(coeffs), s_name)


def omega_check(f: WeylElement, lam, b: BFunction | None = None) -> bool:
    """True unless some root of the b-function equals ``lam + k`` for ``k = 0, 1, 2, ...``."""
    lam = to_scalar(lam)
    b = b or bs_polynomial(f)
    for r in b.roots:
        d = r - lam
        if d.denominator == 1 and d >= 0:
            return False
    return True
