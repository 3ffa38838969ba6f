"""Buchberger's algorithm for left ideals and submodules over Weyl algebras.

Coefficients are exact rationals.  Pairs are selected by sugar (ties broken by
the order of the lcm); only the chain criterion is applied, since the coprime
criterion is unsound in the Weyl algebra.  Orders with negative weights are
handled in the homogenized Weyl algebra (``dx*x = x*dx + h^2``) and the result
is dehomogenized.
"""

from __future__ import annotations

import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush
from operator import le

from gmpy2 import mpq

from .orders import ModuleOrder, TermOrder, elimination_order, grevlex
from .weyl import VarTable, WeylElement, add_into, mul_monomial_into


class ResourceLimitError(RuntimeError):
    """A configured bound (pairs, reductions, b-function degree) was exceeded."""

    def __init__(self, message: str, stats: dict | None = None):
        super().__init__(message)
        self.stats = dict(stats or {})


@dataclass(frozen=True)
class Bounds:
    """Resource caps; ``None`` disables a cap."""

    max_pairs: int | None = 200_000
    max_reductions: int | None = 50_000_000
    max_bfunction_degree: int = 40
    max_seconds: float | None = None
    strategy: str = "sugar"
    chain_criterion: bool = True

    def __post_init__(self):
        if self.strategy not in ("normal", "sugar"):
            raise ValueError(f"unknown selection strategy {self.strategy!r}")


DEFAULT_BOUNDS = Bounds()


# ---------------------------------------------------------------------------
# module vectors


class ModuleVector:
    """Fixed-length vector of Weyl elements over one table."""

    __slots__ = ("entries", "ring")

    def __init__(self, entries: Sequence[WeylElement], ring: VarTable | None = None):
        entries = tuple(entries)
        if not entries and ring is None:
            raise ValueError("empty module vector needs an explicit table")
        self.ring = ring or entries[0].ring
        for e in entries:
            if e.ring != self.ring:
                raise ValueError("module entries live in different tables")
        self.entries = entries

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return any(self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        return ModuleVector([a + b for a, b in zip(self.entries, other.entries)], self.ring)

    def __sub__(self, other):
        return ModuleVector([a - b for a, b in zip(self.entries, other.entries)], self.ring)

    def __neg__(self):
        return ModuleVector([-a for a in self.entries], self.ring)

    def __rmul__(self, p):
        """Left multiplication by a Weyl element or scalar."""
        return ModuleVector([p * a for a in self.entries], self.ring)

    def __repr__(self):
        return "[" + ", ".join(str(e) for e in self.entries) + "]"

    def to_terms(self) -> dict:
        out = {}
        for i, e in enumerate(self.entries):
            for k, c in e.terms.items():
                out[k + (i,)] = c
        return out

    @classmethod
    def from_terms(cls, ring: VarTable, rank: int, terms: dict) -> ModuleVector:
        parts = [{} for _ in range(rank)]
        for k, c in terms.items():
            parts[k[-1]][k[:-1]] = c
        return cls([WeylElement(ring, p) for p in parts], ring)


# ---------------------------------------------------------------------------
# engine


class _Rec:
    __slots__ = ("alive", "comp", "idx", "lead", "mask", "poly", "sugar")

    def __init__(self, lead, mask, poly, sugar, comp, idx):
        self.lead = lead
        self.mask = mask
        self.poly = poly
        self.sugar = sugar
        self.comp = comp
        self.idx = idx
        self.alive = True


class _Engine:
    """Reduction and Buchberger over raw term dictionaries."""

    def __init__(self, ring: VarTable, key, module: bool = False,
                 bounds: Bounds = DEFAULT_BOUNDS):
        self.ring = ring
        self.N = ring.N
        self.hslot = ring.hslot
        self.L = ring.nslots
        self.module = module
        self._rawkey = key
        self._kc: dict = {}
        self._nkc: dict = {}
        self._mc: dict = {}
        self.G: list[_Rec] = []
        self.by_comp: dict = {}
        self.pairs: list = []
        self.bounds = bounds
        self._sugar = bounds.strategy == "sugar"
        self.stats = {"s_pairs": 0, "reductions": 0, "zero_reductions": 0, "basis_size": 0}
        self._t0 = time.perf_counter()

    # keys and masks ------------------------------------------------------
    def key(self, e):
        k = self._kc.get(e)
        if k is None:
            k = self._kc[e] = self._rawkey(e)
        return k

    def nkey(self, e):
        k = self._nkc.get(e)
        if k is None:
            k = self._nkc[e] = tuple([-v for v in self.key(e)])
        return k

    def mask(self, e):
        m = self._mc.get(e)
        if m is None:
            m = 0
            for i in range(self.L):
                if e[i]:
                    m |= 1 << i
            self._mc[e] = m
        return m

    def lead(self, p):
        return max(p, key=self.key)

    def comp(self, e):
        return e[-1] if self.module else 0

    def deg(self, e):
        return sum(e[: self.L])

    def sugar_of(self, p):
        return max(self.deg(e) for e in p)

    # reduction -------------------------------------------------------------
    def find_reducer(self, e):
        lst = self.by_comp.get(e[-1] if self.module else 0)
        if not lst:
            return None
        em = self.mask(e)
        for r in lst:
            if not (r.mask & ~em) and all(map(le, r.lead, e)):
                return r
        return None

    def _check_bounds(self):
        b = self.bounds
        st = self.stats
        if b.max_reductions is not None and st["reductions"] > b.max_reductions:
            raise ResourceLimitError(f"reduction bound {b.max_reductions} exceeded", st)
        if b.max_seconds is not None and time.perf_counter() - self._t0 > b.max_seconds:
            raise ResourceLimitError(f"time bound {b.max_seconds}s exceeded", st)

    def reduce(self, p: dict, sugar: int, full: bool = True, transcript: list | None = None):
        """Reduce ``p`` (consumed) by the current basis; returns (remainder, sugar)."""
        if not p:
            return p, sugar
        nkey = self.nkey
        heap = [(nkey(e), e) for e in p]
        heapify(heap)
        rem = {}
        N, hs = self.N, self.hslot
        steps = 0
        while heap:
            _, e = heappop(heap)
            c = p.get(e)
            if c is None:
                continue
            r = self.find_reducer(e)
            if r is None:
                if not full:
                    return p, sugar
                rem[e] = c
                del p[e]
                continue
            del p[e]
            m = tuple([a - b for a, b in zip(e, r.lead)])
            if self.module:
                m = m[:-1]
            md = sum(m)
            sugar = max(sugar, md + r.sugar)
            if transcript is not None:
                transcript.append((c, m, r.idx))
            prod: dict = {}
            mul_monomial_into(N, hs, m, c, r.poly, prod)
            for k, v in prod.items():
                if k == e:
                    continue
                old = p.get(k)
                if old is None:
                    p[k] = -v
                    heappush(heap, (nkey(k), k))
                else:
                    nv = old - v
                    if nv:
                        p[k] = nv
                    else:
                        del p[k]
            steps += 1
            if steps & 1023 == 0:
                self.stats["reductions"] += 1024
                self._check_bounds()
        self.stats["reductions"] += steps & 1023
        if steps:
            self._check_bounds()
        return rem, sugar

    # basis management --------------------------------------------------------
    def add(self, p: dict, sugar: int) -> _Rec:
        lead = self.lead(p)
        inv = 1 / p[lead]
        if inv != 1:
            p = {k: v * inv for k, v in p.items()}
        rec = _Rec(lead, self.mask(lead), p, sugar, self.comp(lead), len(self.G))
        self._update(rec)
        self.G.append(rec)
        lst = self.by_comp.setdefault(rec.comp, [])
        # shorter reducers first
        pos = len(lst)
        for i, other in enumerate(lst):
            if len(other.poly) > len(p):
                pos = i
                break
        lst.insert(pos, rec)
        return rec

    def _lcm(self, a, b):
        return tuple([max(y, x) for x, y in zip(a, b)])

    def _update(self, h: _Rec):
        """Gebauer-Moeller pair update restricted to the chain criterion."""
        hl = h.lead
        new = []
        for g in self.G:
            if not g.alive or g.comp != h.comp:
                continue
            L = self._lcm(g.lead, hl)
            new.append((g, L))
        G = self.G
        if not self.bounds.chain_criterion:
            for g, L in new:
                self._push(g, h, L, self.pairs)
            return
        # chain criterion among the new pairs (criteria M and F)
        kept = []
        seen = set()
        lcms = [L for _, L in new]
        for g, L in new:
            if L in seen:
                continue
            dominated = False
            for L2 in lcms:
                if L2 != L and all(map(le, L2, L)):
                    dominated = True
                    break
            if dominated:
                continue
            seen.add(L)
            kept.append((g, L))
        # chain criterion on old pairs (criterion B)
        old = []
        for item in self.pairs:
            L = item[4]
            i, j = item[2], item[3]
            if (all(map(le, hl, L)) and self._lcm(G[i].lead, hl) != L
                    and self._lcm(G[j].lead, hl) != L):
                continue
            old.append(item)
        for g, L in kept:
            self._push(g, h, L, old, False)
        heapify(old)
        self.pairs = old

    def _push(self, g: _Rec, h: _Rec, L, heap: list, sift: bool = True):
        m1 = sum(a - b for a, b in zip(L[: self.L], g.lead[: self.L]))
        m2 = sum(a - b for a, b in zip(L[: self.L], h.lead[: self.L]))
        s = max(m1 + g.sugar, m2 + h.sugar)
        item = (s if self._sugar else 0, self.key(L), g.idx, h.idx, L, s)
        if sift:
            heappush(heap, item)
        else:
            heap.append(item)

    def spoly(self, i: int, j: int, L):
        gi, gj = self.G[i], self.G[j]
        N, hs = self.N, self.hslot
        mi = tuple([a - b for a, b in zip(L, gi.lead)])
        mj = tuple([a - b for a, b in zip(L, gj.lead)])
        if self.module:
            mi, mj = mi[:-1], mj[:-1]
        out: dict = {}
        mul_monomial_into(N, hs, mi, mpq(1), gi.poly, out)
        mul_monomial_into(N, hs, mj, mpq(-1), gj.poly, out)
        return out

    def run(self, gens: Iterable[dict]):
        gens = [dict(g) for g in gens if g]
        gens.sort(key=lambda g: self.key(self.lead(g)))
        for g in gens:
            r, s = self.reduce(g, self.sugar_of(g))
            if r:
                self.add(r, s)
        bp = self.bounds.max_pairs
        while self.pairs:
            _, _, i, j, L, s = heappop(self.pairs)
            self.stats["s_pairs"] += 1
            if bp is not None and self.stats["s_pairs"] > bp:
                raise ResourceLimitError(f"S-pair bound {bp} exceeded", self.stats)
            sp = self.spoly(i, j, L)
            r, s = self.reduce(sp, s)
            if r:
                self.add(r, s)
            else:
                self.stats["zero_reductions"] += 1
        return self.interreduce()

    def interreduce(self) -> list[dict]:
        recs = sorted(self.G, key=lambda r: self.key(r.lead))
        minimal: list[_Rec] = []
        for r in recs:
            if any(m.comp == r.comp and all(map(le, m.lead, r.lead)) for m in minimal):
                continue
            minimal.append(r)
        self.by_comp = {}
        for r in minimal:
            self.by_comp.setdefault(r.comp, []).append(r)
        out = []
        for r in minimal:
            lst = self.by_comp[r.comp]
            lst.remove(r)
            lead_c = r.poly[r.lead]
            tail = {k: v for k, v in r.poly.items() if k != r.lead}
            red, _ = self.reduce(tail, r.sugar)
            red[r.lead] = lead_c
            r.poly = red
            lst.append(r)
            out.append(red)
        self.stats["basis_size"] = len(out)
        return out


# ---------------------------------------------------------------------------
# public API


def _as_terms(p, module: bool):
    if module:
        if not isinstance(p, ModuleVector):
            raise TypeError("expected a ModuleVector")
        return p.to_terms()
    if not isinstance(p, WeylElement):
        raise TypeError("expected a WeylElement")
    return dict(p.terms)


def _homogenize_terms(terms: dict, ring: VarTable, module: bool) -> dict:
    L = 2 * ring.N + ring.K
    if not terms:
        return {}
    top = max(sum(e[:L]) for e in terms)
    out = {}
    for e, c in terms.items():
        base = tuple(e[:L]) + (top - sum(e[:L]),)
        out[base + ((e[-1],) if module else ())] = c
    return out


def _dehomogenize_terms(terms: dict, ring: VarTable, module: bool) -> dict:
    L = 2 * ring.N + ring.K
    out: dict = {}
    for e, c in terms.items():
        k = tuple(e[:L]) + ((e[-1],) if module else ())
        add_into(out, {k: c})
    return out


@dataclass
class GroebnerBasis:
    """A reduced Gröbner basis of a left ideal or submodule."""

    ring: VarTable
    order: TermOrder | ModuleOrder
    elements: list
    homogenized: bool = False
    hom_terms: list | None = None
    stats: dict = field(default_factory=dict)
    rank: int | None = None

    @property
    def is_module(self) -> bool:
        return self.rank is not None

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def leading_exponents(self) -> list[tuple]:
        key = self.order.key
        return [max(_as_terms(g, self.is_module), key=key) for g in self.elements]

    def is_unit_ideal(self) -> bool:
        if self.is_module:
            return False
        return any(g.is_constant() and g for g in self.elements)

    def _engine(self) -> _Engine:
        if self.order.needs_homogenization:
            raise ValueError("normal forms need a well-ordered basis; recompute with a term order")
        eng = _Engine(self.ring, self.order.key, self.is_module)
        for g in self.elements:
            t = _as_terms(g, self.is_module)
            lead = eng.lead(t)
            inv = 1 / t[lead]
            t = {k: v * inv for k, v in t.items()}
            rec = _Rec(lead, eng.mask(lead), t, eng.sugar_of(t), eng.comp(lead), len(eng.G))
            eng.G.append(rec)
            eng.by_comp.setdefault(rec.comp, []).append(rec)
        return eng

    def normal_form(self, p, transcript: list | None = None):
        """Fully reduced remainder of ``p``.

        With ``transcript`` a list, it receives ``(coef, monomial, index)``
        triples such that ``p = sum coef * x^m * elements[index] + remainder``
        (elements taken monic).
        """
        module = self.is_module
        eng = self._engine()
        terms = _as_terms(p, module)
        if not terms:
            return p
        rem, _ = eng.reduce(terms, eng.sugar_of(terms), True, transcript)
        if module:
            return ModuleVector.from_terms(self.ring, self.rank, rem)
        return WeylElement(self.ring, rem)

    def contains(self, p) -> bool:
        return self.normal_form(p).is_zero()

    def monic_elements(self) -> list:
        if self.is_module:
            return list(self.elements)
        key = self.order.key
        out = []
        for g in self.elements:
            out.append(g * (1 / g.terms[max(g.terms, key=key)]))
        return out


def buchberger(gens: Sequence, order: TermOrder | ModuleOrder,
               bounds: Bounds = DEFAULT_BOUNDS) -> GroebnerBasis:
    """Gröbner basis of the left ideal (or submodule) generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    module = isinstance(order, ModuleOrder)
    ring = order.ring
    t0 = time.perf_counter()
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators and order use different variable tables")
        if module and g.rank != order.rank:
            raise ValueError("module vector rank does not match the order")
    terms = [_as_terms(g, module) for g in gens]
    if order.needs_homogenization:
        if ring.homog:
            raise ValueError("cannot homogenize a table that already has a homogenizing variable")
        horder = order.homogenized()
        eng = _Engine(horder.ring, horder.key, module, bounds)
        hterms = [_homogenize_terms(t, ring, module) for t in terms]
        res = eng.run(hterms)
        deh = []
        seen = set()
        for t in res:
            d = _dehomogenize_terms(t, ring, module)
            if d:
                fz = frozenset(d.items())
                if fz not in seen:
                    seen.add(fz)
                    deh.append(d)
        if not module and any(all(not any(k) for k in d) for d in deh):
            deh = [{(0,) * ring.nslots: mpq(1)}]
        elements = [_wrap(d, ring, module, order) for d in deh]
        stats = dict(eng.stats, wall_ms=round(1000 * (time.perf_counter() - t0), 3))
        return GroebnerBasis(ring, order, elements, True, res, stats,
                             order.rank if module else None)
    eng = _Engine(ring, order.key, module, bounds)
    res = eng.run(terms)
    elements = [_wrap(d, ring, module, order) for d in res]
    elements.sort(key=lambda g: order.key(max(_as_terms(g, module), key=order.key)))
    stats = dict(eng.stats, wall_ms=round(1000 * (time.perf_counter() - t0), 3))
    return GroebnerBasis(ring, order, elements, False, None, stats,
                         order.rank if module else None)


def _wrap(terms: dict, ring: VarTable, module: bool, order):
    if module:
        return ModuleVector.from_terms(ring, order.rank, terms)
    return WeylElement(ring, terms)


def normal_form(p, g: GroebnerBasis, transcript: list | None = None):
    return g.normal_form(p, transcript)


def s_pairs_reduce_to_zero(g: GroebnerBasis) -> bool:
    """Re-check the Gröbner property: every S-polynomial reduces to zero."""
    module = g.is_module
    if g.homogenized:
        ring = g.ring.with_homog()
        order = g.order.homogenized()
        elems = g.hom_terms
    else:
        ring, order = g.ring, g.order
        elems = [_as_terms(e, module) for e in g.elements]
    eng = _Engine(ring, order.key, module)
    for t in elems:
        lead = eng.lead(t)
        inv = 1 / t[lead]
        t = {k: v * inv for k, v in t.items()}
        rec = _Rec(lead, eng.mask(lead), t, 0, eng.comp(lead), len(eng.G))
        eng.G.append(rec)
        eng.by_comp.setdefault(rec.comp, []).append(rec)
    for i in range(len(eng.G)):
        for j in range(i + 1, len(eng.G)):
            a, b = eng.G[i], eng.G[j]
            if a.comp != b.comp:
                continue
            sp = eng.spoly(i, j, eng._lcm(a.lead, b.lead))
            r, _ = eng.reduce(sp, 0)
            if r:
                return False
    return True


def eliminate(gens: Sequence[WeylElement], keep: Sequence[str],
              bounds: Bounds = DEFAULT_BOUNDS) -> list[WeylElement]:
    """Generators of the ideal intersected with the subalgebra on ``keep``."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    keep = set(keep)
    for n in keep:
        ring.slot(n)
        if n.startswith("d") and ring.N <= ring.slot(n) < 2 * ring.N and n[1:] not in keep:
            raise ValueError(f"keeping {n!r} requires keeping {n[1:]!r}")
    drop = [n for n in ring.slot_names if n not in keep and n != ring.homog]
    if not drop:
        return buchberger(gens, grevlex(ring), bounds).elements
    gb = buchberger(gens, elimination_order(ring, drop), bounds)
    return [g for g in gb.elements if not g.uses(drop)]
