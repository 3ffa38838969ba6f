"""Left ideals of Weyl algebras and the ideal-level operations built on them."""

from __future__ import annotations

import threading
from collections.abc import Iterable, Sequence

from .groebner import DEFAULT_BOUNDS, Bounds, GroebnerBasis, buchberger, eliminate
from .orders import TermOrder, derivation_degree_order, grevlex, total_degree_order
from .weyl import VarTable, WeylElement, diff, principal_symbol, substitute

NEG_INF = float("-inf")


class WeylIdeal:
    """Left ideal generated by a finite list of elements of one table.

    Gröbner bases are computed on demand and cached per order.
    """

    def __init__(self, gens: Iterable[WeylElement], ring: VarTable | None = None,
                 bounds: Bounds = DEFAULT_BOUNDS):
        gens = [g for g in gens if not g.is_zero()]
        if ring is None:
            if not gens:
                raise ValueError("an ideal without nonzero generators needs an explicit table")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError("generators live in different variable tables")
        self.ring = ring
        self.gens = tuple(gens)
        self.bounds = bounds
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return "WeylIdeal([" + ", ".join(str(g) for g in self.gens) + "])"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    # bases -------------------------------------------------------------------
    def gb(self, order: TermOrder | None = None) -> GroebnerBasis:
        order = order or grevlex(self.ring)
        sig = order.signature
        gb = self._cache.get(sig)
        if gb is None:
            with self._lock:
                gb = self._cache.get(sig)
                if gb is None:
                    if not self.gens:
                        gb = GroebnerBasis(self.ring, order, [], False)
                    else:
                        gb = buchberger(self.gens, order, self.bounds)
                    self._cache[sig] = gb
        return gb

    def reduced(self) -> WeylIdeal:
        """The same ideal generated by its reduced grevlex basis, content-normalized."""
        return WeylIdeal([g.primitive() for g in self.gb().elements], self.ring, self.bounds)

    def normal_form(self, p: WeylElement) -> WeylElement:
        return self.gb().normal_form(p)

    def contains(self, p: WeylElement) -> bool:
        return self.gb().normal_form(p).is_zero()

    __contains__ = contains

    def is_unit(self) -> bool:
        return self.gb().is_unit_ideal()

    def is_zero(self) -> bool:
        return not self.gens

    def contains_ideal(self, other: WeylIdeal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: WeylIdeal) -> bool:
        """Ideal equality by mutual membership of generators."""
        return self.contains_ideal(other) and other.contains_ideal(self)

    def map(self, fn) -> WeylIdeal:
        return WeylIdeal([fn(g) for g in self.gens], None if self.gens else self.ring, self.bounds)

    def to_ring(self, target: VarTable) -> WeylIdeal:
        return WeylIdeal([g.to_ring(target) for g in self.gens], target, self.bounds)

    # dimension -----------------------------------------------------------------
    def dimension(self) -> float | int:
        """Hilbert dimension of ``D/I`` (``-inf`` for the unit ideal)."""
        _check_no_homog(self.ring)
        r = self.ring
        L = 2 * r.N + r.K
        if not self.gens:
            return L
        gb = self.gb(total_degree_order(r))
        return monomial_dimension([e[:L] for e in gb.leading_exponents()], L)

    def is_holonomic(self) -> bool:
        """``dimension <= n`` with each central parameter counted as one extra variable.

        The unit ideal (zero module) counts as holonomic.
        """
        return self.dimension() <= self.ring.N + self.ring.K

    def characteristic_ideal(self) -> list[WeylElement]:
        """Principal symbols of a basis compatible with the order of operators."""
        _check_no_homog(self.ring)
        if not self.gens:
            return []
        gb = self.gb(derivation_degree_order(self.ring))
        return [principal_symbol(g).primitive() for g in gb.elements]

    def char_dimension(self) -> float | int:
        """Dimension of the characteristic variety (``-inf`` when it is empty)."""
        _check_no_homog(self.ring)
        r = self.ring
        L = 2 * r.N + r.K
        if not self.gens:
            return L
        gb = self.gb(derivation_degree_order(r))
        return monomial_dimension([e[:L] for e in gb.leading_exponents()], L)


def _check_no_homog(ring: VarTable):
    if ring.homog:
        raise ValueError("dimension is defined for tables without a homogenizing variable")


def monomial_dimension(leads: Sequence[tuple], nvars: int) -> float | int:
    """Krull dimension of ``k[z]/<z^a : a in leads>``.

    This is the largest set of coordinates containing the support of no
    generator, which equals the degree of the Hilbert polynomial.
    """
    supports = set()
    for a in leads:
        m = 0
        for i, v in enumerate(a[:nvars]):
            if v:
                m |= 1 << i
        supports.add(m)
    if 0 in supports:
        return NEG_INF
    # keep inclusion-minimal supports
    sup = sorted(supports, key=int.bit_count)
    minimal: list[int] = []
    for m in sup:
        if not any(o & m == o for o in minimal):
            minimal.append(m)

    # the complement of a free set is a hitting set of all supports;
    # search for the smallest hitting set
    best = [nvars]

    def hit(chosen: int, count: int):
        if count >= best[0]:
            return
        for m in minimal:
            if not m & chosen:
                # branch over the coordinates of the first unhit support
                bits = m
                while bits:
                    low = bits & -bits
                    hit(chosen | low, count + 1)
                    bits ^= low
                return
        best[0] = count

    hit(0, 0)
    return nvars - best[0]


def hilbert_count(leads: Sequence[tuple], nvars: int, degree: int) -> int:
    """Number of standard monomials of total degree at most ``degree``.

    Brute force; used as an independent check of :func:`monomial_dimension`.
    """
    gens = [tuple(a[:nvars]) for a in leads]
    count = 0

    def rec(i, prefix, left):
        nonlocal count
        if i == nvars:
            e = tuple(prefix)
            if not any(all(x >= y for x, y in zip(e, g)) for g in gens):
                count += 1
            return
        for k in range(left + 1):
            prefix.append(k)
            rec(i + 1, prefix, left - k)
            prefix.pop()

    rec(0, [], degree)
    return count


# ---------------------------------------------------------------------------
# ideal operations


def _fresh_name(ring: VarTable, base: str) -> str:
    name = base
    k = 0
    while ring.has(name):
        k += 1
        name = f"{base}{k}"
    return name


def intersect(i: WeylIdeal, j: WeylIdeal) -> WeylIdeal:
    """``I ∩ J`` by eliminating a central variable from ``tau*I + (1 - tau)*J``."""
    r = i.ring
    if j.ring != r:
        raise ValueError("ideals live in different variable tables")
    if i.is_zero() or j.is_zero():
        return WeylIdeal([], r, i.bounds)
    tau = _fresh_name(r, "tau")
    rt = VarTable(r.weyl, r.kinds, r.cparams + (tau,), r.homog)
    T = rt.gen(tau)
    gens = [T * g.to_ring(rt) for g in i.gens] + [(1 - T) * g.to_ring(rt) for g in j.gens]
    keep = [n for n in rt.slot_names if n != tau]
    out = eliminate(gens, keep, i.bounds)
    return WeylIdeal([g.to_ring(r) for g in out], r, i.bounds)


def right_divide(w: WeylElement, p: WeylElement) -> WeylElement:
    """``Q`` with ``Q*p == w``; raises if ``w`` is not a left multiple of ``p``."""
    if p.is_zero():
        raise ZeroDivisionError("division by the zero operator")
    r = p.ring
    order = grevlex(r)
    key = order.key
    lp = max(p.terms, key=key)
    cp = p.terms[lp]
    q: dict = {}
    rest = w
    while not rest.is_zero():
        lw = max(rest.terms, key=key)
        m = tuple(a - b for a, b in zip(lw, lp))
        if any(v < 0 for v in m):
            raise ValueError("not a left multiple")
        c = rest.terms[lw] / cp
        q[m] = q.get(m, 0) + c
        rest = rest - r.monomial(m, c) * p
    return WeylElement(r, {k: v for k, v in q.items() if v})


def quotient(i: WeylIdeal, p: WeylElement) -> WeylIdeal:
    """``I : p = {Q | Q*p in I}``."""
    if p.is_zero():
        raise ValueError("quotient by the zero operator")
    k = intersect(i, WeylIdeal([p], i.ring, i.bounds))
    return WeylIdeal([right_divide(g, p) for g in k.gens], i.ring, i.bounds)


def exp_twist(i: WeylIdeal, h: WeylElement) -> WeylIdeal:
    """Conjugate by ``e^h``: the result annihilates ``e^h u`` when ``I`` annihilates ``u``."""
    r = i.ring
    if h.ring != r:
        h = h.to_ring(r)
    if not h.derivation_free():
        raise ValueError("the exponent must be a polynomial")
    rules = {}
    for v in r.weyl:
        dh = diff(h, v)
        if not dh.is_zero():
            rules[v] = r.d(v) - dh
    if not rules:
        return WeylIdeal(i.gens, r, i.bounds)
    return WeylIdeal([substitute(g, r, deriv_rules=rules, check=False) for g in i.gens], r, i.bounds)


def dimension(i: WeylIdeal):
    return i.dimension()


def is_holonomic(i: WeylIdeal) -> bool:
    return i.is_holonomic()


def characteristic_ideal(i: WeylIdeal) -> list[WeylElement]:
    return i.characteristic_ideal()


def char_dimension(i: WeylIdeal):
    return i.char_dimension()
