"""Term orders on Weyl monomials and position-over-term module orders."""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from .weyl import VarTable

LESS, EQUAL, GREATER = -1, 0, 1


class TermOrder:
    """Weight vectors compared in sequence, then a graded-reverse-lex or lex tie-break.

    On a table with a homogenizing variable the order first compares total
    degree and ignores ``h`` in the tie-break, which is the order used for
    Buchberger runs in the homogenized Weyl algebra.
    """

    def __init__(self, ring: VarTable, weights: Sequence = (), tiebreak: str = "grevlex",
                 var_order: Sequence[str] | None = None):
        if tiebreak not in ("grevlex", "lex"):
            raise ValueError(f"unknown tie-break {tiebreak!r}")
        self.ring = ring
        self.weights = tuple(ring.weight(w) for w in weights)
        self.tiebreak = tiebreak
        self.var_order = tuple(var_order) if var_order else None
        for w in self.weights:
            for i in range(ring.N):
                if w[i] + w[ring.N + i] < 0:
                    raise ValueError(f"weight violates w_i + w_(n+i) >= 0 for {ring.weyl[i]!r}")
        names = ring.slot_names
        if ring.homog:
            names = names[:-1]
        if self.var_order:
            perm = [ring.slot(n) for n in self.var_order]
            if sorted(perm) != list(range(len(names))):
                raise ValueError("var_order must list every non-homogenizing slot exactly once")
        else:
            perm = list(range(len(names)))
        self._perm = tuple(perm)
        self._rperm = tuple(reversed(perm))
        self.key = self._build_key()

    # ------------------------------------------------------------------
    def _build_key(self):
        ws = self.weights
        perm, rperm = self._perm, self._rperm
        homog = self.ring.homog is not None
        hs = self.ring.hslot
        grevlex = self.tiebreak == "grevlex"

        def key(e):
            k = []
            if homog:
                k.append(sum(e[:hs + 1]))
            for w in ws:
                k.append(sum([a * b for a, b in zip(w, e) if a]))
            if grevlex:
                k.append(sum([e[i] for i in perm]))
                k.extend([-e[i] for i in rperm])
            else:
                k.extend([e[i] for i in perm])
            if homog:
                k.append(e[hs])
            return tuple(k)

        return key

    @property
    def signature(self) -> tuple:
        """Hashable identity of the order (used for caching bases)."""
        return (self.ring, self.weights, self.tiebreak, self.var_order)

    @property
    def is_well_order(self) -> bool:
        return all(v >= 0 for w in self.weights for v in w)

    @property
    def needs_homogenization(self) -> bool:
        return not self.is_well_order

    def compare(self, m1: Sequence[int], m2: Sequence[int]) -> int:
        k1, k2 = self.key(tuple(m1)), self.key(tuple(m2))
        return LESS if k1 < k2 else GREATER if k1 > k2 else EQUAL

    def lead(self, p):
        """Leading exponent of a nonzero element."""
        return max(p.terms, key=self.key)

    def homogenized(self, name: str = "h") -> TermOrder:
        rh = self.ring.with_homog(name)
        return TermOrder(rh, [w + (0,) if len(w) < rh.nslots else w for w in self.weights],
                         self.tiebreak, self.var_order)

    def on(self, ring: VarTable) -> TermOrder:
        """The same order transported to a table with the same slot names."""
        src = self.ring.slot_names
        ws = []
        for w in self.weights:
            ws.append({n: v for n, v in zip(src, w) if v})
        return TermOrder(ring, ws, self.tiebreak, self.var_order)

    def __repr__(self):
        return f"TermOrder(weights={self.weights}, tiebreak={self.tiebreak!r})"


class ModuleOrder:
    """Position over term: component priority first, then the term order.

    ``priority[i]`` is the rank of component ``i``; larger ranks dominate.
    """

    def __init__(self, term_order: TermOrder, rank: int, priority: Sequence[int] | None = None):
        self.term_order = term_order
        self.ring = term_order.ring
        self.rank = rank
        if priority is None:
            priority = list(range(rank - 1, -1, -1))
        if sorted(priority) != sorted(set(priority)) or len(priority) != rank:
            raise ValueError("priorities must be distinct, one per component")
        self.priority = tuple(priority)
        tk = term_order.key
        pr = self.priority

        def key(e):
            return (pr[e[-1]],) + tk(e[:-1])

        self.key = key

    @property
    def signature(self) -> tuple:
        return self.term_order.signature + (self.rank, self.priority)

    @property
    def is_well_order(self) -> bool:
        return self.term_order.is_well_order

    @property
    def needs_homogenization(self) -> bool:
        return self.term_order.needs_homogenization

    def homogenized(self, name: str = "h") -> ModuleOrder:
        return ModuleOrder(self.term_order.homogenized(name), self.rank, self.priority)

    def compare(self, m1, m2) -> int:
        k1, k2 = self.key(tuple(m1)), self.key(tuple(m2))
        return LESS if k1 < k2 else GREATER if k1 > k2 else EQUAL


# ---------------------------------------------------------------------------
# common orders


def grevlex(ring: VarTable) -> TermOrder:
    return TermOrder(ring, (), "grevlex")


def weight_order(ring: VarTable, w: Mapping[str, int] | Sequence[int], tiebreak: str = "grevlex") -> TermOrder:
    return TermOrder(ring, [w], tiebreak)


def elimination_order(ring: VarTable, eliminate: Sequence[str]) -> TermOrder:
    """Block order with every slot in ``eliminate`` dominating the rest."""
    return TermOrder(ring, [{n: 1 for n in eliminate}], "grevlex")


def total_degree_order(ring: VarTable) -> TermOrder:
    """An order compatible with the (1,1)-weight on variables and derivations."""
    L = 2 * ring.N + ring.K
    return TermOrder(ring, [tuple([1] * L) + ((0,) if ring.homog else ())], "grevlex")


def derivation_degree_order(ring: VarTable) -> TermOrder:
    """An order compatible with the (0,1)-weight (derivations only)."""
    w = {"d" + v: 1 for v in ring.weyl}
    return TermOrder(ring, [w], "grevlex")
