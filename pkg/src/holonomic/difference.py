"""Difference-differential operators in parameters ``a`` and shifts ``E_a``.

An operator is stored as ``sum_delta C_delta(x, dx, a) E^delta`` with the
parameters written to the left of the shifts and ``delta`` allowed to be
negative.  ``E_a a = (a + 1) E_a`` and the shifts commute with everything
else.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from math import gcd, lcm

from gmpy2 import mpq

from .weyl import VarTable, WeylElement, substitute


class DifferenceDiffOp:
    """Immutable element of ``D<a, E_a, E_a^-1>``."""

    __slots__ = ("params", "ring", "terms")

    def __init__(self, ring: VarTable, params: Sequence[str], terms: Mapping[tuple, WeylElement]):
        self.ring = ring
        self.params = tuple(params)
        for a in self.params:
            if ring.kind(a) != "cparam":
                raise ValueError(f"parameter {a!r} must be central in the coefficient table")
        self.terms = {tuple(d): c for d, c in terms.items() if not c.is_zero()}

    @classmethod
    def from_weyl(cls, p: WeylElement, params: Sequence[str]) -> DifferenceDiffOp:
        return cls(p.ring, params, {(0,) * len(params): p})

    @classmethod
    def shift(cls, ring: VarTable, params: Sequence[str], delta: Sequence[int]) -> DifferenceDiffOp:
        return cls(ring, params, {tuple(delta): ring.one()})

    # arithmetic -----------------------------------------------------------
    def _check(self, other):
        if self.ring != other.ring or self.params != other.params:
            raise ValueError("operators live in different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return DifferenceDiffOp(self.ring, self.params, out)

    def __neg__(self):
        return DifferenceDiffOp(self.ring, self.params, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def _shift_coeff(self, c: WeylElement, delta) -> WeylElement:
        if not any(delta):
            return c
        rules = {a: self.ring.gen(a) + k for a, k in zip(self.params, delta) if k}
        return substitute(c, self.ring, var_rules=rules)

    def __mul__(self, other):
        if not isinstance(other, DifferenceDiffOp):
            if isinstance(other, WeylElement):
                other = DifferenceDiffOp.from_weyl(other, self.params)
            else:
                return DifferenceDiffOp(self.ring, self.params, {d: c * other for d, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = tuple(a + b for a, b in zip(d1, d2))
                prod = c1 * self._shift_coeff(c2, d1)
                out[d] = out[d] + prod if d in out else prod
        return DifferenceDiffOp(self.ring, self.params, out)

    def __eq__(self, other):
        return (isinstance(other, DifferenceDiffOp) and self.ring == other.ring
                and self.params == other.params and self.terms == other.terms)

    def __hash__(self):
        return hash((self.params, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_normalized(self) -> bool:
        """No negative shift powers occur."""
        return all(v >= 0 for d in self.terms for v in d)

    def left_shift(self, nu: Sequence[int]) -> DifferenceDiffOp:
        """``E^nu * self``."""
        out = {}
        for d, c in self.terms.items():
            out[tuple(a + b for a, b in zip(d, nu))] = self._shift_coeff(c, nu)
        return DifferenceDiffOp(self.ring, self.params, out)

    def shift_degrees(self) -> tuple:
        return tuple(max(d[i] for d in self.terms) for i in range(len(self.params)))

    def primitive(self) -> DifferenceDiffOp:
        """Integer-primitive multiple, positive on the top shift's leading coefficient."""
        if not self.terms:
            return self
        den, g = 1, 0
        for c in self.terms.values():
            for v in c.terms.values():
                den = lcm(den, int(v.denominator))
        for c in self.terms.values():
            for v in c.terms.values():
                g = gcd(g, int(v * den))
        top = max(self.terms, key=lambda d: (sum(d), d))
        lead = self.terms[top].primitive()
        ratio = next(iter(lead.terms.values())) / self.terms[top].terms[next(iter(lead.terms))]
        f = mpq(den, g) * (1 if ratio > 0 else -1)
        return DifferenceDiffOp(self.ring, self.params, {d: c * f for d, c in self.terms.items()})

    def __repr__(self):
        return format_difference(self)

    __str__ = __repr__


def _shift_name(a: str) -> str:
    return "E_" + a


def format_difference(q: DifferenceDiffOp) -> str:
    if not q.terms:
        return "0"
    pieces = []
    for d in sorted(q.terms, key=lambda d: (sum(d), d), reverse=True):
        c = q.terms[d]
        mono = []
        for a, k in zip(q.params, d):
            if k == 1:
                mono.append(_shift_name(a))
            elif k:
                mono.append(f"{_shift_name(a)}^{k}")
        m = "*".join(mono)
        cs = str(c)
        if not m:
            pieces.append(cs)
            continue
        if cs == "1":
            pieces.append(m)
        elif cs == "-1":
            pieces.append("-" + m)
        elif len(c.terms) == 1 and "+" not in cs[1:] and " - " not in cs:
            pieces.append(f"{cs}*{m}")
        else:
            pieces.append(f"({cs})*{m}")
    out = pieces[0]
    for p in pieces[1:]:
        if p.startswith("-") and not p.startswith("-("):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


# ---------------------------------------------------------------------------
# the maps between shift operators and dummy variables


def _coeff_ring(ring: VarTable, dummies: Sequence[str], params: Sequence[str]) -> VarTable:
    keep = [v for v in ring.weyl if v not in dummies]
    for a in params:
        if ring.has(a):
            raise ValueError(f"parameter name {a!r} is already used")
    return VarTable(tuple(keep), tuple(ring.kinds[ring.slot(v)] for v in keep),
                    ring.cparams + tuple(params), None)


def mu_map(p: WeylElement, dummies: Sequence[str], params: Sequence[str]) -> DifferenceDiffOp:
    """``t_i -> E_{a_i}``, ``dt_i -> -a_i E_{a_i}^-1``."""
    r = p.ring
    dummies, params = list(dummies), list(params)
    if len(dummies) != len(params):
        raise ValueError("one parameter per dummy is needed")
    cr = _coeff_ring(r, dummies, params)
    N = r.N
    ts = [r.slot(t) for t in dummies]
    other = [(i, cr.slot(r.slot_names[i])) for i in range(2 * N + r.K)
             if i not in ts and i - N not in ts]
    out: dict = {}
    for e, c in p.terms.items():
        mono = [0] * cr.nslots
        for i, j in other:
            mono[j] = e[i]
        coef = cr.monomial(mono, c)
        delta = []
        for k, s in enumerate(ts):
            cc, ee = e[s], e[N + s]
            # E^c (-a E^-1)^e = (-1)^e (a+c)(a+c-1)...(a+c-e+1) E^(c-e)
            a = cr.gen(params[k])
            for i in range(ee):
                coef = coef * (a + (cc - i))
            if ee % 2:
                coef = -coef
            delta.append(cc - ee)
        d = tuple(delta)
        out[d] = out[d] + coef if d in out else coef
    return DifferenceDiffOp(cr, params, out)


def nm_normalize(q: DifferenceDiffOp) -> DifferenceDiffOp:
    """``E^nu q`` for the smallest ``nu >= 0`` clearing every negative shift."""
    if not q.terms:
        return q
    nu = tuple(max(0, -min(d[i] for d in q.terms)) for i in range(len(q.params)))
    return q.left_shift(nu)


def shift_minimality(q: DifferenceDiffOp, normalized: DifferenceDiffOp) -> bool:
    """True when ``normalized = E^nu q`` has no negative shift and no smaller ``nu`` would do.

    Minimality is syntactic: every component with ``nu_i > 0`` has a term of
    shift exactly zero, so lowering ``nu_i`` by one brings back ``E^-1``.
    """
    if not normalized.is_normalized():
        return False
    if not q.terms:
        return not normalized.terms
    nu = []
    for i in range(len(q.params)):
        lo_q = min(d[i] for d in q.terms)
        lo_n = min(d[i] for d in normalized.terms)
        nu.append(lo_n - lo_q)
    if any(v < 0 for v in nu) or q.left_shift(nu) != normalized:
        return False
    return all(v == 0 or min(d[i] for d in normalized.terms) == 0 for i, v in enumerate(nu))


def mu_inverse(q: DifferenceDiffOp, dummies: Sequence[str], target: VarTable | None = None) -> WeylElement:
    """Preimage of a normalized operator: ``E_a -> t``, ``a -> -dt t``."""
    if not q.is_normalized():
        raise ValueError("only operators without negative shifts have a preimage")
    cr = q.ring
    dummies = list(dummies)
    if target is None:
        target = VarTable(cr.weyl + tuple(dummies), cr.kinds + ("dummy",) * len(dummies),
                          tuple(c for c in cr.cparams if c not in q.params), None)
    rules = {a: -(target.d(t) * target.gen(t)) for a, t in zip(q.params, dummies)}
    out = target.zero()
    for d, c in q.terms.items():
        img = substitute(c, target, var_rules=rules, check=False)
        sh = target.one()
        for t, k in zip(dummies, d):
            if k:
                sh = sh * target.gen(t) ** k
        out = out + img * sh
    return out


def difference_ring(spatial: Iterable[str], params: Sequence[str], cparams: Sequence[str] = ()) -> VarTable:
    return VarTable.make(spatial, (), tuple(cparams) + tuple(params))
