"""Exact scalars, variable tables and normally ordered Weyl-algebra elements.

A :class:`WeylElement` is a finite sum of terms ``c * x^a * d^b * s^c * h^e``
with every variable written to the left of every derivation.  The exponent
tuple of a term follows the layout of its :class:`VarTable`::

    (x_1..x_N, dx_1..dx_N, s_1..s_K[, h])

where ``x_i`` are the spatial and dummy variables, ``s_j`` the central
parameters and ``h`` the optional homogenizing variable.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from math import comb, factorial

from gmpy2 import mpq, mpz

Scalar = type(mpq(0))

SPATIAL = "spatial"
DUMMY = "dummy"
CPARAM = "cparam"
HOMOG = "homog"


def to_scalar(value) -> Scalar:
    """Coerce int, Fraction, mpq or a ``"p/q"`` string to an exact rational."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, type(mpz(0)))):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(Fraction(value.strip()).numerator, Fraction(value.strip()).denominator)
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported")
    raise TypeError(f"cannot convert {value!r} to an exact scalar")


# ---------------------------------------------------------------------------
# variable tables


@dataclass(frozen=True)
class VarTable:
    """Ordered variable declarations of a Weyl algebra.

    ``weyl`` holds the names of variables that carry a derivation, ``kinds``
    their kind (spatial or dummy).  ``cparams`` commute with everything.
    """

    weyl: tuple[str, ...] = ()
    kinds: tuple[str, ...] = ()
    cparams: tuple[str, ...] = ()
    homog: str | None = None
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.weyl) != len(self.kinds):
            raise ValueError("weyl names and kinds differ in length")
        for k in self.kinds:
            if k not in (SPATIAL, DUMMY):
                raise ValueError(f"bad variable kind {k!r}")
        names = list(self.weyl) + ["d" + v for v in self.weyl] + list(self.cparams)
        if self.homog is not None:
            names.append(self.homog)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names are not unique: {names}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def make(cls, spatial: Sequence[str] = (), dummies: Sequence[str] = (),
             cparams: Sequence[str] = (), homog: str | None = None) -> VarTable:
        spatial, dummies = tuple(spatial), tuple(dummies)
        return cls(spatial + dummies, (SPATIAL,) * len(spatial) + (DUMMY,) * len(dummies),
                   tuple(cparams), homog)

    # layout ---------------------------------------------------------------
    @property
    def N(self) -> int:
        return len(self.weyl)

    @property
    def K(self) -> int:
        return len(self.cparams)

    @property
    def nslots(self) -> int:
        return 2 * self.N + self.K + (1 if self.homog else 0)

    @property
    def hslot(self) -> int:
        return 2 * self.N + self.K if self.homog else -1

    @property
    def slot_names(self) -> list[str]:
        names = list(self.weyl) + ["d" + v for v in self.weyl] + list(self.cparams)
        if self.homog:
            names.append(self.homog)
        return names

    @property
    def spatial(self) -> tuple[str, ...]:
        return tuple(v for v, k in zip(self.weyl, self.kinds) if k == SPATIAL)

    @property
    def dummies(self) -> tuple[str, ...]:
        return tuple(v for v, k in zip(self.weyl, self.kinds) if k == DUMMY)

    def slot(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"undeclared name {name!r}") from None

    def has(self, name: str) -> bool:
        return name in self._index

    def kind(self, name: str) -> str:
        i = self.slot(name)
        if i < self.N:
            return self.kinds[i]
        if i < 2 * self.N:
            return "derivation"
        if i < 2 * self.N + self.K:
            return CPARAM
        return HOMOG

    def with_homog(self, name: str = "h") -> VarTable:
        if self.homog:
            return self
        return VarTable(self.weyl, self.kinds, self.cparams, name)

    def without_homog(self) -> VarTable:
        return VarTable(self.weyl, self.kinds, self.cparams, None)

    def weight(self, w: Mapping[str, int] | Sequence[int]) -> tuple[int, ...]:
        """Expand a weight given by name (missing names weigh 0) to a slot tuple."""
        if isinstance(w, Mapping):
            out = [0] * self.nslots
            for name, val in w.items():
                out[self.slot(name)] = int(val)
            return tuple(out)
        w = tuple(int(v) for v in w)
        if len(w) == self.nslots:
            return w
        if self.homog and len(w) == self.nslots - 1:
            return w + (0,)
        raise ValueError(f"weight vector of length {len(w)} does not fit {self.nslots} slots")

    # element constructors -------------------------------------------------
    def zero(self) -> WeylElement:
        return WeylElement(self, {})

    def one(self) -> WeylElement:
        return self.const(1)

    def const(self, c) -> WeylElement:
        c = to_scalar(c)
        return WeylElement(self, {(0,) * self.nslots: c} if c else {})

    def gen(self, name: str) -> WeylElement:
        e = [0] * self.nslots
        e[self.slot(name)] = 1
        return WeylElement(self, {tuple(e): mpq(1)})

    def var(self, name: str) -> WeylElement:
        if self.slot(name) >= self.N and self.kind(name) not in (CPARAM, HOMOG):
            raise KeyError(f"{name!r} is not a variable")
        return self.gen(name)

    def d(self, name: str) -> WeylElement:
        return self.gen("d" + name)

    def monomial(self, exp: Sequence[int], coef=1) -> WeylElement:
        c = to_scalar(coef)
        return WeylElement(self, {tuple(exp): c} if c else {})

    def gens(self) -> dict[str, WeylElement]:
        return {n: self.gen(n) for n in self.slot_names}


# ---------------------------------------------------------------------------
# multiplication kernel


@cache
def leibniz(b: int, c: int) -> tuple[tuple[int, int], ...]:
    """Terms ``(k, C(b,k) C(c,k) k!)`` of ``d^b x^c = sum_k ... x^(c-k) d^(b-k)``."""
    return tuple((k, comb(b, k) * comb(c, k) * factorial(k)) for k in range(min(b, c) + 1))


def mul_monomial_into(N: int, hslot: int, a: tuple, coef, q: Mapping, out: dict) -> None:
    """``out += coef * m_a * q`` where ``m_a`` is the monomial with exponent ``a``.

    ``a`` may be shorter than the keys of ``q`` only by trailing slots that
    are then copied unchanged (module component index).
    """
    dpos = [i for i in range(N) if a[N + i]]
    pad = None
    for c, cc in q.items():
        if pad is None:
            pad = len(c) - len(a)
            if pad:
                a = tuple(a) + (0,) * pad
        act = [i for i in dpos if c[i]]
        cf = coef * cc
        if not act:
            key = tuple([u + v for u, v in zip(a, c)])
            v = out.get(key, 0) + cf
            if v:
                out[key] = v
            else:
                del out[key]
            continue
        base = [u + v for u, v in zip(a, c)]
        terms = [(base, cf)]
        for i in act:
            tab = leibniz(a[N + i], c[i])
            new = []
            for b, bc in terms:
                new.append((b, bc))
                for k, mult in tab[1:]:
                    nb = b[:]
                    nb[i] -= k
                    nb[N + i] -= k
                    if hslot >= 0:
                        nb[hslot] += 2 * k
                    new.append((nb, bc * mult))
            terms = new
        for b, bc in terms:
            key = tuple(b)
            v = out.get(key, 0) + bc
            if v:
                out[key] = v
            else:
                del out[key]


def mul_dicts(N: int, hslot: int, p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for a, ca in p.items():
        mul_monomial_into(N, hslot, a, ca, q, out)
    return out


def add_into(out: dict, q: Mapping, scale=1) -> dict:
    for k, c in q.items():
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


# ---------------------------------------------------------------------------
# elements


class WeylElement:
    """An immutable, normally ordered element of a (homogenized) Weyl algebra."""

    __slots__ = ("_hash", "ring", "terms")

    def __init__(self, ring: VarTable, terms: Mapping):
        self.ring = ring
        self.terms = terms if isinstance(terms, dict) else dict(terms)
        self._hash = None

    # basic protocol -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .parse import format_element
        return format_element(self)

    __str__ = __repr__

    def _coerce(self, other) -> WeylElement:
        if isinstance(other, WeylElement):
            if other.ring != self.ring:
                raise ValueError("operands live in different variable tables")
            return other
        return self.ring.const(other)

    # ring operations --------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        return WeylElement(self.ring, add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        return WeylElement(self.ring, add_into(dict(self.terms), other.terms, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            other = self._coerce(other)
            r = self.ring
            return WeylElement(r, mul_dicts(r.N, r.hslot, self.terms, other.terms))
        c = to_scalar(other)
        if not c:
            return self.ring.zero()
        return WeylElement(self.ring, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, WeylElement):
            return other.__mul__(self)
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # inspection ---------------------------------------------------------------
    def coefficient(self, exp) -> Scalar:
        return self.terms.get(tuple(exp), mpq(0))

    def support(self) -> list[tuple]:
        return list(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def uses(self, names: Iterable[str]) -> bool:
        slots = [self.ring.slot(n) for n in names]
        return any(e[i] for e in self.terms for i in slots)

    def derivation_free(self) -> bool:
        N = self.ring.N
        return not any(any(e[N:2 * N]) for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def scale(self, c) -> WeylElement:
        return self * c

    def primitive(self) -> WeylElement:
        """Integer-primitive multiple with positive leading coefficient.

        The leading term is taken in degree-reverse-lexicographic order over
        the slot layout, which makes the normalization deterministic.
        """
        if not self.terms:
            return self
        from math import gcd, lcm
        den = 1
        for c in self.terms.values():
            den = lcm(den, int(c.denominator))
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for v in nums:
            g = gcd(g, v)
        lead = max(self.terms, key=_grevlex_key)
        sign = -1 if self.terms[lead] < 0 else 1
        f = mpq(den * sign, g)
        return WeylElement(self.ring, {k: c * f for k, c in self.terms.items()})

    def monic(self, key=None) -> WeylElement:
        if not self.terms:
            return self
        lead = max(self.terms, key=key or _grevlex_key)
        return self * (1 / self.terms[lead])

    # structural maps ----------------------------------------------------------
    def to_ring(self, target: VarTable) -> WeylElement:
        """Re-embed into ``target`` by matching slot names (missing ones must be unused)."""
        if target == self.ring:
            return self
        src = self.ring.slot_names
        idx = []
        for i, n in enumerate(src):
            idx.append(target.slot(n) if target.has(n) else None)
        out = {}
        L = target.nslots
        for e, c in self.terms.items():
            ne = [0] * L
            for i, v in enumerate(e):
                if v:
                    j = idx[i]
                    if j is None:
                        raise ValueError(f"{src[i]!r} is not available in the target table")
                    ne[j] = v
            out[tuple(ne)] = c
        return WeylElement(target, out)

    def specialize(self, values: Mapping[str, object], target: VarTable | None = None) -> WeylElement:
        """Substitute rational values for central parameters."""
        r = self.ring
        slots = {r.slot(n): to_scalar(v) for n, v in values.items()}
        for i in slots:
            if not (2 * r.N <= i < 2 * r.N + r.K):
                raise ValueError("only central parameters can be specialized")
        out: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, v in slots.items():
                if e[i]:
                    c = c * v ** e[i]
                    ne[i] = 0
            if c:
                k = tuple(ne)
                add_into(out, {k: c})
        res = WeylElement(r, out)
        if target is None:
            keep = tuple(n for n in r.cparams if n not in values)
            target = VarTable(r.weyl, r.kinds, keep, r.homog)
        return res.to_ring(target)


def _grevlex_key(e):
    return (sum(e),) + tuple(-v for v in reversed(e))


# ---------------------------------------------------------------------------
# operations


def mul(p: WeylElement, q: WeylElement) -> WeylElement:
    if p.ring != q.ring:
        raise ValueError("mismatched variable tables")
    return p * q


def diff(f: WeylElement, name: str) -> WeylElement:
    """Partial derivative of a derivation-free element with respect to ``name``."""
    r = f.ring
    i = r.slot(name)
    out = {}
    for e, c in f.terms.items():
        if e[i]:
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
    return WeylElement(r, out)


def apply_to_polynomial(p: WeylElement, f: WeylElement) -> WeylElement:
    """Let ``p`` act on the polynomial ``f`` (derivations act as d/dx)."""
    r = p.ring
    if r.dummies or r.homog:
        raise ValueError("apply_to_polynomial needs a table without dummy/homog variables")
    if f.ring != r:
        f = f.to_ring(r)
    if not f.derivation_free():
        raise ValueError("the argument must be a polynomial (no derivations)")
    N = r.N
    out: dict = {}
    cache: dict = {}
    for e, c in p.terms.items():
        b = e[N:2 * N]
        g = cache.get(b)
        if g is None:
            g = f
            for i, k in enumerate(b):
                for _ in range(k):
                    g = diff(g, r.weyl[i])
            cache[b] = g
        a = list(e)
        for i in range(N, 2 * N):
            a[i] = 0
        mul_monomial_into(N, -1, tuple(a), c, g.terms, out)
    return WeylElement(r, out)


def fourier(p: WeylElement, names: Iterable[str]) -> WeylElement:
    """Algebraic Fourier transform ``x -> dx, dx -> -x`` on the named variables."""
    r = p.ring
    N = r.N
    sel = set()
    for n in names:
        i = r.slot(n)
        if i >= N:
            raise ValueError(f"{n!r} is not a spatial/dummy variable")
        sel.add(i)
    out: dict = {}
    for e, c in p.terms.items():
        left = list(e)
        right = [0] * len(e)
        sign = 1
        for i in sel:
            a, b = e[i], e[N + i]
            # x^a d^b  ->  d^a (-x)^b
            left[i] = 0
            left[N + i] = a
            right[i] = b
            if b % 2:
                sign = -sign
        # unselected derivations stay in the left factor; they commute with the
        # selected variables moved to the right factor
        mul_monomial_into(N, r.hslot, tuple(left), c * sign, {tuple(right): mpq(1)}, out)
    return WeylElement(r, out)


def substitute(p: WeylElement, target: VarTable,
               var_rules: Mapping[str, WeylElement] | None = None,
               deriv_rules: Mapping[str, WeylElement] | None = None,
               check: bool = True) -> WeylElement:
    """Ring homomorphism sending variables/derivations to the given images.

    Names without a rule map to the same-named generator of ``target``.
    ``deriv_rules`` is keyed by variable name (the image of ``d<name>``).
    """
    src = p.ring
    var_rules = dict(var_rules or {})
    deriv_rules = dict(deriv_rules or {})
    images = []
    for n in src.slot_names:
        if n in var_rules:
            img = var_rules[n]
        elif n.startswith("d") and src.slot(n) >= src.N and src.slot(n) < 2 * src.N and n[1:] in deriv_rules:
            img = deriv_rules[n[1:]]
        else:
            img = target.gen(n)
        if not isinstance(img, WeylElement):
            img = target.const(img)
        images.append(img.to_ring(target) if img.ring != target else img)
    if check and deriv_rules:
        dr = [images[src.slot("d" + v)] for v in deriv_rules]
        for i in range(len(dr)):
            for j in range(i + 1, len(dr)):
                if dr[i] * dr[j] != dr[j] * dr[i]:
                    raise ValueError("replacement derivations do not commute")
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = target.one() if k == 0 else power(i, k - 1) * images[i]
        return powers[key]

    acc: dict = {}
    for e, c in p.terms.items():
        term = target.const(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        add_into(acc, term.terms)
    return WeylElement(target, acc)


def substitute_derivations(p: WeylElement, rules: Mapping[str, WeylElement],
                           target: VarTable | None = None) -> WeylElement:
    """Replace ``d<name>`` by ``rules[name]``; replacements must pairwise commute."""
    target = target or p.ring
    return substitute(p, target, deriv_rules=rules)


def homogenize(p: WeylElement, name: str = "h") -> WeylElement:
    """Pad terms with ``h`` to the top total degree (``h`` must be unused)."""
    r = p.ring
    if r.homog and any(e[r.hslot] for e in p.terms):
        raise ValueError("element already uses the homogenizing variable")
    rh = r.with_homog(name)
    if not p.terms:
        return rh.zero()
    L = 2 * r.N + r.K
    top = max(sum(e[:L]) for e in p.terms)
    out = {}
    for e, c in p.terms.items():
        out[tuple(e[:L]) + (top - sum(e[:L]),)] = c
    return WeylElement(rh, out)


def dehomogenize(p: WeylElement) -> WeylElement:
    """Set ``h = 1``."""
    r = p.ring
    if not r.homog:
        raise ValueError("no homogenizing variable present")
    L = 2 * r.N + r.K
    out: dict = {}
    for e, c in p.terms.items():
        add_into(out, {tuple(e[:L]): c})
    return WeylElement(r.without_homog(), out)


def ord_w(p: WeylElement, w) -> float | int:
    """Maximal weight of a term; ``-inf`` for zero."""
    w = p.ring.weight(w)
    if not p.terms:
        return float("-inf")
    return max(sum(a * b for a, b in zip(w, e)) for e in p.terms)


def initial_form(p: WeylElement, w) -> WeylElement:
    """Sum of the terms of maximal ``w``-weight."""
    if not p.terms:
        raise ValueError("the zero element has no initial form")
    w = p.ring.weight(w)
    wt = {e: sum(a * b for a, b in zip(w, e)) for e in p.terms}
    m = max(wt.values())
    return WeylElement(p.ring, {e: c for e, c in p.terms.items() if wt[e] == m})


def symbol_ring(r: VarTable) -> VarTable:
    """Commutative ring of principal symbols: ``x`` plus ``xi_<x>`` plus parameters."""
    return VarTable(r.weyl, r.kinds, r.cparams + tuple("xi_" + v for v in r.weyl), None)


def principal_symbol(p: WeylElement) -> WeylElement:
    """Top (0,1)-order part with derivations replaced by commuting ``xi``."""
    if not p.terms:
        raise ValueError("the zero element has no principal symbol")
    r = p.ring
    N, K = r.N, r.K
    m = max(sum(e[N:2 * N]) for e in p.terms)
    sr = symbol_ring(r)
    out = {}
    for e, c in p.terms.items():
        if sum(e[N:2 * N]) == m:
            ne = tuple(e[:N]) + (0,) * N + tuple(e[2 * N:2 * N + K]) + tuple(e[N:2 * N])
            out[ne] = c
    return WeylElement(sr, out)


# ---------------------------------------------------------------------------
# truncated power series


@dataclass(frozen=True)
class Series:
    """Univariate power series ``sum coeffs[k] x^k`` known modulo ``x^order``."""

    coeffs: tuple
    order: int

    def __post_init__(self):
        cs = tuple(to_scalar(c) for c in self.coeffs[: self.order])
        cs = cs + (mpq(0),) * (self.order - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_function(cls, fn, order: int) -> Series:
        return cls(tuple(fn(k) for k in range(order)), order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def derivative(self) -> Series:
        return Series(tuple(self.coeffs[k] * k for k in range(1, self.order)), max(self.order - 1, 0))

    def shift(self, a: int) -> Series:
        return Series((mpq(0),) * a + self.coeffs, self.order + a)


def apply_to_series(p: WeylElement, v: Series, var: str) -> Series:
    """Apply a univariate operator in ``var`` to a truncated series."""
    r = p.ring
    i = r.slot(var)
    N = r.N
    if i >= N:
        raise ValueError(f"{var!r} is not a variable with a derivation")
    for e in p.terms:
        if any(x for j, x in enumerate(e) if j not in (i, N + i)):
            raise ValueError("operator is not univariate in the series variable")
    if not p.terms:
        return Series((), v.order)
    bmax = max(e[N + i] for e in p.terms)
    out_order = max(v.order - bmax, 0)
    derivs = [v]
    for _ in range(bmax):
        derivs.append(derivs[-1].derivative())
    acc = [mpq(0)] * out_order
    for e, c in p.terms.items():
        a, b = e[i], e[N + i]
        src = derivs[b].coeffs
        for k in range(out_order - a):
            if k < len(src):
                acc[k + a] += c * src[k]
    return Series(tuple(acc), out_order)
