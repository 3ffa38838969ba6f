"""Univariate b-functions with exact rational roots."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import sympy
from gmpy2 import mpq

from .weyl import to_scalar


@dataclass(frozen=True)
class BFunction:
    """Monic polynomial ``sum coeffs[i] * s^i`` over the rationals."""

    coeffs: tuple
    var: str = "s"

    def __post_init__(self):
        cs = [to_scalar(c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            raise ValueError("a b-function is nonzero")
        lead = cs[-1]
        object.__setattr__(self, "coeffs", tuple(c / lead for c in cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, value):
        v = to_scalar(value)
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def _sympy(self):
        s = sympy.Symbol(self.var)
        return sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator))
                           for c in reversed(self.coeffs)], s)

    @cached_property
    def factors(self) -> tuple:
        """Irreducible monic factors over Q as ``(coeff tuple, multiplicity)``."""
        _, facs = self._sympy().factor_list()
        out = []
        for f, m in facs:
            cs = [mpq(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in reversed(f.all_coeffs())]
            lead = cs[-1]
            out.append((tuple(c / lead for c in cs), m))
        return tuple(out)

    @cached_property
    def roots(self) -> dict:
        """Rational roots with multiplicities, each verified by exact evaluation."""
        out = {}
        for cs, m in self.factors:
            if len(cs) == 2:
                r = -cs[0]
                if self(r) != 0:
                    raise ArithmeticError("root verification failed")
                out[r] = out.get(r, 0) + m
        return out

    def integer_roots(self) -> list[int]:
        return sorted(int(r) for r in self.roots if r.denominator == 1)

    def max_integral_root(self) -> int | None:
        ints = self.integer_roots()
        return ints[-1] if ints else None

    def __str__(self):
        return self.factored()

    def expanded(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            a = abs(c)
            cs = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{cs}*{mono}"
            else:
                body = cs
            if terms:
                terms.append((" - " if c < 0 else " + ") + body)
            else:
                terms.append(("-" if c < 0 else "") + body)
        return "".join(terms)

    def factored(self) -> str:
        """Product of monic irreducible factors, linear factors ordered by denominator then root."""
        def sort_key(item):
            cs, _ = item
            if len(cs) == 2:
                r = -cs[0]
                return (0, r.denominator, -r)
            return (1, len(cs), tuple(cs))

        pieces = []
        for cs, m in sorted(self.factors, key=sort_key):
            body = BFunction(cs, self.var).expanded().replace(" ", "")
            p = body if body == self.var else f"({body})"
            pieces.append(p if m == 1 else f"{p}^{m}")
        return "*".join(pieces) if pieces else "1"

    def to_fractions(self) -> list:
        return [Fraction(int(c.numerator), int(c.denominator)) for c in self.coeffs]


def max_integral_root(b: BFunction) -> int | None:
    return b.max_integral_root()


def from_roots(roots: Sequence, var: str = "s") -> BFunction:
    """Monic polynomial with the given rational roots (repeated for multiplicity)."""
    cs = [mpq(1)]
    for r in roots:
        r = to_scalar(r)
        new = [mpq(0)] * (len(cs) + 1)
        for i, c in enumerate(cs):
            new[i + 1] += c
            new[i] -= r * c
        cs = new
    return BFunction(tuple(cs), var)
