"""End-to-end flows: definite integrals over semialgebraic domains and
difference-differential systems for integrals with parameters."""

from __future__ import annotations

import time
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .annihilators import ann_fs, ann_times_powers, fresh_names, omega_check, restrict_to_Dns, specialize
from .difference import DifferenceDiffOp, difference_ring, mu_inverse, mu_map, nm_normalize
from .groebner import DEFAULT_BOUNDS, Bounds
from .ideal import WeylIdeal, exp_twist, quotient
from .integration import IntegrationResult, integration_ideal, tensor_product_ideal
from .weyl import VarTable, WeylElement, to_scalar


class OmegaAssertionMissing(ValueError):
    """A negative exponent was used where admissibility cannot be checked automatically."""


class OmegaCheckFailed(ValueError):
    """The exponent is a pole of ``f_+^s`` (shifted by a nonnegative integer)."""


@dataclass
class IntegralProblem:
    """``v = ∫ u * Y(f_1)...Y(f_m) d(integrate)`` with ``u = base * prod g_j^lam_j * e^h``.

    ``powers`` pairs a polynomial with its exponent: a rational, or a string
    naming a symbolic parameter.  ``shift_vars`` maps dummy variables already
    present in ``ring`` (and used by ``base``) to the parameter they shift.
    """

    ring: VarTable
    integrate: Sequence[str]
    base: WeylIdeal | None = None
    powers: Sequence[tuple] = ()
    heaviside: Sequence[WeylElement] = ()
    exponent: WeylElement | None = None
    factor: WeylElement | None = None
    route: str = "shortcut"
    assume_omega: bool = False
    shift_vars: Mapping[str, str] = field(default_factory=dict)
    bounds: Bounds = DEFAULT_BOUNDS
    check: bool = True

    def __post_init__(self):
        if self.route not in ("shortcut", "tensor"):
            raise ValueError("route must be 'shortcut' or 'tensor'")
        for v in self.integrate:
            if not self.ring.has(v) or self.ring.slot(v) >= self.ring.N or v in self.shift_vars:
                raise ValueError(f"integration variable {v!r} is not a declared variable")
        for t in self.shift_vars:
            if not self.ring.has(t) or self.ring.slot(t) >= self.ring.N:
                raise ValueError(f"shift variable {t!r} is not a variable of the table")
        if self.base is not None and self.base.ring != self.ring:
            raise ValueError("the base ideal must live in the problem's table")
        if self.shift_vars and self.base is None:
            raise ValueError("shift variables need a base ideal that uses them")
        self.powers = [(p, _tag(lam)) for p, lam in self.powers]

    @property
    def symbolic(self) -> list[str]:
        return [lam for _, lam in self.powers if isinstance(lam, str)]


def _tag(lam):
    if lam is None:
        raise ValueError("λ assignment missing")
    if isinstance(lam, str):
        try:
            return to_scalar(Fraction(lam))
        except ValueError:
            if not lam.isidentifier():
                raise ValueError(f"bad exponent {lam!r}") from None
            return lam
    if isinstance(lam, float):
        raise TypeError("exponents must be exact rationals")
    return to_scalar(lam)


@dataclass
class DifferenceSystem:
    operators: list
    integration: IntegrationResult
    parameters: dict

    def __iter__(self):
        return iter(self.operators)

    def __len__(self):
        return len(self.operators)


def _default_base(p: IntegralProblem) -> WeylIdeal:
    r = p.ring
    if p.base is not None:
        return p.base
    return WeylIdeal([r.d(v) for v in r.weyl], r, p.bounds)


def _omega(p: IntegralProblem, rational: list, assumptions: list):
    """Check or record that the rational exponents lie in the admissible set."""
    if all(lam >= 0 for _, lam in rational):
        if rational:
            assumptions.append("exponents are nonnegative, where the family is holomorphic")
        return
    if len(rational) == 1 and not p.symbolic:
        f, lam = rational[0]
        if not omega_check(f, lam):
            raise OmegaCheckFailed(f"exponent {lam} is a pole of ({f})_+^s")
        assumptions.append(f"exponent {lam} verified against the roots of the b-function of {f}")
        return
    if not p.assume_omega:
        raise OmegaAssertionMissing(
            "negative exponents with several factors need an explicit admissibility assertion")
    assumptions.append("caller asserted that the exponents are admissible")


def integrand_ideal(p: IntegralProblem) -> tuple[WeylIdeal, dict, list]:
    """Annihilator of the integrand and the dummies still standing for parameters."""
    r = p.ring
    assumptions: list = []
    fs = [r.zero() + f for f in p.heaviside] + [g for g, _ in p.powers]
    tags = [to_scalar(0)] * len(p.heaviside) + [lam for _, lam in p.powers]
    rational = [(f, lam) for f, lam in zip(fs, tags) if not isinstance(lam, str)]
    _omega(p, rational, assumptions)
    base = _default_base(p)
    if p.factor is not None:
        base = quotient(base, p.factor)
    params = dict(p.shift_vars)

    if p.route == "tensor":
        if p.symbolic or p.shift_vars:
            raise ValueError("the tensor route takes rational exponents only")
        u = base if p.exponent is None else exp_twist(base, p.exponent)
        if not fs:
            return u, params, assumptions
        names = fresh_names(r, "s", len(fs))
        y = specialize(ann_fs(fs, names, p.bounds), dict(zip(names, tags)))
        if p.base is None and p.factor is None and p.exponent is None:
            return y, params, assumptions
        return tensor_product_ideal(u, y, check=p.check).ideal, params, assumptions

    if not fs:
        ideal = base
    else:
        taken = list(params.values()) + p.symbolic
        dummies = fresh_names(r, "t", len(fs), taken)
        j = ann_times_powers(base, fs, dummies, check=p.check and p.base is not None)
        rat_idx = [k for k, lam in enumerate(tags) if not isinstance(lam, str)]
        sym_idx = [k for k, lam in enumerate(tags) if isinstance(lam, str)]
        if rat_idx:
            snames = fresh_names(j.ring, "s", len(rat_idx), taken)
            j = restrict_to_Dns(j, [dummies[k] for k in rat_idx], snames)
            j = specialize(j, {n: tags[k] for n, k in zip(snames, rat_idx)})
        for k in sym_idx:
            params[dummies[k]] = tags[k]
        ideal = j
    if p.exponent is not None:
        ideal = exp_twist(ideal, p.exponent.to_ring(ideal.ring))
    return ideal, params, assumptions


def _integrate(p: IntegralProblem):
    t0 = time.perf_counter()
    ideal, params, assumptions = integrand_ideal(p)
    t1 = time.perf_counter()
    res = integration_ideal(ideal, p.integrate, check=False)
    res.assumptions = assumptions + res.assumptions
    res.stats["integrand_ms"] = round(1000 * (t1 - t0), 3)
    res.stats["integrate_ms"] = round(1000 * (time.perf_counter() - t1), 3)
    return res, params


def definite_integral_ideal(p: IntegralProblem) -> IntegrationResult:
    """Holonomic ideal annihilating the definite integral.

    Dummies that stand for symbolic parameters are eliminated at the end, so
    the result lives in ``D[params]`` with each parameter central.
    """
    res, params = _integrate(p)
    if params:
        t0 = time.perf_counter()
        names = list(params)
        out = restrict_to_Dns(res.ideal, names, [params[n] for n in names])
        res.ideal = out
        res.stats["parameter_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    return res


def difference_system_for_integral(p: IntegralProblem) -> DifferenceSystem:
    """Difference-differential operators in the parameters for the integral."""
    res, params = _integrate(p)
    if not params:
        raise ValueError("the integrand has no symbolic parameter")
    names = list(params)
    ops = []
    seen = set()
    for g in res.ideal.gens:
        q = nm_normalize(mu_map(g, names, [params[n] for n in names])).primitive()
        if not q.is_zero() and q not in seen:
            seen.add(q)
            ops.append(q)
    return DifferenceSystem(ops, res, params)


# ---------------------------------------------------------------------------
# integrands given by a difference-differential system


def bessel_operators(x: str = "x", nu: str = "nu") -> list[DifferenceDiffOp]:
    """Second order equation and three-term recurrence satisfied by ``J_nu(x)``."""
    r = difference_ring([x], [nu])
    X, N, D = r.gen(x), r.gen(nu), r.d(x)
    ode = DifferenceDiffOp.from_weyl(X * X * D * D + X * D + X * X - N * N, [nu])
    E = DifferenceDiffOp.shift(r, [nu], [1])
    rec = E * E * X + DifferenceDiffOp.from_weyl(X, [nu]) - DifferenceDiffOp.from_weyl(2 * (N + 1), [nu]) * E
    return [ode, rec]


def base_from_difference(ops: Sequence[DifferenceDiffOp], ring: VarTable,
                         shift_vars: Mapping[str, str]) -> WeylIdeal:
    """Translate a system in ``(a, E_a)`` into ``ring`` (``E_a -> t``, ``a -> -dt t``)
    and add ``d/dv`` for every other spatial variable the system does not involve."""
    dummies = list(shift_vars)
    gens = []
    used = set()
    for q in ops:
        if list(q.params) != [shift_vars[t] for t in dummies]:
            raise ValueError("parameter names do not match the shift variables")
        g = mu_inverse(q, dummies, None).to_ring(ring)
        used.update(q.ring.weyl)
        gens.append(g)
    for v in ring.weyl:
        if v not in used and v not in shift_vars:
            gens.append(ring.d(v))
    return WeylIdeal(gens, ring)
