"""Command-line front end.

Every subcommand reads variable declarations and operators in the text
grammar of :mod:`holonomic.parse` and prints either text or JSON.  Problem
files hold the same options as ``key = value`` lines (see ``--problem``).
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields, replace
from fractions import Fraction

from . import annihilators as ann
from .bfunction import BFunction
from .groebner import DEFAULT_BOUNDS, Bounds, ResourceLimitError
from .ideal import WeylIdeal, intersect, quotient
from .integration import b_function_weight, integration_ideal, restriction_ideal, tensor_product_ideal
from .parse import ParseError, format_element, parse_operator, parse_polynomial
from .pipelines import IntegralProblem, definite_integral_ideal, difference_system_for_integral
from .weyl import Series, VarTable, WeylElement, _grevlex_key, apply_to_series

SCHEMA_VERSION = 1
ENV_VAR = "HOLONOMIC_OPTS"

COMMANDS = ("ann-fs", "ann-log", "ann-delta", "bfunction", "wbfunction", "integrate", "restrict",
            "tensor", "quotient", "intersect", "dim", "definite-integral", "difference-system",
            "check-omega", "apply-series")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# option handling


def _names(text):
    return [n.strip() for n in (text or "").split(",") if n.strip()]


def _list(text):
    return [p.strip() for p in (text or "").split(",") if p.strip()]


def _bound_pairs(items):
    out = {}
    valid = {f.name for f in fields(Bounds)}
    for item in items:
        if "=" not in item:
            raise UsageError(f"bound {item!r} is not of the form key=value")
        k, v = item.split("=", 1)
        k = k.strip().replace("-", "_")
        if k not in valid:
            raise UsageError(f"unknown bound {k!r}; known: {', '.join(sorted(valid))}")
        v = v.strip()
        if k == "strategy":
            out[k] = v
        elif k == "chain_criterion":
            out[k] = v.lower() in ("1", "true", "yes", "on")
        elif v.lower() in ("none", ""):
            out[k] = None
        elif k == "max_seconds":
            out[k] = float(v)
        else:
            out[k] = int(v)
    return out


def resolve_bounds(flag_items, environ=None) -> Bounds:
    """Flags override ``HOLONOMIC_OPTS``, which overrides the defaults."""
    environ = os.environ if environ is None else environ
    env_items = shlex.split(environ.get(ENV_VAR, ""))
    values = _bound_pairs(env_items)
    values.update(_bound_pairs(flag_items or []))
    return replace(DEFAULT_BOUNDS, **values)


def _ring(args) -> VarTable:
    return VarTable.make(_names(args.vars), _names(args.dummies), _names(args.params))


def _ops(text, ring):
    return [parse_operator(g, ring) for g in _list(text)]


def _ideal(text, ring, bounds, what="--gens"):
    gens = _ops(text, ring)
    if not gens:
        raise UsageError(f"{what} is required")
    return WeylIdeal(gens, ring, bounds)


def _poly(args, ring):
    ps = [parse_polynomial(p, ring) for p in _list(args.poly)]
    if not ps:
        raise UsageError("--poly is required")
    return ps


def _rational(text):
    if text is None:
        raise UsageError("--lam is required")
    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"{text!r} is not a rational number") from None


# ---------------------------------------------------------------------------
# reports


def _term_json(ring: VarTable, p: WeylElement):
    names = ring.slot_names
    out = []
    for e in sorted(p.terms, key=_grevlex_key, reverse=True):
        c = p.terms[e]
        coef = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        out.append([coef, {names[i]: v for i, v in enumerate(e) if v}])
    return out


class Report:
    def __init__(self, command):
        self.command = command
        self.generators: list[WeylElement] = []
        self.text_generators: list[str] | None = None
        self.b_function: BFunction | None = None
        self.k1 = None
        self.holonomic = None
        self.assumptions: list[str] = []
        self.stats: dict = {}
        self.extra: dict = {}

    def set_ideal(self, ideal: WeylIdeal, holonomic=True):
        red = ideal.reduced() if ideal.gens else ideal
        if ideal.gens:
            st = ideal.gb().stats
            for k in ("s_pairs", "reductions"):
                if k in st:
                    self.stats[k] = self.stats.get(k, 0) + st[k]
        self.generators = sorted(red.gens, key=lambda g: (g.total_degree(), format_element(g)))
        if holonomic:
            self.holonomic = ideal.is_holonomic()

    def as_json(self):
        out = {"schema_version": SCHEMA_VERSION, "command": self.command}
        if self.text_generators is not None:
            out["generators"] = self.text_generators
        else:
            out["generators"] = [_term_json(g.ring, g) for g in self.generators]
            out["text"] = [format_element(g) for g in self.generators]
        out["b_function"] = None if self.b_function is None else self.b_function.factored()
        out["k1"] = self.k1
        out["holonomic"] = self.holonomic
        out["assumptions"] = list(self.assumptions)
        out["stats"] = self.stats
        out.update(self.extra)
        return out

    def as_text(self):
        lines = []
        if self.text_generators is not None:
            lines += self.text_generators
        else:
            lines += [format_element(g) for g in self.generators]
        for k, v in self.extra.items():
            lines.append(f"{k}: {_plain(v)}")
        if self.b_function is not None:
            lines.append(f"b-function: {self.b_function.factored()}")
        if self.k1 is not None:
            lines.append(f"k1: {self.k1}")
        if self.holonomic is not None:
            lines.append(f"holonomic: {str(self.holonomic).lower()}")
        for a in self.assumptions:
            lines.append(f"assumption: {a}")
        return "\n".join(lines)


def _plain(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list):
        return ", ".join(str(x) for x in v)
    return str(v)


def _stats(res_stats: dict, t0: float, timing: bool) -> dict:
    keep = {k: v for k, v in res_stats.items() if isinstance(v, (int, float, str)) and v is not None}
    keep["wall_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    if not timing:
        keep = {k: v for k, v in keep.items() if not k.endswith("_ms")}
    return keep


# ---------------------------------------------------------------------------
# subcommands


def _problem(args, ring, bounds) -> IntegralProblem:
    powers = []
    for item in args.power or []:
        if "@" not in item:
            raise UsageError(f"--power {item!r} must be of the form poly@exponent")
        f, lam = item.rsplit("@", 1)
        powers.append((parse_polynomial(f, ring), lam.strip()))
    shifts = {}
    for item in args.shift or []:
        if "=" not in item:
            raise UsageError(f"--shift {item!r} must be of the form dummy=parameter")
        t, a = item.split("=", 1)
        shifts[t.strip()] = a.strip()
    base = _ideal(args.base, ring, bounds, "--base") if args.base else None
    if not _names(args.wrt):
        raise UsageError("--wrt is required")
    return IntegralProblem(
        ring, _names(args.wrt), base=base, powers=powers,
        heaviside=[parse_polynomial(h, ring) for h in _list(args.heaviside)],
        exponent=parse_polynomial(args.exp, ring) if args.exp else None,
        factor=parse_polynomial(args.factor, ring) if args.factor else None,
        route=args.route, assume_omega=args.assume_omega, shift_vars=shifts, bounds=bounds)


def run_command(args, bounds: Bounds) -> Report:
    cmd = args.command
    rep = Report(cmd)
    t0 = time.perf_counter()
    ring = _ring(args)

    if cmd == "ann-fs":
        fs = _poly(args, ring)
        i = ann.ann_fs(fs, _names(args.snames) or None, bounds)
        rep.set_ideal(i)
    elif cmd == "ann-log":
        f = _poly(args, ring)[0]
        lam = _rational(args.lam) if args.lam is not None else None
        s_name = (_names(args.snames) or ["s"])[0]
        i = ann.ann_log_power(f, args.k, lam, s_name, bounds=bounds)
        rep.set_ideal(i)
    elif cmd == "ann-delta":
        f = _poly(args, ring)[0]
        if args.graph:
            i = ann.ann_delta_graph(f, args.t)
        else:
            i = ann.ann_delta_hypersurface(f, check=True, bounds=bounds)
        rep.set_ideal(i)
    elif cmd == "bfunction":
        f = _poly(args, ring)[0]
        rep.b_function = ann.bs_polynomial(f, bounds=bounds)
        rep.extra["roots"] = [str(r) for r in sorted(rep.b_function.roots)]
    elif cmd == "wbfunction":
        i = _ideal(args.gens, ring, bounds)
        rep.b_function = b_function_weight(i, _names(args.wrt), check=args.check)
        rep.k1 = rep.b_function.max_integral_root()
    elif cmd in ("integrate", "restrict"):
        i = _ideal(args.gens, ring, bounds)
        fn = integration_ideal if cmd == "integrate" else restriction_ideal
        res = fn(i, _names(args.wrt), check=args.check)
        rep.set_ideal(res.ideal)
        rep.b_function, rep.k1 = res.b_function, res.k1
        rep.stats.update(res.stats)
    elif cmd == "tensor":
        res = tensor_product_ideal(_ideal(args.gens, ring, bounds), _ideal(args.gens2, ring, bounds, "--gens2"),
                                   check=args.check)
        rep.set_ideal(res.ideal)
        rep.b_function, rep.k1 = res.b_function, res.k1
    elif cmd == "quotient":
        by = _ops(args.by, ring)
        if len(by) != 1:
            raise UsageError("--by takes exactly one operator")
        rep.set_ideal(quotient(_ideal(args.gens, ring, bounds), by[0]), holonomic=False)
    elif cmd == "intersect":
        rep.set_ideal(intersect(_ideal(args.gens, ring, bounds), _ideal(args.gens2, ring, bounds, "--gens2")),
                      holonomic=False)
    elif cmd == "dim":
        i = _ideal(args.gens, ring, bounds)
        d = i.dimension()
        rep.extra["dimension"] = d if d != float("-inf") else "-inf"
        c = i.char_dimension()
        rep.extra["char_dimension"] = c if c != float("-inf") else "-inf"
        rep.holonomic = i.is_holonomic()
    elif cmd == "definite-integral":
        res = definite_integral_ideal(_problem(args, ring, bounds))
        rep.set_ideal(res.ideal)
        rep.b_function, rep.k1 = res.b_function, res.k1
        rep.assumptions = res.assumptions
        rep.stats.update(res.stats)
    elif cmd == "difference-system":
        ds = difference_system_for_integral(_problem(args, ring, bounds))
        rep.text_generators = [str(q) for q in ds.operators]
        rep.b_function, rep.k1 = ds.integration.b_function, ds.integration.k1
        rep.holonomic = ds.integration.ideal.is_holonomic()
        rep.assumptions = ds.integration.assumptions
        rep.extra["integration_ideal"] = [format_element(g) for g in ds.integration.ideal.reduced().gens]
        rep.stats.update(ds.integration.stats)
    elif cmd == "check-omega":
        f = _poly(args, ring)[0]
        if args.lam is None:
            raise UsageError("--lam is required")
        rep.b_function = ann.bs_polynomial(f, bounds=bounds)
        rep.extra["admissible"] = ann.omega_check(f, _rational(args.lam), rep.b_function)
    elif cmd == "apply-series":
        op = _ops(args.op, ring)
        if len(op) != 1:
            raise UsageError("--op takes exactly one operator")
        coeffs = [Fraction(c) for c in _list(args.coeffs)]
        if not coeffs:
            raise UsageError("--coeffs is required")
        var = args.var or (ring.weyl[0] if ring.weyl else None)
        out = apply_to_series(op[0], Series(tuple(coeffs), len(coeffs)), var)
        rep.extra["order"] = out.order
        rep.extra["coefficients"] = [str(c) for c in out.coeffs]
        rep.extra["vanishes"] = out.is_zero()
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown command {cmd!r}")
    rep.stats = _stats(rep.stats, t0, not args.deterministic)
    return rep


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holonomic", description="Holonomic D-module computations.")
    p.add_argument("command", nargs="?", choices=COMMANDS)
    g = p.add_argument_group("declarations")
    g.add_argument("--vars", help="spatial variables, comma separated")
    g.add_argument("--dummies", help="further variables with derivations (e.g. shift variables)")
    g.add_argument("--params", help="central parameters")
    g = p.add_argument_group("inputs")
    g.add_argument("--gens", help="generators of an ideal, comma separated")
    g.add_argument("--gens2", help="generators of a second ideal")
    g.add_argument("--by", help="operator to divide by (quotient)")
    g.add_argument("--poly", help="polynomial(s), comma separated")
    g.add_argument("--snames", help="names for the parameters of ann-fs")
    g.add_argument("--lam", help="rational exponent")
    g.add_argument("--k", type=int, default=1, help="power of the logarithm (ann-log)")
    g.add_argument("--graph", action="store_true", help="ann-delta: annihilate delta(t - f) instead")
    g.add_argument("--t", default="t", help="name of the graph variable (ann-delta --graph)")
    g.add_argument("--wrt", help="integration or restriction variables")
    g.add_argument("--check", action="store_true", help="verify holonomicity of inputs first")
    g.add_argument("--op", help="operator for apply-series")
    g.add_argument("--var", help="series variable for apply-series")
    g.add_argument("--coeffs", help="series coefficients, comma separated rationals")
    g = p.add_argument_group("integrals")
    g.add_argument("--heaviside", help="polynomials f with Y(f) factors")
    g.add_argument("--power", action="append", help="factor poly@exponent (rational or parameter name)")
    g.add_argument("--exp", help="exponent h of a factor e^h")
    g.add_argument("--base", help="annihilator of the remaining integrand")
    g.add_argument("--factor", help="polynomial multiplier of the base")
    g.add_argument("--shift", action="append", help="dummy=parameter for shift variables of the base")
    g.add_argument("--route", choices=("shortcut", "tensor"), default="shortcut")
    g.add_argument("--assume-omega", action="store_true", help="assert that the exponents are admissible")
    g = p.add_argument_group("run control")
    g.add_argument("--json", action="store_true", help="emit JSON")
    g.add_argument("--deterministic", action="store_true",
                   help="omit wall-clock fields so that reruns are byte-identical")
    g.add_argument("--bound", action="append", help="resource bound key=value (overrides HOLONOMIC_OPTS)")
    g.add_argument("--problem", action="append", help="problem file(s) of key = value lines")
    g.add_argument("--jobs", type=int, default=1, help="problem files to run concurrently")
    return p


def read_problem(path: str) -> list[str]:
    """Turn ``key = value`` lines into command-line arguments."""
    argv: list[str] = []
    command = None
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("_", "-")
            if key == "command":
                command = value
                continue
            if value.lower() in ("true", "yes") and key in ("json", "check", "graph", "assume-omega", "deterministic"):
                argv.append("--" + key)
            else:
                argv += ["--" + key, value]
    if command is None:
        raise UsageError(f"{path}: no command given")
    return [command] + argv


ERROR_CODES = {UsageError: 2, ParseError: 2, ResourceLimitError: 3}


def _error(exc: Exception) -> tuple[int, dict]:
    code = 4
    for cls, c in ERROR_CODES.items():
        if isinstance(exc, cls):
            code = c
            break
    obj = {"schema_version": SCHEMA_VERSION,
           "error": {"type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, ResourceLimitError):
        obj["error"]["stats"] = exc.stats
    return code, obj


def parse_argv(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    """Parse ``argv``, letting option values start with a minus sign (``--exp -x``)."""
    takes_value = {o for a in parser._actions if a.option_strings and a.nargs is None
                   for o in a.option_strings}
    glued: list[str] = []
    it = iter(range(len(argv)))
    for i in it:
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in takes_value and nxt and nxt.startswith("-") and not nxt.startswith("--"):
            glued.append(f"{tok}={nxt}")
            next(it)
        else:
            glued.append(tok)
    return parser.parse_args(glued)


def _execute(argv: list[str], environ=None) -> tuple[int, str, bool]:
    parser = build_parser()
    args = parse_argv(parser, argv)
    as_json = args.json
    try:
        if args.command is None:
            raise UsageError("a subcommand is required")
        bounds = resolve_bounds(args.bound, environ)
        rep = run_command(args, bounds)
        out = json.dumps(rep.as_json(), sort_keys=True) if as_json else rep.as_text()
        return 0, out, as_json
    except KeyError as exc:
        # undeclared variable names surface as lookups in the variable table
        return _execute_error(UsageError(exc.args[0] if exc.args else str(exc)), as_json)
    except (UsageError, ParseError, ResourceLimitError, ValueError, ArithmeticError, TypeError) as exc:
        return _execute_error(exc, as_json)


def _execute_error(exc: Exception, as_json: bool) -> tuple[int, str, bool]:
    code, obj = _error(exc)
    if as_json:
        return code, json.dumps(obj, sort_keys=True), True
    return code, f"error ({obj['error']['type']}): {obj['error']['message']}", False


def _run_problem(path_and_flags):
    path, extra = path_and_flags
    try:
        argv = read_problem(path) + extra
    except (OSError, UsageError) as exc:
        code, obj = _error(exc if isinstance(exc, UsageError) else UsageError(str(exc)))
        return code, json.dumps(obj, sort_keys=True), True
    return _execute(argv)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parse_argv(parser, argv)
    if args.problem:
        extra = ["--json"] if args.json else []
        if args.deterministic:
            extra.append("--deterministic")
        for b in args.bound or []:
            extra += ["--bound", b]
        jobs = max(1, args.jobs)
        items = [(p, extra) for p in args.problem]
        if jobs > 1 and len(items) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_run_problem, items))
        else:
            results = [_run_problem(it) for it in items]
        worst = 0
        for path, (code, out, _) in zip(args.problem, results):
            if not args.json:
                print(f"== {path}")
            print(out)
            worst = max(worst, code)
        return worst
    code, out, as_json = _execute(argv)
    stream = sys.stdout if code == 0 or as_json else sys.stderr
    print(out, file=stream)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
