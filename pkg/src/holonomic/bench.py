"""Timing harness: difference equations in ``nu`` for integrals of ``J_nu(x)``
over simplices, disks and balls.

Run ``python -m holonomic.bench --out bench.json``.  Each case records the
time to build the integrand ideal, the time to integrate it, and the total.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time

from .parse import parse_polynomial
from .pipelines import IntegralProblem, base_from_difference, bessel_operators, difference_system_for_integral
from .weyl import VarTable

CASES = {
    "simplex-2d": (["x", "y"], ["y", "1-x-y"]),
    "disk": (["x", "y"], ["y", "1-x^2-y^2"]),
    "quartic-disk": (["x", "y"], ["y", "1-x^4-y^4"]),
    "simplex-3d": (["x", "y", "z"], ["y", "z", "1-x-y-z"]),
    "ball": (["x", "y", "z"], ["y", "z", "1-x^2-y^2-z^2"]),
}


def bessel_problem(spatial, heaviside) -> IntegralProblem:
    """``∫ Y(x) J_nu(x) prod Y(f) d(spatial)`` with ``t1`` acting as ``E_nu``."""
    r = VarTable.make(spatial, ["t1"])
    base = base_from_difference(bessel_operators("x", "nu"), r, {"t1": "nu"})
    return IntegralProblem(r, list(spatial), base=base,
                           heaviside=[parse_polynomial(h, r) for h in heaviside],
                           shift_vars={"t1": "nu"})


def run_case(name: str) -> dict:
    spatial, heaviside = CASES[name]
    t0 = time.perf_counter()
    ds = difference_system_for_integral(bessel_problem(spatial, heaviside))
    total = time.perf_counter() - t0
    st = ds.integration.stats
    return {
        "case": name,
        "heaviside": heaviside,
        "integrand_s": round(st.get("integrand_ms", 0) / 1000, 3),
        "integration_s": round(st.get("integrate_ms", 0) / 1000, 3),
        "total_s": round(total, 3),
        "b_function": ds.integration.b_function.factored(),
        "operators": len(ds.operators),
        "max_shift": max(max(q.shift_degrees()) for q in ds.operators) if ds.operators else None,
    }


def main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="holonomic-bench", description=__doc__.splitlines()[0])
    p.add_argument("--out", default="bench.json", help="where to write the timings")
    p.add_argument("cases", nargs="*", help=f"subset of {', '.join(CASES)} (default: all)")
    args = p.parse_args(argv)
    names = args.cases or list(CASES)
    unknown = [n for n in names if n not in CASES]
    if unknown:
        p.error(f"unknown case(s): {', '.join(unknown)}")
    results = []
    for n in names:
        r = run_case(n)
        results.append(r)
        print(f"{n:14s} integrand {r['integrand_s']:9.2f}s  integration {r['integration_s']:9.2f}s"
              f"  total {r['total_s']:9.2f}s", flush=True)
    doc = {"python": sys.version.split()[0], "machine": platform.machine(),
           "processor": platform.processor(), "cases": results,
           "total_s": round(sum(r["total_s"] for r in results), 3)}
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
