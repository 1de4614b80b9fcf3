"""Independent tangent cone computation for the fixture used by the acceptance tests.

The tangent cone ideal of I at the origin is obtained from the degeneration
x -> t*x: with J = (f(t*x) : f in I) saturated by t, the cone is J restricted to
t = 0. Saturation is an elimination: (J + (1 - s*t)) intersected with k[t, x].
All Groebner bases here are sympy's, so this shares no code with the crate.

Usage: python3 scripts/tangent_cone_oracle.py > crates/core/tests/fixtures/monomial_curve_tangent_cone.json
"""

import itertools
import json

import sympy as sp

x, y, z, t, s = sp.symbols("x y z t s")
VARS = (x, y, z)
GENS = ["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"]


def tangent_cone(gens):
    scaled = [sp.expand(g.subs({v: t * v for v in VARS}, simultaneous=True)) for g in gens]
    elim = sp.groebner(scaled + [1 - s * t], s, t, *VARS, order="lex")
    saturated = [g for g in elim.exprs if not g.has(s)]
    at_zero = [sp.expand(g.subs(t, 0)) for g in saturated]
    at_zero = [g for g in at_zero if g != 0]
    return sp.groebner(at_zero, *VARS, order="grevlex")


def hilbert_function(gb, up_to):
    leads = [sp.Poly(g, *VARS).monoms(order="grevlex")[0] for g in gb.exprs]
    values = []
    for n in range(up_to + 1):
        count = 0
        for e in itertools.product(range(n + 1), repeat=3):
            if sum(e) != n:
                continue
            if not any(all(e[i] >= m[i] for i in range(3)) for m in leads):
                count += 1
        values.append(count)
    return values


def projective_points(gb):
    """Distinct complex points of the projective zero set, chart by chart."""
    found = set()
    for fixed in range(3):
        subs = {VARS[i]: 0 for i in range(fixed)}
        subs[VARS[fixed]] = 1
        free = VARS[fixed + 1:]
        eqs = [sp.expand(g.subs(subs)) for g in gb.exprs]
        eqs = [e for e in eqs if e != 0]
        if any(e.is_number for e in eqs):
            continue
        sols = sp.solve(eqs, free, dict=True) if free else [{}]
        for sol in sols:
            pt = tuple(sp.nsimplify(sp.sympify(subs.get(v, sol.get(v, v)))) for v in VARS)
            found.add(pt)
    return sorted(found, key=str)


def main():
    gens = [sp.sympify(g.replace("^", "**")) for g in GENS]
    gb = tangent_cone(gens)
    hf = hilbert_function(gb, 8)
    points = projective_points(gb)
    out = {
        "vars": [str(v) for v in VARS],
        "ideal": GENS,
        "tangent_cone_groebner_grevlex": [str(g).replace("**", "^") for g in gb.exprs],
        "hilbert_function": hf,
        "multiplicity": hf[-1],
        "projective_points": [":".join(str(c) for c in p) for p in points],
        "sympy_version": sp.__version__,
    }
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
