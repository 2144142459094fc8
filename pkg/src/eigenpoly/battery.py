"""Invariant battery run by ``verify-all``: every identity checked on one system."""

from __future__ import annotations

import random
from fractions import Fraction

from . import linalg
from .hermite import count_sign_conditions, exact_signature, trace_form
from .poly import MultiPoly, UniPoly
from .quotient import (
    QuotientAlgebra,
    SolutionSet,
    char_poly_direct,
    char_poly_via_traces,
    rational_points,
    solve_numeric,
    stickelberger_local_check,
)
from .uresultant import u_resultant, verify_product_formula

RESIDUAL_TOL = 1e-6
TRACE_RTOL = 1e-8
SIGN_MARGIN = 1e-6


def probe_polys(A: QuotientAlgebra, seed: int) -> list[MultiPoly]:
    """Each variable, x_1*x_n + 1, and one random affine form."""
    names = A.variables
    xs = [MultiPoly.variable(v, names) for v in names]
    rng = random.Random(seed)
    form = MultiPoly.constant(rng.randint(-5, 5), names)
    for x in xs:
        form = form + rng.randint(-9, 9) * x
    return xs + [xs[0] * xs[-1] + 1, form]


def _exact_product(pts, f: MultiPoly) -> UniPoly:
    out = UniPoly([1])
    for a, mu in pts:
        out = out * UniPoly([f.evaluate(a), -1]) ** mu
    return out


def _sign(v: float) -> int | None:
    if abs(v) <= SIGN_MARGIN:
        return 0
    return 1 if v > 0 else -1


def check_char_poly(A, sols, exact_pts, polys):
    cases = []
    for f in polys:
        if exact_pts is not None:
            ok = A.char_poly_of(f) == _exact_product(exact_pts, f)
            cases.append({"f": f.format(), "exact": True, "passed": ok})
        else:
            rep = stickelberger_local_check(A, f, sols)
            cases.append({"f": f.format(), "exact": False, "max_deviation": rep.max_deviation,
                          "passed": rep.passed})
    return {"passed": all(c["passed"] for c in cases), "cases": cases}


def check_traces(A, sols, exact_pts, polys):
    cases = []
    for f in polys:
        tr = A.trace_of(f)
        if exact_pts is not None:
            expect = sum((mu * f.evaluate(a) for a, mu in exact_pts), Fraction(0))
            cases.append({"f": f.format(), "trace": tr, "exact": True, "passed": tr == expect})
        else:
            vals = [p.multiplicity * complex(f.evaluate(p.coordinates)) for p in sols.points]
            total = sum(vals, 0j)
            scale = max(1.0, sum(abs(v) for v in vals))
            dev = abs(float(tr) - total) / scale
            cases.append({"f": f.format(), "trace": tr, "exact": False, "deviation": dev,
                          "passed": dev <= TRACE_RTOL})
    return {"passed": all(c["passed"] for c in cases), "cases": cases}


def check_newton(A, polys):
    d = A.dim
    ok = True
    for f in polys:
        m = A.multiplication_matrix(f)
        traces = [A.trace_of(f**k) for k in range(1, d + 1)]
        ok &= char_poly_via_traces(traces, d) == char_poly_direct(m)
    return {"passed": ok, "count": len(polys)}


def check_homomorphism(A, polys):
    f, g = polys[0], polys[-1]
    mf, mg = A.multiplication_matrix(f), A.multiplication_matrix(g)
    product = A.multiplication_matrix(f * g) == linalg.matmul(mf, mg)
    commute = linalg.matmul(mf, mg) == linalg.matmul(mg, mf)
    total = A.multiplication_matrix(f + g) == linalg.add(mf, mg)
    return {"passed": product and commute and total}


def check_determinant(A, sols, exact_pts, polys):
    cases = []
    for f in polys:
        det = A.det_of(f)
        if exact_pts is not None:
            expect = Fraction(1)
            for a, mu in exact_pts:
                expect *= f.evaluate(a) ** mu
            ok = det == expect
        else:
            prod, scale = 1 + 0j, 1.0
            for p in sols.points:
                v = complex(f.evaluate(p.coordinates))
                prod *= v**p.multiplicity
                scale *= max(1.0, abs(v)) ** p.multiplicity
            ok = abs(float(det) - prod) <= TRACE_RTOL * scale
        cases.append({"f": f.format(), "det": det, "passed": ok})
    return {"passed": all(c["passed"] for c in cases), "cases": cases}


def check_type(A, sols):
    t = exact_signature(trace_form(A))
    r1 = len(sols.real_points())
    r2 = sols.conjugate_pairs()
    return {"type": [t.positives, t.negatives], "r1": r1, "r2": r2,
            "passed": (t.positives, t.negatives) == (r1 + r2, r2)}


def check_sign_conditions(A, sols, exact_pts, polys):
    cases = []
    for h in polys:
        counted = count_sign_conditions(A, h)
        if exact_pts is not None:
            signs = [(h.evaluate(a) > 0) - (h.evaluate(a) < 0) for a, _ in exact_pts]
        else:
            signs = [_sign(complex(h.evaluate(p.coordinates)).real) for p in sols.real_points()]
        brute = (signs.count(1), signs.count(-1), signs.count(0))
        cases.append({"h": h.format(), "counted": list(counted), "evaluated": list(brute),
                      "passed": counted == brute})
    return {"passed": all(c["passed"] for c in cases), "cases": cases}


def check_uresultant(A, sols, samples: int, seed: int):
    R = u_resultant(A)
    rep = verify_product_formula(A, R, sols, samples=samples, seed=seed)
    homogeneous = R.is_homogeneous(A.dim)
    return {"passed": rep.passed and homogeneous, "homogeneous": homogeneous, "exact": rep.exact,
            "samples": len(rep.samples), "worst_deviation": rep.worst_deviation}


def run_battery(A: QuotientAlgebra, seed: int = 0, tol: float = 1e-9, samples: int = 10) -> dict:
    sols: SolutionSet = solve_numeric(A, tol=tol, seed=seed)
    exact_pts = rational_points(sols, A) if sols.points else []
    polys = probe_polys(A, seed) if A.dim else []
    checks = {
        "solve": {"passed": sols.residual <= RESIDUAL_TOL and sols.total_multiplicity == A.dim,
                  "residual": sols.residual, "points": len(sols.points)},
        "char_poly_product": check_char_poly(A, sols, exact_pts, polys),
        "trace_formula": check_traces(A, sols, exact_pts, polys),
        "newton_identities": check_newton(A, polys),
        "homomorphism": check_homomorphism(A, polys) if polys else {"passed": True},
        "determinant": check_determinant(A, sols, exact_pts, polys),
        "trace_form_type": check_type(A, sols),
        "sign_conditions": check_sign_conditions(A, sols, exact_pts, polys),
        "u_resultant": check_uresultant(A, sols, samples, seed),
    }
    return {"dimension": A.dim, "rational": exact_pts is not None, "checks": checks,
            "passed": all(c["passed"] for c in checks.values())}
