"""The U-resultant det(U0*I + U1*M_x1 + ... + Un*M_xn) and its factorization check."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from . import linalg
from .poly import MultiPoly
from .quotient import QuotientAlgebra, SolutionSet, char_poly_direct, rational_points


class UPoly:
    """Polynomial in U0..Un; keys are exponent tuples of length n+1."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict, nvars: int):
        self.nvars = nvars
        self.terms = {tuple(m): Fraction(c) for m, c in terms.items() if c}

    def evaluate(self, u: Sequence):
        total = 0
        for m, c in self.terms.items():
            term = c
            for x, e in zip(u, m):
                if e:
                    term = term * x**e
            total = total + term
        return total

    __call__ = evaluate

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self, d: int) -> bool:
        return self.degrees() <= {d}

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def format(self) -> str:
        names = [f"U{k}" for k in range(self.nvars)]
        return MultiPoly(self.terms, names).format()

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"UPoly({self.format()!r})"


def _falling(s: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= s - i
    return out


def _expand_falling(m: int) -> list[int]:
    """Coefficients (low to high) of s(s-1)...(s-m+1)."""
    coeffs = [1]
    for i in range(m):
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= i * c
        coeffs = nxt
    return coeffs


def simplex_interpolate(degree: int, k: int, values: Callable[[tuple[int, ...]], Fraction]) -> dict:
    """Polynomial of total degree <= ``degree`` in k variables from its values on the
    lattice simplex {t in N^k : sum(t) <= degree}.

    The last variable s is expanded in the falling-factorial basis
    P = sum_m [s]_m * q_m(t), deg q_m <= degree - m, and each q_m is recovered
    recursively from the slice s = m.
    """
    if k == 0:
        c = Fraction(values(()))
        return {(): c} if c else {}
    qs: list[dict] = []
    for m in range(degree + 1):
        def slice_values(t, m=m):
            acc = Fraction(values(t + (m,)))
            for j, q in enumerate(qs):
                acc -= _falling(m, j) * _eval_dict(q, t)
            return acc / factorial(m)

        qs.append(simplex_interpolate(degree - m, k - 1, slice_values))
    out: dict = {}
    for m, q in enumerate(qs):
        for power, coef in enumerate(_expand_falling(m)):
            if coef:
                for mono, c in q.items():
                    key = mono + (power,)
                    out[key] = out.get(key, 0) + coef * c
    return {m: c for m, c in out.items() if c}


def _eval_dict(q: dict, t: tuple[int, ...]) -> Fraction:
    total = Fraction(0)
    for m, c in q.items():
        term = c
        for x, e in zip(t, m):
            term *= x**e
        total += term
    return total


def u_resultant(A: QuotientAlgebra) -> UPoly:
    """Exact det of U0*I + sum U_k M_{x_k} as a homogeneous polynomial of degree dim A."""
    d = A.dim
    n = len(A.variables)
    if d == 0:
        return UPoly({(0,) * (n + 1): 1}, n + 1)
    mats = A.var_matrices
    cache: dict[tuple[int, ...], list[Fraction]] = {}

    def coefficients(t: tuple[int, ...]) -> list[Fraction]:
        # c_j(1, t) for j = 0..d: coefficient of U0^(d-j) in det(U0 I + L)
        hit = cache.get(t)
        if hit is None:
            u = (1,) + t
            L = linalg.zeros(d, d)
            for uk, mk in zip(u, mats):
                if uk:
                    L = linalg.add(L, linalg.scale(mk, uk))
            p = char_poly_direct(L)
            hit = [(-1) ** (d - j) * p[d - j] for j in range(d + 1)]
            cache[t] = hit
        return hit

    terms: dict = {}
    for j in range(d + 1):
        part = simplex_interpolate(j, n - 1, lambda t, j=j: coefficients(t)[j])
        for beta, c in part.items():
            mono = (d - j, j - sum(beta)) + beta
            terms[mono] = terms.get(mono, 0) + c
    return UPoly(terms, n + 1)


@dataclass(frozen=True)
class ProductReport:
    samples: tuple[tuple[int, ...], ...]
    worst_deviation: float
    exact: bool
    passed: bool


def verify_product_formula(A: QuotientAlgebra, R: UPoly, sols: SolutionSet, samples: int = 10,
                           seed: int = 0, tol: float = 1e-6) -> ProductReport:
    """Compare R(u) with prod over solutions of (u0 + sum u_k a_k)^mu(a)."""
    n = len(A.variables)
    rng = random.Random(seed)
    exact_pts = rational_points(sols, A) if sols.points else []
    pts = [tuple(rng.randint(-9, 9) for _ in range(n + 1)) for _ in range(samples)]
    worst = 0.0
    ok = True
    for u in pts:
        value = R.evaluate(u)
        if exact_pts is not None:
            prod = Fraction(1)
            for a, mu in exact_pts:
                prod *= (u[0] + sum(uk * ak for uk, ak in zip(u[1:], a))) ** mu
            if prod != value:
                ok = False
            worst = max(worst, abs(float(value - prod)) / max(1.0, abs(float(value))))
        else:
            prod = complex(1.0)
            for p in sols.points:
                prod *= (u[0] + sum(uk * ak for uk, ak in zip(u[1:], p.coordinates))) ** p.multiplicity
            dev = abs(float(value) - prod) / max(1.0, abs(float(value)))
            worst = max(worst, dev)
            if dev > tol:
                ok = False
    return ProductReport(tuple(pts), worst, exact_pts is not None, ok)


def specialize(R: UPoly, values: Sequence) -> Fraction:
    return R.evaluate(values)
