"""The finite-dimensional algebra A = Q[x]/I and its multiplication operators.

Exact layer: multiplication matrices, traces, determinants and characteristic
polynomials (computed two independent ways).  Numeric layer: an
Auzinger-Stetter style eigenvector solver whose multiplicities come from the
exact squarefree decomposition of a characteristic polynomial.

Characteristic polynomials follow the ``det(M - x*I)`` convention throughout,
so the leading coefficient is ``(-1)**d``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .errors import ConsistencyError, DimensionError, DomainError, GenericityError, VariableMismatchError
from .groebner import (
    GroebnerBasis,
    QuotientBasis,
    buchberger,
    is_zero_dimensional,
    normal_form,
    standard_monomials,
)
from .linalg import RationalMatrix
from .poly import GREVLEX, Monomial, MonomialOrder, MultiPoly, UniPoly, mono_mul, squarefree_decompose

REALITY_TOL = 1e-8
RETRY_BUDGET = 5
FORM_RANGE = 99


def char_poly_direct(m: RationalMatrix) -> UniPoly:
    """``det(M - x I)`` by exact evaluation at x = 0..d and Newton interpolation."""
    d = linalg.require_square(m)
    if d == 0:
        return UniPoly([1])
    xs = list(range(d + 1))
    ys = [linalg.det(linalg.shift(m, t)) for t in xs]
    return UniPoly.interpolate(xs, ys)


def char_poly_via_traces(power_traces: Sequence, d: int) -> UniPoly:
    """``det(M - x I)`` from p_k = Tr(M^k), k = 1..d, via Newton's identities.

    Characteristic zero only: step k divides by k.
    """
    p = [Fraction(v) for v in power_traces]
    if len(p) < d:
        raise DomainError(f"need {d} power traces, got {len(p)}")
    e = [Fraction(1)]
    for k in range(1, d + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            term = e[k - i] * p[i - 1]
            acc += term if i % 2 else -term
        e.append(acc / k)
    # det(xI - M) = sum_k (-1)^k e_k x^(d-k)
    monic = [Fraction(0)] * (d + 1)
    for k in range(d + 1):
        monic[d - k] = e[k] if k % 2 == 0 else -e[k]
    sign = -1 if d % 2 else 1
    return UniPoly([sign * c for c in monic])


def power_traces(m: RationalMatrix, count: int) -> list[Fraction]:
    out = []
    power = m
    for k in range(count):
        if k:
            power = linalg.matmul(power, m)
        out.append(linalg.trace(power))
    return out


class QuotientAlgebra:
    """A = Q[x1..xn]/<gb> with its standard-monomial basis.

    The matrices of multiplication by each variable are built on construction;
    coordinates of other monomials are derived from them and memoized.
    """

    def __init__(self, gb: GroebnerBasis, generators: Sequence[MultiPoly] | None = None):
        if not gb.is_unit() and not is_zero_dimensional(gb):
            raise DimensionError("ideal is not zero-dimensional")
        self.gb = gb
        self.variables = gb.variables
        self.order = gb.order
        self.generators = tuple(generators) if generators is not None else gb.generators
        self.basis: QuotientBasis = standard_monomials(gb)
        self.dim = self.basis.dimension
        self.index = {m: i for i, m in enumerate(self.basis.monomials)}
        n = len(self.variables)
        mats = []
        for i in range(n):
            xi = tuple(int(j == i) for j in range(n))
            cols = [self._nf_coords(MultiPoly.monomial(mono_mul(xi, b), self.variables))
                    for b in self.basis.monomials]
            mats.append(linalg.transpose(tuple(cols)) if cols else ())
        self.var_matrices: tuple[RationalMatrix, ...] = tuple(mats)
        self._mono_cache: dict[Monomial, tuple[Fraction, ...]] = {}
        self._trace_cache: dict[Monomial, Fraction] = {}

    @classmethod
    def from_generators(cls, polys: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> QuotientAlgebra:
        return cls(buchberger(polys, order), polys)

    def _nf_coords(self, f: MultiPoly) -> tuple[Fraction, ...]:
        r = normal_form(f, self.gb)
        vec = [Fraction(0)] * self.dim
        for m, c in r.terms.items():
            vec[self.index[m]] = c
        return tuple(vec)

    def monomial_coords(self, m: Monomial) -> tuple[Fraction, ...]:
        """Coordinates of the class of x^m in the standard basis."""
        hit = self._mono_cache.get(m)
        if hit is not None:
            return hit
        if m in self.index:
            vec = [Fraction(0)] * self.dim
            vec[self.index[m]] = Fraction(1)
            out = tuple(vec)
        else:
            i = next(k for k, e in enumerate(m) if e)
            lower = tuple(e - (k == i) for k, e in enumerate(m))
            out = linalg.matvec(self.var_matrices[i], self.monomial_coords(lower))
        self._mono_cache[m] = out
        return out

    def coords(self, f: MultiPoly) -> tuple[Fraction, ...]:
        self._check(f)
        acc = [Fraction(0)] * self.dim
        for m, c in f.terms.items():
            for k, v in enumerate(self.monomial_coords(m)):
                if v:
                    acc[k] += c * v
        return tuple(acc)

    def element(self, coords: Sequence) -> MultiPoly:
        return MultiPoly({m: c for m, c in zip(self.basis.monomials, coords)}, self.variables)

    def _check(self, f: MultiPoly):
        if f.variables != self.variables:
            raise VariableMismatchError(f"variables {f.variables} and {self.variables} differ")

    def multiplication_matrix(self, f: MultiPoly) -> RationalMatrix:
        self._check(f)
        cols = []
        for b in self.basis.monomials:
            acc = [Fraction(0)] * self.dim
            for m, c in f.terms.items():
                for k, v in enumerate(self.monomial_coords(mono_mul(m, b))):
                    if v:
                        acc[k] += c * v
            cols.append(acc)
        return linalg.transpose(linalg.as_matrix(cols)) if cols else ()

    def monomial_trace(self, m: Monomial) -> Fraction:
        """Tr(m_{x^m}) = sum over basis b_j of the b_j-coordinate of x^m * b_j."""
        hit = self._trace_cache.get(m)
        if hit is None:
            hit = sum((self.monomial_coords(mono_mul(m, b))[j]
                       for j, b in enumerate(self.basis.monomials)), Fraction(0))
            self._trace_cache[m] = hit
        return hit

    def trace_of(self, f: MultiPoly) -> Fraction:
        self._check(f)
        return sum((c * self.monomial_trace(m) for m, c in f.terms.items()), Fraction(0))

    def trace_gram(self, h: MultiPoly) -> RationalMatrix:
        """Gram matrix [Tr(m_{b_i b_j h})] in the standard basis."""
        self._check(h)
        mons = self.basis.monomials
        rows = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(i, self.dim):
                bij = mono_mul(mons[i], mons[j])
                v = sum((c * self.monomial_trace(mono_mul(m, bij)) for m, c in h.terms.items()),
                        Fraction(0))
                rows[i][j] = rows[j][i] = v
        return linalg.as_matrix(rows)

    def char_poly_of(self, f: MultiPoly) -> UniPoly:
        return char_poly_direct(self.multiplication_matrix(f))

    def det_of(self, f: MultiPoly) -> Fraction:
        m = self.multiplication_matrix(f)
        via_bareiss = linalg.det(m)
        via_charpoly = char_poly_direct(m)(Fraction(0))
        if via_bareiss != via_charpoly:
            raise ConsistencyError(f"det mismatch: {via_bareiss} vs {via_charpoly}")
        return via_bareiss

    def variable(self, name: str) -> MultiPoly:
        return MultiPoly.variable(name, self.variables)


def multiplication_matrix(A: QuotientAlgebra, f: MultiPoly) -> RationalMatrix:
    return A.multiplication_matrix(f)


def trace_of(A: QuotientAlgebra, f: MultiPoly) -> Fraction:
    return A.trace_of(f)


def det_of(A: QuotientAlgebra, f: MultiPoly) -> Fraction:
    return A.det_of(f)


# ---------------------------------------------------------------------------
# numeric solving


@dataclass(frozen=True)
class Point:
    coordinates: tuple[complex, ...]
    multiplicity: int
    is_real: bool


@dataclass(frozen=True)
class SolutionSet:
    points: tuple[Point, ...]
    residual: float
    linear_form: tuple[int, ...] = ()
    attempts: int = 0

    @property
    def total_multiplicity(self) -> int:
        return sum(p.multiplicity for p in self.points)

    def real_points(self) -> list[Point]:
        return [p for p in self.points if p.is_real]

    def conjugate_pairs(self) -> int:
        return sum(1 for p in self.points if not p.is_real) // 2


def _is_real_value(z: complex) -> bool:
    return abs(z.imag) <= REALITY_TOL * (1 + abs(z.real))


def _factor_roots(factor: UniPoly) -> list[complex]:
    cs = [float(c) for c in reversed(factor.coeffs)]
    roots = np.roots(cs) if len(cs) > 1 else np.array([])
    dcs = np.polyder(np.array(cs)) if len(cs) > 1 else np.array([0.0])
    polished = []
    for z in roots:
        z = complex(z)
        for _ in range(3):
            dz = np.polyval(dcs, z)
            if dz == 0:
                break
            step = np.polyval(cs, z) / dz
            z -= step
            if abs(step) <= 1e-16 * (1 + abs(z)):
                break
        polished.append(complex(z))
    return polished


def _evaluation_vector(mg: np.ndarray, mxs: list[np.ndarray], lam: complex, mult: int) -> np.ndarray:
    """Common left eigenvector of the multiplication matrices at eigenvalue ``lam`` of M_g."""
    d = mg.shape[0]
    b = mg.T - lam * np.eye(d)
    _, s, vh = np.linalg.svd(b)
    thr = 1e-7 * max(1.0, s[0])
    k = int(np.sum(s <= thr))
    k = min(max(k, 1), mult)
    w = vh[-k:].conj().T
    if k == 1:
        return w[:, 0]
    blocks = []
    for mx in mxs:
        r = w.conj().T @ mx.T @ w
        blocks.append(r - (np.trace(r) / k) * np.eye(k))
    _, _, vh2 = np.linalg.svd(np.vstack(blocks))
    return w @ vh2[-1].conj()


def _refine(coords: tuple[complex, ...], system, jacobian, steps: int = 3) -> tuple[complex, ...]:
    """Gauss-Newton polish of a simple solution; keeps the input if it does not improve."""
    x = np.array(coords, dtype=complex)

    def resid(z):
        return np.array([complex(f.evaluate(tuple(z))) for f in system])

    r = resid(x)
    best = np.abs(r).max()
    for _ in range(steps):
        if best == 0:
            break
        jac = np.array([[complex(df.evaluate(tuple(x))) for df in row] for row in jacobian])
        dx = np.linalg.lstsq(jac, -r, rcond=None)[0]
        cand = x + dx
        rc = resid(cand)
        if np.abs(rc).max() >= best:
            break
        x, r, best = cand, rc, np.abs(rc).max()
    return tuple(complex(z) for z in x)


def solve_numeric(A: QuotientAlgebra, tol: float = 1e-9, seed: int = 0,
                  retries: int = RETRY_BUDGET) -> SolutionSet:
    """Numeric solutions with exact multiplicities.

    A random linear form g is drawn; the distinct roots of the squarefree
    factors of det(M_g - xI) are the values g(a) and their exponents are the
    multiplicities.  Coordinates are read off the left eigenvectors of M_g.
    ``tol`` bounds the mismatch allowed when matching numeric eigenvalues of
    M_g to those exact roots.
    """
    if A.dim == 0:
        return SolutionSet((), 0.0)
    n = len(A.variables)
    rng = random.Random(seed)
    distinct = linalg.rank(A.trace_gram(MultiPoly.constant(1, A.variables)))
    one_coords = np.array([float(c) for c in A.monomial_coords((0,) * n)])
    var_coords = [np.array([float(c) for c in A.coords(A.variable(v))]) for v in A.variables]
    mxs = [linalg.to_float(m) for m in A.var_matrices]
    jacobian = [[f.diff(i) for i in range(n)] for f in A.generators]

    for attempt in range(1, retries + 1):
        c = [rng.randint(-FORM_RANGE, FORM_RANGE) for _ in range(n)]
        if not any(c):
            continue
        g = MultiPoly({tuple(int(j == i) for j in range(n)): ci for i, ci in enumerate(c)}, A.variables)
        mg_exact = A.multiplication_matrix(g)
        factors = squarefree_decompose(char_poly_direct(mg_exact))
        if sum(f.degree() for f, _ in factors) != distinct:
            continue
        roots: list[tuple[complex, int]] = []
        for f, mult in factors:
            roots.extend((z, mult) for z in _factor_roots(f))
        mg = linalg.to_float(mg_exact)
        eig = np.linalg.eigvals(mg.T)
        if not _clusters_match(eig, roots, tol):
            continue

        points: list[Point] = []
        reals = [(z.real, mu) for z, mu in roots if _is_real_value(z)]
        upper = [(z, mu) for z, mu in roots if not _is_real_value(z) and z.imag > 0]
        lower = [z for z, _ in roots if not _is_real_value(z) and z.imag < 0]
        if len(upper) != len(lower):
            continue
        for lam, mu in reals:
            v = _evaluation_vector(mg, mxs, complex(lam), mu)
            scale = v @ one_coords
            coords = tuple(complex((v @ vc / scale).real, 0.0) for vc in var_coords)
            if mu == 1:
                coords = tuple(complex(z.real, 0.0) for z in _refine(coords, A.generators, jacobian))
            points.append(Point(coords, mu, True))
        for lam, mu in upper:
            v = _evaluation_vector(mg, mxs, lam, mu)
            scale = v @ one_coords
            coords = tuple(complex(v @ vc / scale) for vc in var_coords)
            if mu == 1:
                coords = _refine(coords, A.generators, jacobian)
            points.append(Point(coords, mu, False))
            points.append(Point(tuple(z.conjugate() for z in coords), mu, False))
        if sum(p.multiplicity for p in points) != A.dim:
            raise ConsistencyError("multiplicities do not sum to dim A")
        points.sort(key=lambda p: tuple((z.real, z.imag) for z in p.coordinates))
        residual = max(
            (abs(complex(f.evaluate(p.coordinates))) for p in points for f in A.generators),
            default=0.0,
        )
        return SolutionSet(tuple(points), float(residual), tuple(c), attempt)
    raise GenericityError(f"no separating linear form found in {retries} attempts")


def _clusters_match(eig: np.ndarray, roots: list[tuple[complex, int]], tol: float) -> bool:
    """Assign numeric eigenvalues to the nearest exact root; sizes must equal multiplicities."""
    if not roots:
        return len(eig) == 0
    centers = np.array([z for z, _ in roots])
    counts = [0] * len(roots)
    for z in eig:
        counts[int(np.argmin(np.abs(centers - z)))] += 1
    if counts != [mu for _, mu in roots]:
        return False
    if len(roots) > 1:
        gaps = np.abs(centers[:, None] - centers[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() <= tol * max(1.0, float(np.abs(centers).max())):
            return False
    return True


def rational_points(sols: SolutionSet, A: QuotientAlgebra, max_den: int = 10**6):
    """Exact rational solutions if every point rationalizes and verifies; else None."""
    out = []
    for p in sols.points:
        if not p.is_real:
            return None
        q = tuple(Fraction(z.real).limit_denominator(max_den) for z in p.coordinates)
        if any(f.evaluate(q) != 0 for f in A.generators):
            return None
        out.append((q, p.multiplicity))
    return out


@dataclass(frozen=True)
class LocalCheckReport:
    char_poly: UniPoly
    samples: tuple[float, ...]
    max_deviation: float
    passed: bool


DEFAULT_SAMPLES = (-2.5, -1.0, -0.25, 0.5, 1.75, 3.0)


def stickelberger_local_check(A: QuotientAlgebra, f: MultiPoly, sols: SolutionSet,
                              tol: float = 1e-6, samples: Sequence[float] = DEFAULT_SAMPLES
                              ) -> LocalCheckReport:
    """Compare det(m_f - xI) with prod (f(a) - x)^mu(a) at sample points."""
    cp = A.char_poly_of(f)
    values = [(complex(f.evaluate(p.coordinates)), p.multiplicity) for p in sols.points]
    worst = 0.0
    for x in samples:
        exact = float(cp(Fraction(x)))
        prod = complex(1.0)
        for v, mu in values:
            prod *= (v - x) ** mu
        scale = sum(abs(float(c)) * max(1.0, abs(x)) ** k for k, c in enumerate(cp.coeffs))
        prod_scale = 1.0
        for v, mu in values:
            prod_scale *= (abs(v) + abs(x)) ** mu
        worst = max(worst, abs(exact - prod) / max(scale, prod_scale, 1.0))
    return LocalCheckReport(cp, tuple(samples), worst, worst <= tol)
