"""Hermite trace forms and exact real-solution counting.

Signatures are computed without floating point: the Gram matrix is symmetric,
so det(G - xI) is real-rooted and Descartes' rule of signs counts its positive
roots exactly.  Forms are built over Q; the signature of a rational symmetric
matrix is the same over Q and over R, so the counts describe real solutions.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import ConsistencyError, ShapeError
from .linalg import RationalMatrix
from .poly import MultiPoly
from .quotient import QuotientAlgebra, SolutionSet, char_poly_direct, solve_numeric


@dataclass(frozen=True)
class TraceForm:
    gram: RationalMatrix
    weight: MultiPoly

    @property
    def dimension(self) -> int:
        return len(self.gram)


@dataclass(frozen=True)
class SignatureReport:
    positives: int
    negatives: int
    zeros: int

    @property
    def signature(self) -> int:
        return self.positives - self.negatives

    @property
    def type(self) -> tuple[int, int]:
        return (self.positives, self.negatives)


@dataclass(frozen=True)
class LocalFactor:
    multiplicity: int
    residue_degree: int


@dataclass(frozen=True)
class LocalFactorProfile:
    r1: int
    r2: int
    factors: tuple[LocalFactor, ...]
    numeric_r1: int
    numeric_r2: int

    @property
    def consistent(self) -> bool:
        return (self.r1, self.r2) == (self.numeric_r1, self.numeric_r2)


def trace_form(A: QuotientAlgebra, h: MultiPoly | None = None) -> TraceForm:
    if h is None:
        h = MultiPoly.constant(1, A.variables)
    return TraceForm(A.trace_gram(h), h)


def sign_variations(coeffs) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature_of_matrix(gram: RationalMatrix) -> SignatureReport:
    if not linalg.is_symmetric(gram):
        raise ShapeError("Gram matrix is not symmetric")
    d = len(gram)
    if d == 0:
        return SignatureReport(0, 0, 0)
    cp = char_poly_direct(gram)
    zeros = next(k for k, c in enumerate(cp.coeffs) if c != 0)
    shifted = cp.coeffs[zeros:]
    positives = sign_variations(shifted)
    negatives = d - zeros - positives
    # Descartes on p(-x) must agree for a real-rooted polynomial
    mirrored = [c if k % 2 == 0 else -c for k, c in enumerate(shifted)]
    if sign_variations(mirrored) != negatives:
        raise ConsistencyError("characteristic polynomial of a symmetric matrix is not real-rooted")
    return SignatureReport(positives, negatives, zeros)


def exact_signature(T: TraceForm) -> SignatureReport:
    return signature_of_matrix(T.gram)


def count_real(A: QuotientAlgebra) -> int:
    return exact_signature(trace_form(A)).signature


def count_sign_conditions(A: QuotientAlgebra, h: MultiPoly) -> tuple[int, int, int]:
    """(#h>0, #h<0, #h=0) over the real solutions."""
    s1 = exact_signature(trace_form(A)).signature
    sh = exact_signature(trace_form(A, h)).signature
    sh2 = exact_signature(trace_form(A, h * h)).signature
    n_zero = s1 - sh2
    if (sh2 + sh) % 2 or sh2 < abs(sh) or n_zero < 0:
        raise ConsistencyError(f"inconsistent signatures {(s1, sh, sh2)}")
    return ((sh2 + sh) // 2, (sh2 - sh) // 2, n_zero)


def local_profile(A: QuotientAlgebra, sols: SolutionSet | None = None, seed: int = 0) -> LocalFactorProfile:
    t = exact_signature(trace_form(A))
    r2 = t.negatives
    r1 = t.positives - t.negatives
    if sols is None:
        sols = solve_numeric(A, seed=seed)
    factors = [LocalFactor(p.multiplicity, 1) for p in sols.points if p.is_real]
    # conjugate points share a multiplicity; one residue field C per pair
    complex_mults = sorted(p.multiplicity for p in sols.points if not p.is_real)
    factors.extend(LocalFactor(mu, 2) for mu in complex_mults[::2])
    total = sum(f.multiplicity * f.residue_degree for f in factors)
    if total != A.dim:
        raise ConsistencyError(f"local dimensions sum to {total}, expected {A.dim}")
    return LocalFactorProfile(r1, r2, tuple(factors), len(sols.real_points()), sols.conjugate_pairs())
