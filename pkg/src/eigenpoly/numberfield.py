"""Trace and discriminant identities in the monogenic order Z[theta] = Z[x]/(f).

Modulo a prime p the order becomes F_p[x]/(f mod p).  Factoring f mod p as
prod g_i^e_i gives the local factors; the trace of multiplication by alpha on
the whole algebra equals sum e_i * (trace on the residue field F_p[x]/(g_i)).

Everything here is stated for Z[theta], not the maximal order.  The trace
identity is a fact about any finite F_p-algebra and holds at every prime.  The
parity identity is checked only for p not dividing disc(f), where Z[theta] and
the maximal order have the same splitting data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError
from .poly import UniPoly, discriminant
from .quotient import char_poly_direct, power_traces
from . import linalg

MAX_PRIME = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


def _require_prime(p: int):
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p >= MAX_PRIME:
        raise DomainError(f"prime {p} exceeds the supported bound 2^31")


class PrimeFieldPoly:
    """Polynomial over F_p, coefficients low to high in [0, p)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Iterable[int], p: int):
        cs = [int(c) % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)

    @classmethod
    def from_unipoly(cls, f: UniPoly, p: int) -> PrimeFieldPoly:
        out = []
        for c in f.coeffs:
            c = Fraction(c)
            if c.denominator % p == 0:
                raise DomainError(f"coefficient {c} is not p-integral for p={p}")
            out.append(c.numerator * pow(c.denominator, -1, p))
        return cls(out, p)

    def _new(self, coeffs) -> PrimeFieldPoly:
        return PrimeFieldPoly(coeffs, self.p)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        return isinstance(other, PrimeFieldPoly) and (self.p, self.coeffs) == (other.p, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new(self[k] + other[k] for k in range(n))

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new(self[k] - other[k] for k in range(n))

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return self._new(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return self._new(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        rem = list(self.coeffs)
        dg = len(other.coeffs) - 1
        inv = pow(other.coeffs[-1], -1, p)
        if len(rem) - 1 < dg:
            return self._new(()), self
        quot = [0] * (len(rem) - dg)
        for k in range(len(rem) - 1 - dg, -1, -1):
            c = rem[k + dg] * inv % p
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = (rem[k + j] - c * b) % p
        return self._new(quot), self._new(rem[:dg])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> PrimeFieldPoly:
        if not self.coeffs:
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return self * inv

    def derivative(self) -> PrimeFieldPoly:
        return self._new(k * c for k, c in enumerate(self.coeffs))._shift_down()

    def _shift_down(self) -> PrimeFieldPoly:
        return self._new(self.coeffs[1:])

    def powmod(self, e: int, modulus: PrimeFieldPoly) -> PrimeFieldPoly:
        result = self._new((1,))
        base = self % modulus
        while e:
            if e & 1:
                result = result * base % modulus
            base = base * base % modulus
            e >>= 1
        return result

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"PrimeFieldPoly({str(self)!r}, p={self.p})"


def gcd_mod(a: PrimeFieldPoly, b: PrimeFieldPoly) -> PrimeFieldPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _pth_root(f: PrimeFieldPoly) -> PrimeFieldPoly:
    p = f.p
    return f._new(f.coeffs[k] for k in range(0, len(f.coeffs), p))


def squarefree_mod_p(f: PrimeFieldPoly) -> list[tuple[PrimeFieldPoly, int]]:
    f = f.monic()
    if f.degree() < 1:
        return []
    df = f.derivative()
    if df.is_zero():
        return [(g, e * f.p) for g, e in squarefree_mod_p(_pth_root(f))]
    out = []
    c = gcd_mod(f, df)
    w = f // c
    i = 1
    while not w.is_one():
        y = gcd_mod(w, c)
        z = w // y
        if z.degree() > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree() > 0:
        out.extend((g, e * f.p) for g, e in squarefree_mod_p(_pth_root(c)))
    return out


def distinct_degree(f: PrimeFieldPoly) -> list[tuple[PrimeFieldPoly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    x = f._new((0, 1))
    out = []
    rest = f
    w = x
    d = 0
    while rest.degree() >= 2 * (d + 1):
        d += 1
        w = w.powmod(f.p, rest)
        g = gcd_mod(rest, w - x)
        if not g.is_one():
            out.append((g, d))
            rest = rest // g
            w = w % rest
    if rest.degree() > 0:
        out.append((rest.monic(), rest.degree()))
    return out


def equal_degree(f: PrimeFieldPoly, d: int, rng: random.Random) -> list[PrimeFieldPoly]:
    """Cantor-Zassenhaus split of f, a product of distinct irreducibles of degree d."""
    n = f.degree()
    if n == d:
        return [f.monic()]
    p = f.p
    while True:
        a = f._new(rng.randrange(p) for _ in range(n))
        if a.degree() < 1:
            continue
        if p == 2:
            t = a % f
            acc = t
            for _ in range(d - 1):
                t = t * t % f
                acc = acc + t
            b = acc
        else:
            b = a.powmod((p**d - 1) // 2, f) - f._new((1,))
        g = gcd_mod(f, b)
        if 0 < g.degree() < n:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def _int_coeffs(f: UniPoly) -> list[int]:
    if any(Fraction(c).denominator != 1 for c in f.coeffs):
        raise DomainError("polynomial must have integer coefficients")
    return [int(c) for c in f.coeffs]


@dataclass(frozen=True)
class ModPFactorization:
    p: int
    factors: tuple[tuple[PrimeFieldPoly, int], ...]

    @property
    def count(self) -> int:
        return len(self.factors)

    def product(self) -> PrimeFieldPoly:
        out = PrimeFieldPoly((1,), self.p)
        for g, e in self.factors:
            for _ in range(e):
                out = out * g
        return out

    def degree_sum(self) -> int:
        return sum(e * g.degree() for g, e in self.factors)


def factor_mod_p(f: UniPoly, p: int, seed: int = 0) -> ModPFactorization:
    """Complete factorization of monic integer f modulo p into monic irreducibles."""
    _require_prime(p)
    coeffs = _int_coeffs(f)
    if f.degree() < 1:
        raise DomainError("polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise DomainError("polynomial must be monic")
    rng = random.Random(seed)
    fp = PrimeFieldPoly(coeffs, p)
    factors = []
    for s, e in squarefree_mod_p(fp):
        for g, d in distinct_degree(s):
            factors.extend((h, e) for h in equal_degree(g, d, rng))
    factors.sort(key=lambda t: (t[0].degree(), t[0].coeffs, t[1]))
    return ModPFactorization(p, tuple(factors))


def trace_mod(g: PrimeFieldPoly, alpha: PrimeFieldPoly) -> int:
    """Trace of multiplication by alpha on F_p[x]/(g)."""
    if g.degree() < 1:
        raise DomainError("modulus polynomial must have degree >= 1")
    g = g.monic()
    n = g.degree()
    x = g._new((0, 1))
    col = alpha % g
    total = 0
    for j in range(n):
        total += col[j]
        col = col * x % g
    return total % g.p


@dataclass(frozen=True)
class TraceReport:
    tr_p: int
    per_factor: tuple[tuple[int, int], ...]
    combined: int
    passed: bool
    factorization: ModPFactorization


def verify_trace_formula(f: UniPoly, p: int, alpha: UniPoly, seed: int = 0) -> TraceReport:
    fac = factor_mod_p(f, p, seed)
    fp = PrimeFieldPoly(_int_coeffs(f), p)
    ap = PrimeFieldPoly(_int_coeffs(alpha), p)
    tr_p = trace_mod(fp, ap)
    per = tuple((trace_mod(g, ap % g), e) for g, e in fac.factors)
    combined = sum(t * e for t, e in per) % p
    return TraceReport(tr_p, per, combined, tr_p == combined, fac)


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise DomainError(f"Legendre symbol needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@dataclass(frozen=True)
class ParityReport:
    discriminant: int
    legendre_value: int | None
    parity: int | None
    prime_count: int | None
    passed: bool
    skipped: bool


def verify_parity(f: UniPoly, p: int, seed: int = 0) -> ParityReport:
    """(D/p) = (-1)^(n - m) with m the number of distinct prime factors of p."""
    _require_prime(p)
    _int_coeffs(f)
    D = discriminant(f)
    if D == 0:
        raise DomainError("discriminant is zero")
    D = int(D)
    if p == 2 or D % p == 0:
        return ParityReport(D, None, None, None, True, True)
    fac = factor_mod_p(f, p, seed)
    m = fac.count
    parity = (-1) ** (f.degree() - m)
    value = legendre(D, p)
    return ParityReport(D, value, parity, m, value == parity, False)


@dataclass(frozen=True)
class DiscReport:
    discriminant: int
    residue: int
    passed: bool


def disc_mod4_check(f: UniPoly) -> DiscReport:
    _int_coeffs(f)
    if f.degree() < 1 or f.lc() != 1:
        raise DomainError("polynomial must be monic of degree >= 1")
    D = discriminant(f)
    if D == 0:
        raise DomainError("discriminant is zero")
    D = int(D)
    return DiscReport(D, D % 4, D % 4 in (0, 1))


def char_poly_mod_p(m: linalg.RationalMatrix, p: int) -> PrimeFieldPoly:
    """det(M - xI) reduced mod p, for an integer matrix M."""
    return PrimeFieldPoly.from_unipoly(char_poly_direct(m), p)


@dataclass(frozen=True)
class ScalarCounterexample:
    p: int
    lam: int
    traces_scalar: tuple[int, ...]
    traces_zero: tuple[int, ...]
    char_scalar: PrimeFieldPoly
    char_zero: PrimeFieldPoly

    @property
    def traces_equal(self) -> bool:
        return self.traces_scalar == self.traces_zero

    @property
    def char_polys_differ(self) -> bool:
        return self.char_scalar != self.char_zero


def scalar_counterexample(p: int, lam: int = 1, count: int | None = None) -> ScalarCounterexample:
    """lam*I_p and 0 have equal power traces mod p but different characteristic polynomials."""
    _require_prime(p)
    count = p + 1 if count is None else count
    scalar = linalg.scale(linalg.identity(p), lam)
    zero = linalg.zeros(p, p)
    ts = tuple(int(t) % p for t in power_traces(scalar, count))
    tz = tuple(int(t) % p for t in power_traces(zero, count))
    return ScalarCounterexample(p, lam, ts, tz, char_poly_mod_p(scalar, p), char_poly_mod_p(zero, p))
