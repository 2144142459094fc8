import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenpoly.errors import DomainError
from eigenpoly.numberfield import (
    PrimeFieldPoly,
    disc_mod4_check,
    factor_mod_p,
    is_prime,
    legendre,
    scalar_counterexample,
    trace_mod,
    verify_parity,
    verify_trace_formula,
)
from eigenpoly.poly import UniPoly, parse_unipoly
from eigenpoly.quotient import QuotientAlgebra

SMALL_PRIMES = [2, 3, 5, 7]


def F(coeffs, p):
    return PrimeFieldPoly(coeffs, p)


def monic_polys(max_degree=6, bound=20):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.lists(st.integers(-bound, bound), min_size=n, max_size=n).map(lambda c: UniPoly(c + [1])))


def brute_irreducible(g: PrimeFieldPoly) -> bool:
    p, n = g.p, g.degree()
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if (g % F(list(tail) + [1], p)).is_zero():
                return False
    return True


def test_is_prime_against_sieve():
    sieve = [True] * 2000
    sieve[0] = sieve[1] = False
    for i in range(2, 2000):
        if sieve[i]:
            for j in range(i * i, 2000, i):
                sieve[j] = False
    assert [is_prime(n) for n in range(2000)] == sieve


def test_gaussian_integer_anchors():
    f = parse_unipoly("x^2 + 1")
    assert [str(g) for g, _ in factor_mod_p(f, 5).factors] == ["x + 2", "x + 3"]
    assert factor_mod_p(f, 3).count == 1
    ramified = factor_mod_p(f, 2)
    assert [(str(g), e) for g, e in ramified.factors] == [("x + 1", 2)]


def test_field_arithmetic_basics():
    a, b = F([1, 2, 3], 5), F([4, 0, 1], 5)
    q, r = divmod(a * b + F([1], 5), b)
    assert q == a and r == F([1], 5)
    assert F([0, 0, 0, 1], 3).derivative().is_zero()
    assert F([2, 3], 7).monic() == F([3, 1], 7)
    with pytest.raises(ZeroDivisionError):
        divmod(a, F([], 5))


@settings(max_examples=120, deadline=None)
@given(monic_polys(5, 9), st.sampled_from(SMALL_PRIMES), st.integers(0, 99))
def test_factorization_is_complete(f, p, seed):
    fac = factor_mod_p(f, p, seed)
    assert fac.product() == PrimeFieldPoly.from_unipoly(f, p)
    assert fac.degree_sum() == f.degree()
    for g, e in fac.factors:
        assert g.lc() == 1 and e >= 1
        assert brute_irreducible(g)
    assert len({g for g, _ in fac.factors}) == fac.count
    roots = [r for r in range(p) if f(r) % p == 0]
    assert len(roots) == sum(1 for g, _ in fac.factors if g.degree() == 1)


@settings(max_examples=60, deadline=None)
@given(monic_polys(5, 9), st.sampled_from(SMALL_PRIMES + [11, 101]), st.lists(st.integers(-9, 9), max_size=6))
def test_trace_mod_p_matches_rational_trace(f, p, alpha):
    # Tr over Q of multiplication by alpha in Q[x]/(f) is an integer; reduce it mod p
    A = QuotientAlgebra.from_generators([f.to_multipoly("x")])
    a = UniPoly(alpha)
    exact = A.trace_of(a.to_multipoly("x"))
    assert exact.denominator == 1
    assert trace_mod(PrimeFieldPoly.from_unipoly(f, p), PrimeFieldPoly.from_unipoly(a, p)) == exact % p


def test_trace_formula_ramified_anchor():
    rep = verify_trace_formula(parse_unipoly("x^2 + 1"), 2, parse_unipoly("x + 1"))
    assert rep.passed
    assert rep.per_factor == ((0, 2),)
    assert rep.tr_p == 0


@settings(max_examples=60, deadline=None)
@given(monic_polys(6, 20), st.sampled_from([2, 3, 5, 7, 13, 9973]), st.lists(st.integers(-20, 20), max_size=7))
def test_trace_formula_holds(f, p, alpha):
    assert verify_trace_formula(f, p, UniPoly(alpha)).passed


@given(st.integers(-500, 500), st.sampled_from([3, 5, 7, 11, 13, 101]))
def test_legendre_against_squares(a, p):
    squares = {x * x % p for x in range(1, p)}
    expect = 0 if a % p == 0 else (1 if a % p in squares else -1)
    assert legendre(a, p) == expect


def test_legendre_domain():
    with pytest.raises(DomainError):
        legendre(3, 2)
    with pytest.raises(DomainError):
        legendre(3, 9)


def test_parity_anchors():
    f = parse_unipoly("x^2 + 1")
    five = verify_parity(f, 5)
    assert (five.legendre_value, five.prime_count, five.passed) == (1, 2, True)
    three = verify_parity(f, 3)
    assert (three.legendre_value, three.prime_count, three.passed) == (-1, 1, True)
    assert verify_parity(f, 2).skipped
    assert verify_parity(parse_unipoly("x^3 - x - 1"), 23).skipped


def test_disc_anchors():
    assert disc_mod4_check(parse_unipoly("x^2 + 1")).discriminant == -4
    rep = disc_mod4_check(parse_unipoly("x^3 - x - 1"))
    assert (rep.discriminant, rep.residue, rep.passed) == (-23, 1, True)


@pytest.mark.parametrize("text", ["2*x^2 + 1", "x^2 + 1/2", "x^2", "3"])
def test_disc_domain_errors(text):
    with pytest.raises(DomainError):
        disc_mod4_check(parse_unipoly(text))


@pytest.mark.parametrize("p", [1, 4, 9, 2**31 + 11])
def test_rejects_non_primes_and_huge_primes(p):
    with pytest.raises(DomainError):
        factor_mod_p(parse_unipoly("x^2 + 1"), p)


def test_rejects_non_monic():
    with pytest.raises(DomainError):
        factor_mod_p(parse_unipoly("2*x + 1"), 5)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_scalar_counterexample(p):
    ce = scalar_counterexample(p)
    assert ce.traces_equal
    assert ce.char_polys_differ
    assert all(t == 0 for t in ce.traces_scalar)
