import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus_data import rational_entries
from eigenpoly.errors import DimensionError, DomainError, VariableMismatchError
from eigenpoly.groebner import buchberger, is_zero_dimensional, normal_form, standard_monomials
from eigenpoly.poly import GREVLEX, LEX, MultiPoly, mono_divides, mono_lcm, parse_poly

XY = ("x", "y")


def P(text, variables=XY):
    return parse_poly(text, variables)


def s_poly(f, g, order):
    lf, lg = f.lead_monomial(order), g.lead_monomial(order)
    lcm = mono_lcm(lf, lg)
    a = tuple(l - e for l, e in zip(lcm, lf))
    b = tuple(l - e for l, e in zip(lcm, lg))
    return f.mul_term(a, 1 / f.lead_coeff(order)) - g.mul_term(b, 1 / g.lead_coeff(order))


def assert_reduced_groebner(gb, ideal_gens):
    order = gb.order
    for f, g in itertools.combinations(gb.generators, 2):
        assert normal_form(s_poly(f, g, order), gb).is_zero()
    for f in ideal_gens:
        assert normal_form(f, gb).is_zero()
    lms = gb.leading_monomials
    for i, g in enumerate(gb.generators):
        assert g.lead_coeff(order) == 1
        for m in g.terms:
            assert not any(mono_divides(lm, m) for j, lm in enumerate(lms) if j != i)


def test_line_and_parabola_lex():
    gb = buchberger([P("x - y"), P("y^2 - 1")], LEX)
    assert set(gb.generators) == {P("x - y"), P("y^2 - 1")}
    assert standard_monomials(gb).monomials == ((0, 0), (0, 1))


def test_gens_already_basis_grevlex():
    gb = buchberger([P("x^2"), P("x*y"), P("y^2")])
    assert set(gb.leading_monomials) == {(2, 0), (1, 1), (0, 2)}
    assert standard_monomials(gb).monomials == ((0, 0), (0, 1), (1, 0))


def test_lex_basis_is_triangular():
    gb = buchberger([P("x^2 + y^2 - 5"), P("x*y - 2")], LEX)
    univariate = [g for g in gb.generators if all(m[0] == 0 for m in g.terms)]
    assert univariate == [P("y^4 - 5*y^2 + 4")]


def test_katsura_dimension():
    v = ("x", "y", "z")
    gens = [P("x + 2*y + 2*z - 1", v), P("x^2 + 2*y^2 + 2*z^2 - x", v), P("2*x*y + 2*y*z - y", v)]
    for order in (LEX, GREVLEX):
        gb = buchberger(gens, order)
        assert standard_monomials(gb).dimension == 4
        assert_reduced_groebner(gb, gens)


def test_unit_ideal():
    gb = buchberger([P("x*y - 1"), P("x")])
    assert gb.is_unit()
    assert gb.generators == (MultiPoly.constant(1, XY),)
    assert standard_monomials(gb).dimension == 0


def test_positive_dimensional():
    gb = buchberger([P("x*y")])
    assert not is_zero_dimensional(gb)
    with pytest.raises(DimensionError):
        standard_monomials(gb)


def test_degenerate_input():
    with pytest.raises(DomainError):
        buchberger([])
    with pytest.raises(DomainError):
        buchberger([MultiPoly.zero(XY)])


def test_normal_form_rejects_foreign_ring():
    gb = buchberger([P("x - 1"), P("y")])
    with pytest.raises(VariableMismatchError):
        normal_form(parse_poly("x", ("x",)), gb)


@pytest.mark.parametrize("entry", rational_entries(), ids=lambda e: e.name)
def test_dimension_matches_known_multiplicities(entry):
    total = sum(mu for _, mu in entry.points)
    for order in (LEX, GREVLEX):
        gb = buchberger(entry.system.polynomials, order)
        assert standard_monomials(gb).dimension == total


@st.composite
def zero_dim_systems(draw):
    # x^a + lower, y^b + lower guarantees a finite quotient; one extra random generator
    terms = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=3)
    a, b = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    f = MultiPoly({(a, 0): 1, **{m: c for m, c in draw(terms).items() if m[0] < a and m != (a, 0)}}, XY)
    g = MultiPoly({(0, b): 1, **{m: c for m, c in draw(terms).items() if m[1] < b and m[0] < a}}, XY)
    h = MultiPoly(draw(terms), XY)
    return [f, g, h]


probe = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-5, 5), max_size=4)


@settings(max_examples=40, deadline=None)
@given(zero_dim_systems(), st.sampled_from([LEX, GREVLEX]), probe, probe, st.integers(0, 10**6))
def test_groebner_invariants(gens, order, fa, fb, seed):
    gb = buchberger(gens, order)
    assert_reduced_groebner(gb, gens)
    f, g = MultiPoly(fa, XY), MultiPoly(fb, XY)
    nf = normal_form(f, gb)
    assert normal_form(nf, gb) == nf
    assert normal_form(f + 3 * g, gb) == nf + 3 * normal_form(g, gb)
    assert normal_form(f * g, gb) == normal_form(nf * normal_form(g, gb), gb)
    lms = gb.leading_monomials
    assert not any(mono_divides(lm, m) for m in nf.terms for lm in lms)
    shuffled = list(gens)
    random.Random(seed).shuffle(shuffled)
    assert buchberger(shuffled + [f * gens[0]], order) == gb
