"""Buchberger's algorithm, normal forms and the staircase of a zero-dimensional ideal."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, DomainError, VariableMismatchError
from .poly import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    MultiPoly,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis, generators sorted by ascending leading monomial."""

    generators: tuple[MultiPoly, ...]
    order: MonomialOrder
    variables: tuple[str, ...]

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(g.lead_monomial(self.order) for g in self.generators)

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.generators)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class QuotientBasis:
    monomials: tuple[Monomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.monomials)


def _reduce(f: MultiPoly, divisors: Sequence[tuple[Monomial, Fraction, MultiPoly]],
            order: MonomialOrder) -> MultiPoly:
    key = order.key
    p = dict(f.terms)
    rem: dict[Monomial, Fraction] = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, lc, g in divisors:
            if mono_divides(lm, m):
                factor = c / lc
                shift = mono_div(m, lm)
                for gm, gc in g.terms.items():
                    t = mono_mul(gm, shift)
                    v = p.get(t, 0) - factor * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[m] = c
            del p[m]
    return MultiPoly(rem, f.variables)


def _divisors(polys: Sequence[MultiPoly], order: MonomialOrder):
    out = []
    for g in polys:
        lm = g.lead_monomial(order)
        out.append((lm, g.terms[lm], g))
    return out


def normal_form(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Fully reduced remainder of ``f`` on division by ``gb``."""
    if f.variables != gb.variables:
        raise VariableMismatchError(f"variables {f.variables} and {gb.variables} differ")
    return _reduce(f, _divisors(gb.generators, gb.order), gb.order)


def _spoly(f: MultiPoly, g: MultiPoly, order: MonomialOrder) -> MultiPoly:
    lf, lg = f.lead_monomial(order), g.lead_monomial(order)
    l = mono_lcm(lf, lg)
    return f.mul_term(mono_div(l, lf), 1 / f.terms[lf]) - g.mul_term(mono_div(l, lg), 1 / g.terms[lg])


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    gens = [g for g in gens]
    if not gens:
        raise DomainError("empty generator list")
    variables = gens[0].variables
    for g in gens:
        if g.variables != variables:
            raise VariableMismatchError(f"variables {g.variables} and {variables} differ")
    gens = [g.monic(order) for g in gens if not g.is_zero()]
    if not gens:
        raise DomainError("all generators are zero")
    one = MultiPoly.constant(1, variables)
    if any(g.is_constant() for g in gens):
        return GroebnerBasis((one,), order, variables)

    key = order.key
    basis: list[MultiPoly] = []
    lms: list[Monomial] = []
    pairs: set[tuple[int, int]] = set()

    def add(h: MultiPoly):
        lm = h.lead_monomial(order)
        k = len(basis)
        basis.append(h)
        lms.append(lm)
        pairs.update((i, k) for i in range(k))

    # inter-reduce the input first so the run does not depend on input order
    for g in sorted(gens, key=lambda p: key(p.lead_monomial(order))):
        h = _reduce(g, _divisors(basis, order), order) if basis else g
        if not h.is_zero():
            add(h.monic(order))

    while pairs:
        i, j = min(pairs, key=lambda ij: (key(mono_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        lcm_ij = mono_lcm(lms[i], lms[j])
        # first criterion: coprime leading monomials
        if lcm_ij == mono_mul(lms[i], lms[j]):
            continue
        # second (chain) criterion
        if any(
            k != i and k != j
            and mono_divides(lms[k], lcm_ij)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        h = _reduce(_spoly(basis[i], basis[j], order), _divisors(basis, order), order)
        if h.is_zero():
            continue
        if h.is_constant():
            return GroebnerBasis((one,), order, variables)
        add(h.monic(order))

    # minimize
    keep = []
    for i, lm in enumerate(lms):
        if any(
            mono_divides(lms[j], lm) and (lms[j] != lm or j < i)
            for j in range(len(lms)) if j != i
        ):
            continue
        keep.append(basis[i])
    # interreduce
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lm = g.lead_monomial(order)
        tail = MultiPoly({m: c for m, c in g.terms.items() if m != lm}, variables)
        tail = _reduce(tail, _divisors(others, order), order)
        reduced.append((MultiPoly.monomial(lm, variables, g.terms[lm]) + tail).monic(order))
    reduced.sort(key=lambda p: key(p.lead_monomial(order)))
    return GroebnerBasis(tuple(reduced), order, variables)


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    n = len(gb.variables)
    if gb.is_unit():
        return True
    pure = set()
    for lm in gb.leading_monomials:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            pure.add(support[0])
    return len(pure) == n


def standard_monomials(gb: GroebnerBasis) -> QuotientBasis:
    """Monomials below the staircase, ascending in the basis order."""
    if gb.is_unit():
        return QuotientBasis(())
    if not is_zero_dimensional(gb):
        raise DimensionError("ideal is not zero-dimensional")
    n = len(gb.variables)
    lms = gb.leading_monomials
    bounds = [0] * n
    for lm in lms:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            i = support[0]
            bounds[i] = lm[i] if not bounds[i] else min(bounds[i], lm[i])
    found: list[Monomial] = []

    def walk(prefix: list[int], i: int):
        if i == n:
            m = tuple(prefix)
            if not any(mono_divides(lm, m) for lm in lms):
                found.append(m)
            return
        for e in range(bounds[i]):
            prefix.append(e)
            partial = tuple(prefix) + (0,) * (n - i - 1)
            if any(mono_divides(lm, partial) for lm in lms):
                prefix.pop()
                break
            walk(prefix, i + 1)
            prefix.pop()

    walk([], 0)
    found.sort(key=gb.order.key)
    return QuotientBasis(tuple(found))
