"""Exact polynomial arithmetic over the rationals.

Monomials are plain tuples of exponents.  ``MultiPoly`` holds a sparse map from
monomials to nonzero ``Fraction`` coefficients together with the names of the
ambient variables; ``UniPoly`` is the dense univariate specialization used for
characteristic and minimal polynomials.

Text grammar accepted by :func:`parse_poly`::

    3/2*x^2*y - y + 1
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import DomainError, ParseError, VariableMismatchError

Monomial = tuple[int, ...]

MAX_EXPONENT = 2**31 - 1
NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _check_exponent(e: int) -> int:
    if e < 0 or e > MAX_EXPONENT:
        raise DomainError(f"exponent {e} outside [0, {MAX_EXPONENT}]")
    return e


@dataclass(frozen=True)
class MonomialOrder:
    """``lex`` or ``grevlex`` with an optional variable priority permutation.

    ``perm[0]`` is the index of the largest variable.  ``None`` means the
    natural order x1 > x2 > ... > xn.
    """

    kind: str = "grevlex"
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, m: Monomial):
        perm = self.perm if self.perm is not None else range(len(m))
        if self.kind == "lex":
            return tuple(m[i] for i in perm)
        return (sum(m), tuple(-m[i] for i in reversed(tuple(perm))))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def monomial_compare(a: Monomial, b: Monomial, order: MonomialOrder = GREVLEX) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if len(a) != len(b):
        raise VariableMismatchError(f"monomials of length {len(a)} and {len(b)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


class MultiPoly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object], variables: Sequence[str]):
        variables = tuple(variables)
        n = len(variables)
        clean: dict[Monomial, Fraction] = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != n:
                raise VariableMismatchError(f"monomial {m} does not match {n} variables")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self.variables = variables
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, variables: Sequence[str]) -> MultiPoly:
        return cls({}, variables)

    @classmethod
    def constant(cls, c, variables: Sequence[str]) -> MultiPoly:
        return cls({(0,) * len(variables): c}, variables)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> MultiPoly:
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatchError(f"unknown variable {name!r}")
        i = variables.index(name)
        return cls({tuple(int(j == i) for j in range(len(variables))): 1}, variables)

    @classmethod
    def monomial(cls, m: Monomial, variables: Sequence[str], c=1) -> MultiPoly:
        return cls({m: c}, variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending order."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def lead_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise DomainError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def lead_coeff(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.terms[self.lead_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> MultiPoly:
        if not self.terms:
            return self
        c = self.lead_coeff(order)
        return MultiPoly({m: v / c for m, v in self.terms.items()}, self.variables)

    # arithmetic
    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise VariableMismatchError(
                    f"variables {self.variables} and {other.variables} differ"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()}, self.variables)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out, self.variables)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        _check_exponent(k)
        result = MultiPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, m: Monomial, c) -> MultiPoly:
        c = Fraction(c)
        return MultiPoly({mono_mul(m, k): c * v for k, v in self.terms.items()}, self.variables)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.variables)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        """Evaluate at a point whose entries may be Fractions, floats or complex."""
        if len(point) != self.nvars:
            raise VariableMismatchError(f"point has {len(point)} coordinates, need {self.nvars}")
        total = 0
        for m, c in self.terms.items():
            term = c
            for x, e in zip(point, m):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def diff(self, i: int) -> MultiPoly:
        """Partial derivative with respect to variable index ``i``."""
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                out[tuple(e - (k == i) for k, e in enumerate(m))] = c * m[i]
        return MultiPoly(out, self.variables)

    def to_unipoly(self) -> UniPoly:
        used = {i for m in self.terms for i, e in enumerate(m) if e}
        if len(used) > 1:
            raise VariableMismatchError("polynomial involves more than one variable")
        i = used.pop() if used else 0
        coeffs: dict[int, Fraction] = {}
        for m, c in self.terms.items():
            coeffs[m[i] if m else 0] = c
        deg = max(coeffs, default=-1)
        return UniPoly([coeffs.get(k, 0) for k in range(deg + 1)])

    def format(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, m) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly({self.format()!r}, variables={self.variables})"


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str, line, col0: int):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            kind, val, start = "int", m.group(1), m.start(1)
        elif m.group(2) is not None:
            kind, val, start = "name", m.group(2), m.start(2)
        elif m.group(3) is not None:
            val, start = m.group(3), m.start(3)
            if val not in "+-*/^":
                raise ParseError(f"unexpected character {val!r}", line, col0 + start)
            kind = val
        else:
            break
        tokens.append((kind, val, col0 + start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, variables, line, col0):
        self.tokens = _tokenize(text, line, col0)
        self.i = 0
        self.variables = variables
        self.line = line
        self.end_col = col0 + len(text.rstrip())

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.end_col)

    def take(self, kind, what):
        tok = self.peek()
        if tok[0] != kind:
            found = "end of input" if tok[0] is None else repr(tok[1])
            raise ParseError(f"expected {what}, found {found}", self.line, tok[2])
        self.i += 1
        return tok

    def poly(self) -> dict[Monomial, Fraction]:
        terms: dict[Monomial, Fraction] = {}
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take(self.peek()[0], "sign")[0] == "-" else 1
        while True:
            m, c = self.term()
            terms[m] = terms.get(m, 0) + sign * c
            kind = self.peek()[0]
            if kind is None:
                return terms
            if kind not in ("+", "-"):
                tok = self.peek()
                raise ParseError(f"expected '+' or '-', found {tok[1]!r}", self.line, tok[2])
            sign = -1 if self.take(kind, "sign")[0] == "-" else 1

    def term(self):
        kind = self.peek()[0]
        if kind == "int":
            num = int(self.take("int", "integer")[1])
            den = 1
            if self.peek()[0] == "/":
                self.i += 1
                tok = self.take("int", "denominator")
                den = int(tok[1])
                if den == 0:
                    raise ParseError("zero denominator", self.line, tok[2])
            c = Fraction(num, den)
            if self.peek()[0] == "*":
                self.i += 1
                return self.mono(), c
            return (0,) * len(self.variables), c
        if kind == "name":
            return self.mono(), Fraction(1)
        tok = self.peek()
        found = "end of input" if tok[0] is None else repr(tok[1])
        raise ParseError(f"expected a term, found {found}", self.line, tok[2])

    def mono(self) -> Monomial:
        exps = [0] * len(self.variables)
        while True:
            _, name, col = self.take("name", "variable name")
            if name not in self.variables:
                raise ParseError(f"unknown variable {name}", self.line, col)
            e = 1
            if self.peek()[0] == "^":
                self.i += 1
                _, digits, ecol = self.take("int", "exponent")
                e = int(digits)
                if e > MAX_EXPONENT:
                    raise ParseError(f"exponent {e} exceeds {MAX_EXPONENT}", self.line, ecol)
            exps[self.variables.index(name)] += e
            if self.peek()[0] == "*" and self.i + 1 < len(self.tokens) and self.tokens[self.i + 1][0] == "name":
                self.i += 1
                continue
            return tuple(exps)


def parse_poly(text: str, variables: Sequence[str] | None = None, *, line: int | None = None,
               col0: int = 1) -> MultiPoly:
    """Parse a polynomial; when ``variables`` is None they are inferred in order of appearance."""
    if variables is None:
        seen: list[str] = []
        for name in NAME_RE.findall(text):
            if name not in seen:
                seen.append(name)
        variables = seen or ["x"]
    variables = tuple(variables)
    if not text.strip():
        raise ParseError("empty polynomial", line, col0)
    p = _Parser(text, variables, line, col0)
    return MultiPoly(p.poly(), variables)


def parse_unipoly(text: str) -> UniPoly:
    return parse_poly(text).to_unipoly()


# ---------------------------------------------------------------------------
# univariate


class UniPoly:
    """Dense univariate polynomial; ``coeffs[k]`` is the coefficient of x^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> UniPoly:
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> UniPoly:
        out = cls([1])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    @classmethod
    def interpolate(cls, xs: Sequence, ys: Sequence) -> UniPoly:
        """Exact Newton interpolation through the points (xs[i], ys[i])."""
        xs = [Fraction(v) for v in xs]
        table = [Fraction(v) for v in ys]
        n = len(xs)
        newton = [table[0]] if n else []
        for level in range(1, n):
            table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
            newton.append(table[0])
        result = cls()
        for k in range(n - 1, -1, -1):
            result = result * cls([-xs[k], 1]) + cls([newton[k]])
        return result

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return UniPoly([c / lead for c in self.coeffs])

    def derivative(self) -> UniPoly:
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_multipoly(self, variable: str = "x") -> MultiPoly:
        return MultiPoly({(k,): c for k, c in enumerate(self.coeffs)}, (variable,))

    def format(self, variable: str = "x") -> str:
        return self.to_multipoly(variable).format()

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"UniPoly({self.format()!r})"


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decompose(a: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: `a = lc * prod(f_i ** m_i)` with monic squarefree coprime f_i."""
    if a.is_zero():
        raise DomainError("squarefree decomposition of the zero polynomial")
    f = a.monic()
    if f.degree() == 0:
        return []
    df = f.derivative()
    g = uni_gcd(f, df)
    b = f // g
    c = df // g
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree() > 0:
        ai = uni_gcd(b, d)
        b = b // ai
        c = d // ai
        d = c - b.derivative()
        if ai.degree() > 0:
            out.append((ai, i))
        i += 1
    return out


def sylvester_matrix(a: UniPoly, b: UniPoly) -> linalg.RationalMatrix:
    m, n = a.degree(), b.degree()
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(a.coeffs)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(b.coeffs)):
            row[i + k] = c
        rows.append(row)
    return linalg.as_matrix(rows)


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    if a.is_zero() or b.is_zero():
        raise DomainError("resultant with the zero polynomial")
    return linalg.det(sylvester_matrix(a, b))


def discriminant(f: UniPoly) -> Fraction:
    n = f.degree()
    if n < 1:
        raise DomainError("discriminant of a constant polynomial")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc()
