"""Exact zero-dimensional polynomial system solving, real root counting and
trace identities in monogenic orders."""

from .errors import (
    AlgebraError,
    ConsistencyError,
    DimensionError,
    DomainError,
    GenericityError,
    ParseError,
    ShapeError,
    VariableMismatchError,
)
from .groebner import GroebnerBasis, QuotientBasis, buchberger, is_zero_dimensional, normal_form, standard_monomials
from .hermite import (
    SignatureReport,
    TraceForm,
    count_real,
    count_sign_conditions,
    exact_signature,
    local_profile,
    trace_form,
)
from .numberfield import (
    PrimeFieldPoly,
    disc_mod4_check,
    factor_mod_p,
    legendre,
    scalar_counterexample,
    verify_parity,
    verify_trace_formula,
)
from .poly import GREVLEX, LEX, MonomialOrder, MultiPoly, UniPoly, discriminant, parse_poly, resultant
from .quotient import (
    Point,
    QuotientAlgebra,
    SolutionSet,
    char_poly_direct,
    char_poly_via_traces,
    det_of,
    multiplication_matrix,
    solve_numeric,
    stickelberger_local_check,
    trace_of,
)
from .uresultant import UPoly, u_resultant, verify_product_formula

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "ConsistencyError",
    "DimensionError",
    "DomainError",
    "GREVLEX",
    "GenericityError",
    "GroebnerBasis",
    "LEX",
    "MonomialOrder",
    "MultiPoly",
    "ParseError",
    "Point",
    "PrimeFieldPoly",
    "QuotientAlgebra",
    "QuotientBasis",
    "ShapeError",
    "SignatureReport",
    "SolutionSet",
    "TraceForm",
    "UPoly",
    "UniPoly",
    "VariableMismatchError",
    "buchberger",
    "char_poly_direct",
    "char_poly_via_traces",
    "count_real",
    "count_sign_conditions",
    "det_of",
    "disc_mod4_check",
    "discriminant",
    "exact_signature",
    "factor_mod_p",
    "is_zero_dimensional",
    "legendre",
    "local_profile",
    "multiplication_matrix",
    "normal_form",
    "parse_poly",
    "resultant",
    "scalar_counterexample",
    "solve_numeric",
    "standard_monomials",
    "stickelberger_local_check",
    "trace_form",
    "trace_of",
    "u_resultant",
    "verify_parity",
    "verify_product_formula",
    "verify_trace_formula",
]
