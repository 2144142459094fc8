"""Command-line interface: ``eigenpoly <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 mathematical domain error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import battery
from .errors import AlgebraError, ConsistencyError, ParseError
from .groebner import buchberger, is_zero_dimensional, standard_monomials
from .hermite import count_sign_conditions, exact_signature, trace_form
from .numberfield import disc_mod4_check, verify_parity, verify_trace_formula
from .poly import GREVLEX, LEX, NAME_RE, MultiPoly, UniPoly, parse_poly
from .quotient import QuotientAlgebra, char_poly_via_traces, rational_points, solve_numeric
from .uresultant import u_resultant, verify_product_formula

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
ORDERS = {"grevlex": GREVLEX, "lex": LEX}
_VARS_RE = re.compile(r"\s*vars\s*:")


@dataclass(frozen=True)
class SystemFile:
    variables: tuple[str, ...]
    polynomials: tuple[MultiPoly, ...]
    source: str | None = None

    def format(self) -> str:
        lines = ["vars: " + ", ".join(self.variables)]
        lines.extend(p.format() for p in self.polynomials)
        return "\n".join(lines) + "\n"


def parse_system(text: str, source: str | None = None) -> SystemFile:
    """Parse the system-file format: a ``vars:`` line, then one polynomial per line."""
    variables: tuple[str, ...] | None = None
    polys: list[MultiPoly] = []
    lines = text.split("\n")
    for lineno, raw in enumerate(lines, start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        hash_at = line.find("#")
        if hash_at >= 0:
            line = line[:hash_at]
        if not line.strip():
            continue
        if variables is None:
            variables = _parse_vars(line, lineno)
            continue
        polys.append(parse_poly(line, variables, line=lineno, col0=1))
    if variables is None:
        raise ParseError("missing 'vars:' declaration", 1, 1)
    if not polys:
        raise ParseError("empty system: no polynomials", len(lines), 1)
    return SystemFile(variables, tuple(polys), source)


def _parse_vars(line: str, lineno: int) -> tuple[str, ...]:
    m = _VARS_RE.match(line)
    if m is None:
        raise ParseError("expected 'vars:' declaration", lineno, 1)
    names: list[str] = []
    pos = m.end()
    for chunk in line[pos:].split(","):
        name = chunk.strip()
        col = pos + len(chunk) - len(chunk.lstrip()) + 1
        if not NAME_RE.fullmatch(name):
            raise ParseError(f"invalid variable name {name!r}", lineno, col)
        if name in names:
            raise ParseError(f"duplicate variable {name}", lineno, col)
        names.append(name)
        pos += len(chunk) + 1
    return tuple(names)


def load_system(path: str) -> SystemFile:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not valid UTF-8 (byte {exc.start})") from exc
    return parse_system(text, path)


# ---------------------------------------------------------------------------
# JSON and text rendering


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (MultiPoly, UniPoly)):
        return obj.format()
    if hasattr(obj, "item"):  # numpy scalar
        return to_jsonable(obj.item())
    return str(obj)


def _mono_str(m, variables) -> str:
    return MultiPoly.monomial(m, variables).format()


def _uni_coeffs(p: UniPoly) -> list[str]:
    return [str(c) for c in p.coeffs]


class Reporter:
    def __init__(self, args, out):
        self.args = args
        self.out = out
        self.started = time.perf_counter()

    def emit(self, command: str, inputs: dict, results: dict, text: list[str], passed: bool | None = None):
        if self.args.json:
            report = {"command": command, "inputs": inputs, "seed": self.args.seed, "results": results}
            if passed is not None:
                report["passed"] = passed
            if self.args.timing:
                report["timing"] = {"seconds": time.perf_counter() - self.started}
            self.out.write(json.dumps(to_jsonable(report), indent=2) + "\n")
        else:
            for line in text:
                self.out.write(line + "\n")
            if self.args.timing:
                self.out.write(f"time: {time.perf_counter() - self.started:.3f} s\n")


def _inputs(args, **extra) -> dict:
    base = {"order": args.order, "tol": args.tol}
    if getattr(args, "file", None) is not None:
        base["file"] = args.file
    base.update(extra)
    return base


def _algebra(args) -> tuple[SystemFile, QuotientAlgebra]:
    system = load_system(args.file)
    return system, QuotientAlgebra.from_generators(system.polynomials, ORDERS[args.order])


def _poly_arg(text: str, variables) -> MultiPoly:
    return parse_poly(text, variables)


# ---------------------------------------------------------------------------
# subcommands


def cmd_gb(args, rep: Reporter) -> int:
    system = load_system(args.file)
    order = ORDERS[args.order]
    gb = buchberger(system.polynomials, order)
    zero_dim = gb.is_unit() or is_zero_dimensional(gb)
    basis = standard_monomials(gb).monomials if zero_dim else None
    results = {
        "generators": [g.format(order) for g in gb.generators],
        "leading_monomials": [_mono_str(m, gb.variables) for m in gb.leading_monomials],
        "zero_dimensional": zero_dim,
        "standard_monomials": None if basis is None else [_mono_str(m, gb.variables) for m in basis],
        "dimension": None if basis is None else len(basis),
    }
    text = [f"Groebner basis ({args.order}, {_plural(len(gb.generators), 'generator')}):"]
    text += ["  " + g for g in results["generators"]]
    if basis is None:
        text.append("ideal is not zero-dimensional")
    else:
        text.append(f"dim A = {len(basis)}; standard monomials: " + ", ".join(results["standard_monomials"]))
    rep.emit("gb", _inputs(args), results, text)
    return EXIT_OK


def _point_json(p) -> dict:
    return {"real": [z.real for z in p.coordinates], "imag": [z.imag for z in p.coordinates],
            "multiplicity": p.multiplicity, "is_real": p.is_real}


def _fmt_complex(z: complex, real: bool) -> str:
    if real:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def cmd_solve(args, rep: Reporter) -> int:
    system, A = _algebra(args)
    sols = solve_numeric(A, tol=args.tol, seed=args.seed)
    exact = rational_points(sols, A) if sols.points else []
    results = {
        "dimension": A.dim,
        "points": [_point_json(p) for p in sols.points],
        "real_count": len(sols.real_points()),
        "conjugate_pairs": sols.conjugate_pairs(),
        "residual": sols.residual,
        "linear_form": list(sols.linear_form),
        "attempts": sols.attempts,
        "rational_points": None if exact is None else
        [{"coordinates": list(a), "multiplicity": mu} for a, mu in exact],
    }
    text = [f"{len(sols.points)} distinct solutions, total multiplicity {sols.total_multiplicity}"]
    for p in sols.points:
        coords = ", ".join(_fmt_complex(z, p.is_real) for z in p.coordinates)
        text.append(f"  ({coords})  mult {p.multiplicity}{'' if p.is_real else '  complex'}")
    text.append(f"residual {sols.residual:.3e}")
    rep.emit("solve", _inputs(args), results, text)
    return EXIT_OK


def cmd_charpoly(args, rep: Reporter) -> int:
    system, A = _algebra(args)
    f = _poly_arg(args.of, A.variables)
    direct = A.char_poly_of(f)
    traces = [A.trace_of(f**k) for k in range(1, A.dim + 1)]
    newton = char_poly_via_traces(traces, A.dim)
    agree = direct == newton
    results = {"coefficients": _uni_coeffs(direct), "polynomial": direct.format("t"),
               "power_traces": traces, "newton_agrees": agree}
    text = [f"det(M_f - t*I) = {direct.format('t')}",
            "Newton identities: " + ("agree" if agree else "DISAGREE")]
    rep.emit("charpoly", _inputs(args, of=args.of), results, text, agree)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_trace(args, rep: Reporter) -> int:
    system, A = _algebra(args)
    f = _poly_arg(args.of, A.variables)
    tr = A.trace_of(f)
    rep.emit("trace", _inputs(args, of=args.of), {"trace": tr}, [f"Tr(m_f) = {tr}"])
    return EXIT_OK


def cmd_det(args, rep: Reporter) -> int:
    system, A = _algebra(args)
    f = _poly_arg(args.of, A.variables)
    det = A.det_of(f)
    rep.emit("det", _inputs(args, of=args.of), {"det": det}, [f"det(m_f) = {det}"])
    return EXIT_OK


def _plural(n: int, word: str) -> str:
    return f"{n} {word}" + ("" if n == 1 else "s")


def cmd_count_real(args, rep: Reporter) -> int:
    system, A = _algebra(args)
    sig = exact_signature(trace_form(A))
    results = {"real_solutions": sig.signature, "type": [sig.positives, sig.negatives],
               "distinct_solutions": sig.positives + sig.negatives}
    text = [_plural(sig.signature, "real solution")]
    inputs = _inputs(args)
    if args.where is not None:
        h = _poly_arg(args.where, A.variables)
        pos, neg, zero = count_sign_conditions(A, h)
        results["where"] = {"h": h.format(), "positive": pos, "negative": neg, "zero": zero}
        text += [f"  h > 0: {pos}", f"  h < 0: {neg}", f"  h = 0: {zero}"]
        inputs["where"] = args.where
    rep.emit("count-real", inputs, results, text)
    return EXIT_OK


def cmd_uresultant(args, rep: Reporter) -> int:
    system, A = _algebra(args)
    R = u_resultant(A)
    results = {"u_resultant": R.format(), "degree": A.dim,
               "terms": [{"exponents": list(m), "coefficient": c} for m, c in sorted(R.terms.items(), reverse=True)]}
    text = [f"R(U) = {R.format()}"]
    passed = None
    if args.verify_samples:
        sols = solve_numeric(A, tol=args.tol, seed=args.seed)
        pr = verify_product_formula(A, R, sols, samples=args.verify_samples, seed=args.seed)
        passed = pr.passed
        results["verification"] = {"samples": [list(u) for u in pr.samples], "exact": pr.exact,
                                   "worst_deviation": pr.worst_deviation, "passed": pr.passed}
        text.append(f"product formula on {len(pr.samples)} samples: {'pass' if pr.passed else 'FAIL'}"
                    f" ({'exact' if pr.exact else f'worst deviation {pr.worst_deviation:.3e}'})")
    rep.emit("uresultant", _inputs(args, verify_samples=args.verify_samples), results, text, passed)
    return EXIT_FAIL if passed is False else EXIT_OK


def _minpoly(text: str) -> tuple[str, UniPoly]:
    f = parse_poly(text)
    if len(f.variables) != 1:
        raise ParseError(f"minimal polynomial must be univariate, got variables {', '.join(f.variables)}")
    return f.variables[0], f.to_unipoly()


def _factors_json(fac) -> list[dict]:
    return [{"factor": str(g), "degree": g.degree(), "exponent": e} for g, e in fac.factors]


def cmd_nf_trace(args, rep: Reporter) -> int:
    name, f = _minpoly(args.minpoly)
    alpha = parse_poly(args.alpha, [name]).to_unipoly()
    tr = verify_trace_formula(f, args.prime, alpha, seed=args.seed)
    results = {"trace": tr.tr_p, "factors": _factors_json(tr.factorization),
               "local_traces": [{"trace": t, "exponent": e} for t, e in tr.per_factor],
               "combined": tr.combined, "passed": tr.passed}
    text = [f"factorization mod {args.prime}: " + " * ".join(f"({g})^{e}" for g, e in tr.factorization.factors),
            f"Tr(alpha) = {tr.tr_p}; sum of e_i * Tr_i = {tr.combined} (mod {args.prime})",
            "pass" if tr.passed else "FAIL"]
    rep.emit("nf verify-trace", {"minpoly": args.minpoly, "prime": args.prime, "alpha": args.alpha},
             results, text, tr.passed)
    return EXIT_OK if tr.passed else EXIT_FAIL


def cmd_nf_parity(args, rep: Reporter) -> int:
    _, f = _minpoly(args.minpoly)
    pr = verify_parity(f, args.prime, seed=args.seed)
    results = {"discriminant": pr.discriminant, "legendre": pr.legendre_value, "parity": pr.parity,
               "prime_count": pr.prime_count, "skipped": pr.skipped, "passed": pr.passed}
    if pr.skipped:
        text = [f"discriminant {pr.discriminant}; p = {args.prime} is 2 or divides it: skipped"]
    else:
        text = [f"discriminant {pr.discriminant}; (D/p) = {pr.legendre_value}",
                f"{pr.prime_count} prime factors; (-1)^(n-m) = {pr.parity}",
                "pass" if pr.passed else "FAIL"]
    rep.emit("nf parity", {"minpoly": args.minpoly, "prime": args.prime}, results, text, pr.passed)
    return EXIT_OK if pr.passed else EXIT_FAIL


def cmd_nf_disc(args, rep: Reporter) -> int:
    _, f = _minpoly(args.minpoly)
    dr = disc_mod4_check(f)
    results = {"discriminant": dr.discriminant, "residue_mod_4": dr.residue, "passed": dr.passed}
    text = [f"disc = {dr.discriminant} = {dr.residue} mod 4", "pass" if dr.passed else "FAIL"]
    rep.emit("nf disc", {"minpoly": args.minpoly}, results, text, dr.passed)
    return EXIT_OK if dr.passed else EXIT_FAIL


def cmd_verify_all(args, rep: Reporter) -> int:
    system, A = _algebra(args)
    out = battery.run_battery(A, seed=args.seed, tol=args.tol, samples=args.samples)
    text = [f"dim A = {out['dimension']}" + (" (rational solutions)" if out["rational"] else "")]
    for name, check in out["checks"].items():
        text.append(f"  {name:<18} {'pass' if check['passed'] else 'FAIL'}")
    text.append("all checks pass" if out["passed"] else "verification FAILED")
    rep.emit("verify-all", _inputs(args, samples=args.samples), out, text, out["passed"])
    return EXIT_OK if out["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _global_flags(parser: argparse.ArgumentParser, suppress: bool):
    # subcommands repeat the flags with SUPPRESS defaults so either position works
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--order", choices=sorted(ORDERS), default=d("grevlex"))
    parser.add_argument("--seed", type=_seed, default=d(0))
    parser.add_argument("--tol", type=float, default=d(1e-9))
    parser.add_argument("--json", action="store_true", default=d(False))
    parser.add_argument("--timing", action="store_true", default=d(False),
                        help="include wall-clock time (makes output nondeterministic)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eigenpoly", description="Exact polynomial-system toolkit.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file_arg=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if file_arg:
            p.add_argument("file")
        p.set_defaults(func=func)
        return p

    add("gb", cmd_gb, "reduced Groebner basis and standard monomials")
    add("solve", cmd_solve, "numeric solutions with multiplicities")
    add("charpoly", cmd_charpoly, "characteristic polynomial of m_f").add_argument("--of", required=True)
    add("trace", cmd_trace, "trace of m_f").add_argument("--of", required=True)
    add("det", cmd_det, "determinant of m_f").add_argument("--of", required=True)
    add("count-real", cmd_count_real, "count real solutions").add_argument("--where")
    add("uresultant", cmd_uresultant, "U-resultant").add_argument(
        "--verify-samples", type=_positive_int, default=0)
    add("verify-all", cmd_verify_all, "run every invariant check").add_argument(
        "--samples", type=_positive_int, default=10)

    nf = sub.add_parser("nf", parents=[common], help="checks in Z[x]/(f)")
    nf_sub = nf.add_subparsers(dest="nf_command", required=True)
    p = nf_sub.add_parser("verify-trace", parents=[common])
    p.add_argument("--minpoly", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=cmd_nf_trace)
    p = nf_sub.add_parser("parity", parents=[common])
    p.add_argument("--minpoly", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=cmd_nf_parity)
    p = nf_sub.add_parser("disc", parents=[common])
    p.add_argument("--minpoly", required=True)
    p.set_defaults(func=cmd_nf_disc)
    return parser


def run_command(argv: Sequence[str], out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    rep = Reporter(args, out)
    try:
        return args.func(args, rep)
    except AlgebraError as exc:
        failure = exc
    if isinstance(failure, ParseError):
        code, kind = EXIT_USAGE, "parse error"
    elif isinstance(failure, ConsistencyError):
        code, kind = EXIT_FAIL, "consistency error"
    else:
        code, kind = EXIT_DOMAIN, "domain error"
    message = str(failure)
    err.write(f"eigenpoly: {kind}: {message}\n")
    if args.json:
        detail = {"type": type(failure).__name__, "message": message}
        if isinstance(failure, ParseError):
            detail.update(line=failure.line, column=failure.column)
        out.write(json.dumps({"command": args.command, "error": detail, "exit_code": code}, indent=2) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
