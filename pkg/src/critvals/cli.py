"""Command line interface: ``critvals <subcommand> [options]``.

Every subcommand prints one JSON object on standard output.  Exit status is
0 on success, 1 for malformed input and 2 for a numerical failure; errors are
reported as a JSON object on standard error naming the failing stage.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import Poly, cvd, discriminant, monic_derivative, monic_from_coeffs
from .contour import ContourConfig, truncated_cvd
from .errors import (
    CritvalsError,
    InputError,
    NotNearInteger,
    NumericalError,
    ResolventNearSingular,
    UnknownSubcommand,
    ZeroNearContour,
)
from .exact import ExactComplex, parse_exact_token
from .exprlang import parse_expr
from .monodromy import monodromy_group, radicals_verdict
from .typicality import hermite_interpolant, split_zeros, theta_bound, typicality_probe

SUBCOMMANDS = ("cvd", "variety", "monodromy", "radicals", "tcvd", "typical", "theta",
               "interp", "split", "selftest")

# failures that a slightly different radius may avoid
_CONTOUR_ERRORS = (ZeroNearContour, NotNearInteger, ResolventNearSingular)
_NUDGES = (1 + 1 / 64, 1 - 1 / 64, (1 + 1 / 64) ** 2, (1 - 1 / 64) ** 2)


@dataclass(frozen=True)
class CliConfig:
    radius: float = 5.0
    quad_nodes: int = 64
    tol: float = 1e-10
    order_cap: int = 100_000
    seed: int = 0
    output: str = "json"
    strict_radius: bool = False

    def __post_init__(self):
        if not (self.radius > 0 and self.quad_nodes > 0 and self.tol > 0 and self.order_cap > 0):
            raise InputError("radius, quad-nodes, tol and order-cap must be positive")
        if self.seed < 0:
            raise InputError("seed must be a nonnegative integer")

    def contour(self, radius: float | None = None) -> ContourConfig:
        try:
            return ContourConfig(radius=self.radius if radius is None else radius,
                                 nodes=self.quad_nodes, match_tol=self.tol)
        except ValueError as e:
            raise InputError(str(e)) from e


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message, stage="arguments")


# ---------------------------------------------------------------------------
# Input parsing
# ---------------------------------------------------------------------------

def _split_list(text: str, flag: str) -> list:
    items = [t.strip() for t in text.split(",")]
    if not text.strip() or any(not t for t in items):
        raise InputError(f"{flag}: expected a comma-separated list, got {text!r}")
    return items


def _is_exact_token(tok: str) -> bool:
    try:
        parse_exact_token(tok)
        return True
    except (InputError, ValueError):
        return False


def _numeric_token(tok: str, flag: str, k: int) -> complex:
    try:
        return complex(tok.replace("i", "j") if "j" not in tok else tok)
    except ValueError:
        raise InputError(f"{flag} item {k} ({tok!r}): not a decimal or complex literal") from None


def parse_exact_list(text: str, flag: str = "--coeffs") -> list:
    out = []
    for k, tok in enumerate(_split_list(text, flag), start=1):
        try:
            out.append(parse_exact_token(tok))
        except (InputError, ValueError) as e:
            raise InputError(f"{flag} item {k} ({tok!r}): {e}") from None
    return out


def parse_numeric_list(text: str, flag: str = "--coeffs") -> list:
    items = _split_list(text, flag)
    for k, tok in enumerate(items, start=1):
        if "/" in tok:
            raise InputError(f"{flag} item {k} ({tok!r}): rational tokens are exact input; "
                             "this subcommand takes decimal or complex literals")
    return [_numeric_token(tok, flag, k) for k, tok in enumerate(items, start=1)]


def parse_any_list(text: str, flag: str) -> list:
    """Exact tokens or numeric literals, but not a mixture of the two."""
    items = _split_list(text, flag)
    exact = [_is_exact_token(t) for t in items]
    if all(exact):
        return parse_exact_list(text, flag)
    if any(exact) and any("/" in t for t, e in zip(items, exact) if e):
        k = exact.index(True) + 1
        raise InputError(f"{flag} item {k} ({items[k - 1]!r}): exact and decimal tokens are mixed")
    return parse_numeric_list(text, flag)


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _with_nudging(cfg: CliConfig, run: Callable[[float], dict]) -> dict:
    radii = [cfg.radius] if cfg.strict_radius else [cfg.radius] + [cfg.radius * f for f in _NUDGES]
    last = None
    for i, r in enumerate(radii):
        try:
            out = run(r)
        except _CONTOUR_ERRORS as e:
            last = e
            continue
        out["radius_nudging"] = {"requested": cfg.radius, "used": r, "nudges": i,
                                 "strict": cfg.strict_radius}
        return out
    raise last


def cmd_cvd(args, cfg: CliConfig) -> dict:
    a = parse_exact_list(args.coeffs)
    return {"cvd": cvd(a).to_token()}


def cmd_variety(args, cfg: CliConfig) -> dict:
    a = parse_exact_list(args.coeffs)
    d = discriminant(monic_derivative(monic_from_coeffs(a)))
    return {"member": d == 0, "derivative_discriminant": ExactComplex(d.re, d.im).to_token()
            if isinstance(d, ExactComplex) else str(d)}


def cmd_monodromy(args, cfg: CliConfig) -> dict:
    a = parse_numeric_list(args.coeffs)
    return monodromy_group(monic_from_coeffs(a), cfg.order_cap).to_json()


def cmd_radicals(args, cfg: CliConfig) -> dict:
    a = parse_exact_list(args.coeffs)
    return radicals_verdict(a, cross_check=args.cross_check, order_cap=cfg.order_cap).to_json()


def cmd_tcvd(args, cfg: CliConfig) -> dict:
    f = parse_expr(args.expr)
    return _with_nudging(cfg, lambda r: truncated_cvd(f, cfg.contour(r)).to_json())


def cmd_typical(args, cfg: CliConfig) -> dict:
    f = parse_expr(args.expr)
    return _with_nudging(cfg, lambda r: typicality_probe(f, r, cfg.contour(r)).to_json())


def cmd_theta(args, cfg: CliConfig) -> dict:
    return theta_bound(args.epsilon, args.m, args.samples).to_json()


def cmd_interp(args, cfg: CliConfig) -> dict:
    pts = parse_any_list(args.points, "--points")
    vals = parse_any_list(args.values, "--values")
    P = hermite_interpolant(pts, vals)
    dP = P.derivative()
    exact_in = all(isinstance(x, ExactComplex) for x in pts + vals)
    from .typicality import _to_field
    res_v = max((abs(P(_to_field(z)) - _to_field(y)) for z, y in zip(pts, vals)), default=0)
    res_d = max((abs(dP(_to_field(z))) for z in pts), default=0)
    out = {
        "degree": P.degree,
        "coefficients": [_pair(c) for c in P.coeffs],
        "value_residual": float(res_v),
        "derivative_residual": float(res_d),
    }
    if exact_in:
        out["exact_coefficients"] = [c.to_token() for c in P.coeffs]
    return out


def cmd_split(args, cfg: CliConfig) -> dict:
    a = parse_any_list(args.coeffs, "--coeffs")
    if all(isinstance(x, ExactComplex) for x in a):
        p = monic_from_coeffs(a)
    else:
        p = Poly(list(a) + [1.0])
    return split_zeros(p, args.delta).to_json()


def cmd_selftest(args, cfg: CliConfig) -> dict:
    from .acceptance import run_all

    only = None
    if args.only:
        try:
            only = [int(t) for t in _split_list(args.only, "--only")]
        except ValueError:
            raise InputError(f"--only: expected criterion numbers, got {args.only!r}") from None
    results = run_all(seed=cfg.seed, only=only)
    # informational criteria carry passed=None and do not fail the run
    return {"seed": cfg.seed, "passed": all(r.passed is not False for r in results),
            "criteria": [r.to_json() for r in results]}


HANDLERS = {
    "cvd": cmd_cvd,
    "variety": cmd_variety,
    "monodromy": cmd_monodromy,
    "radicals": cmd_radicals,
    "tcvd": cmd_tcvd,
    "typical": cmd_typical,
    "theta": cmd_theta,
    "interp": cmd_interp,
    "split": cmd_split,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--radius", type=float, default=5.0, help="contour radius R")
    common.add_argument("--quad-nodes", type=int, default=64, help="initial quadrature nodes")
    common.add_argument("--tol", type=float, default=1e-10, help="quadrature match tolerance")
    common.add_argument("--order-cap", type=int, default=100_000, help="group enumeration cap")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json", default="json",
                     help="compact JSON (default)")
    out.add_argument("--pretty", dest="output", action="store_const", const="pretty",
                     help="indented JSON")
    common.add_argument("--strict-radius", action="store_true",
                        help="do not retry a contour failure at a nudged radius")

    parser = _Parser(prog="critvals", description="Critical values, monodromy and typicality.")
    sub = parser.add_subparsers(dest="command", metavar="subcommand", parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("cvd", "exact critical values discriminant of a monic polynomial")
    p.add_argument("--coeffs", required=True, help='a0,...,a_{m-1} as "p/q" or "p/q+r/si"')
    p = add("variety", "whether the normalized derivative has a repeated root")
    p.add_argument("--coeffs", required=True)
    p = add("monodromy", "monodromy group of the inverse of a polynomial")
    p.add_argument("--coeffs", required=True, help="a0,...,a_{m-1} as decimal/complex literals")
    p = add("radicals", "radicals verdict from the exact discriminant")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--cross-check", action="store_true", help="also compute the monodromy group")
    p = add("tcvd", "R-truncated discriminant of an entire expression")
    p.add_argument("--expr", required=True)
    p = add("typical", "typicality evidence inside a disk")
    p.add_argument("--expr", required=True)
    p = add("theta", "surjectivity bound for exp(z) - eps z")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=4096)
    p = add("interp", "polynomial with prescribed critical points and values")
    p.add_argument("--points", required=True)
    p.add_argument("--values", required=True)
    p = add("split", "split multiple zeros of a monic polynomial")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--delta", type=float, required=True)
    p = add("selftest", "run the acceptance suite")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    return parser


def _dump(obj: dict, output: str) -> str:
    if output == "pretty":
        return json.dumps(obj, indent=2, allow_nan=False)
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


def _error_payload(e: Exception, command: str | None) -> dict:
    stage = getattr(e, "stage", None) or command
    return {"error": type(e).__name__, "stage": stage, "message": str(e)}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    command = None
    try:
        if argv and not argv[0].startswith("-") and argv[0] not in SUBCOMMANDS:
            raise UnknownSubcommand(f"unknown subcommand {argv[0]!r}; expected one of "
                                    + ", ".join(SUBCOMMANDS), stage="arguments")
        args = parser.parse_args(argv)
        command = args.command
        if command is None:
            raise UnknownSubcommand("a subcommand is required: " + ", ".join(SUBCOMMANDS),
                                    stage="arguments")
        cfg = CliConfig(args.radius, args.quad_nodes, args.tol, args.order_cap, args.seed,
                        args.output, args.strict_radius)
        report = HANDLERS[command](args, cfg)
        print(_dump(report, cfg.output), file=stdout)
        code = 0
        if command == "selftest" and not report["passed"]:
            code = 2
        return code
    except InputError as e:
        print(_dump(_error_payload(e, command), "json"), file=stderr)
        return 1
    except NumericalError as e:
        print(_dump(_error_payload(e, command), "json"), file=stderr)
        return 2
    except CritvalsError as e:
        print(_dump(_error_payload(e, command), "json"), file=stderr)
        return 2
    except (ValueError, TypeError, ZeroDivisionError) as e:
        # remaining validation errors from constructors
        print(_dump(_error_payload(e, command), "json"), file=stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
