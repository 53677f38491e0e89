"""Command line front end.

Subcommands: ``eval``, ``integrate``, ``verify``, ``pslq``.  Exit status is
0 on success, 1 when a verification falls short of its required digits and
2 for configuration or execution errors.  ``CLAUSENLAB_DIGITS`` overrides the
default precision of every subcommand; ``--digits`` overrides both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

import mpmath

from . import __version__
from .clausen import cl2
from .expr import ExpressionError, evaluate
from .identities import IdentityId, IdentityReport, verify_all
from .integrals import integral_i7
from .numeric import ConfigurationError, DomainError, make_context
from .pslq import PrecisionExhaustedError, pslq_search
from .tanhsinh import DEFAULT_MAX_LEVELS, IntegrandEvaluationError, QuadratureError
from .zeta import dirichlet_l, hurwitz_zeta

ENV_DIGITS = "CLAUSENLAB_DIGITS"
EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

DEFAULT_DIGITS = {"eval": 32, "integrate": 32, "verify": 64, "pslq": 120}

# fields that legitimately differ between two otherwise identical runs
VOLATILE_FIELDS = ("timestamp", "wall_ms")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    digits: int
    identities: list[str] | str = "all"
    output_format: str = "text"
    required_digits: int | None = None
    max_levels: int = DEFAULT_MAX_LEVELS

    def __post_init__(self):
        if self.digits < 16:
            raise ConfigurationError(f"digits must be >= 16, got {self.digits}")
        if self.required_digits is not None and not 0 <= self.required_digits <= self.digits:
            raise ConfigurationError("required digits must lie between 0 and digits")


@dataclass
class ReportDocument:
    tool: str
    version: str
    timestamp: str
    config: dict
    reports: list[dict] = field(default_factory=list)
    overall: str = "pass"

    @classmethod
    def build(cls, config: RunConfig, reports: list[IdentityReport]) -> "ReportDocument":
        rows = [_report_row(r) for r in reports]
        overall = "pass" if rows and all(r["passed"] for r in rows) else "fail"
        return cls(
            tool="clausenlab",
            version=__version__,
            timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            config={
                "digits": config.digits,
                "identities": config.identities,
                "required_digits": config.required_digits,
                "max_levels": config.max_levels,
            },
            reports=rows,
            overall=overall,
        )

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls(**json.loads(text))


def _decimal(x, digits: int) -> str:
    if not mpmath.isfinite(x):
        return "nan"
    return mpmath.nstr(x, digits)


def _report_row(r: IdentityReport) -> dict:
    with mpmath.workdps(r.digits + 5):
        lhs = _decimal(r.lhs, r.digits)
        rhs = _decimal(r.rhs, r.digits)
    return {
        "id": r.id.value,
        "kind": r.kind,
        "label": r.label,
        "lhs": lhs,
        "rhs": rhs,
        "digits_agreed": r.digits_agreed,
        "required": r.required_digits,
        "passed": r.passed,
        "verdict": r.verdict,
        "wall_ms": round(r.wall_time * 1000, 3),
        "details": [{"label": label, "digits_agreed": d} for label, d in r.details],
        "error": r.error,
    }


def _text_report(doc: ReportDocument) -> str:
    lines = [f"clausenlab {doc.version}  digits={doc.config['digits']}"]
    for row in doc.reports:
        status = "PASS" if row["passed"] else "FAIL"
        lines.append(
            f"{status}  {row['id']:<14} {row['kind']:<10} digits_agreed={row['digits_agreed']:<5} "
            f"required={row['required']:<5} {row['verdict']}  ({row['wall_ms'] / 1000:.2f} s)"
        )
        if row["error"]:
            lines.append(f"      error: {row['error']}")
        for item in row["details"]:
            lines.append(f"      {item['digits_agreed']:>5}  {item['label']}")
    lines.append(f"overall: {doc.overall}")
    return "\n".join(lines)


def _default_digits(command: str) -> int:
    env = os.environ.get(ENV_DIGITS)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_DIGITS} must be an integer, got {env!r}")
    return DEFAULT_DIGITS[command]


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_eval(args) -> int:
    ctx = make_context(args.digits)
    func = args.function
    if func == "cl2":
        if args.theta is None:
            raise UsageError("eval cl2 needs --theta")
        value = cl2(evaluate(args.theta, ctx), ctx).value
    elif func == "hurwitz":
        if args.s is None or args.a is None:
            raise UsageError("eval hurwitz needs --s and --a")
        value = hurwitz_zeta(evaluate(args.s, ctx), evaluate(args.a, ctx), ctx)
    else:
        if args.d is None or args.s is None:
            raise UsageError("eval lseries needs --d and --s")
        value = dirichlet_l(args.d, evaluate(args.s, ctx), ctx).value
    with ctx.workdps():
        _emit(mpmath.nstr(value, args.digits), args.out)
    return EXIT_OK


def cmd_integrate(args) -> int:
    ctx = make_context(args.digits)
    res = integral_i7(ctx, max_levels=args.max_levels)
    with ctx.workdps():
        if args.format == "json":
            text = json.dumps(
                {
                    "value": mpmath.nstr(res.value, args.digits),
                    "error_estimate": mpmath.nstr(res.error_estimate, 5),
                    "levels_used": res.levels_used,
                    "nodes_evaluated": res.nodes_evaluated,
                },
                indent=2,
            )
        else:
            text = "\n".join(
                [
                    f"I7             = {mpmath.nstr(res.value, args.digits)}",
                    f"error estimate = {mpmath.nstr(res.error_estimate, 5)}",
                    f"levels used    = {res.levels_used}",
                    f"nodes          = {res.nodes_evaluated}",
                ]
            )
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all and args.identity:
        raise UsageError("use either --all or --identity")
    ids = "all" if args.all or not args.identity else [IdentityId(i).value for i in args.identity]
    config = RunConfig(
        digits=args.digits,
        identities=ids,
        output_format=args.format,
        required_digits=args.required,
        max_levels=args.max_levels,
    )
    ctx = make_context(config.digits)
    reports = verify_all(
        None if ids == "all" else ids,
        ctx,
        required_digits=config.required_digits,
        max_levels=config.max_levels,
        jobs=args.jobs,
    )
    doc = ReportDocument.build(config, reports)
    _emit(doc.to_json() if args.format == "json" else _text_report(doc), args.out)
    if any(r.error for r in reports):
        for r in reports:
            if r.error:
                print(f"error in {r.id.value}: {r.error}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK if doc.overall == "pass" else EXIT_FAIL


def cmd_pslq(args) -> int:
    ctx = make_context(args.digits)
    values = [evaluate(text, ctx) for text in args.values]
    search = pslq_search(values, ctx, norm_bound=args.norm_bound)
    with ctx.workdps():
        bound = mpmath.nstr(search.norm_lower_bound, 8)
        if args.format == "json":
            payload = {
                "values": args.values,
                "status": search.status,
                "iterations": search.iterations,
                "norm_lower_bound": bound,
                "coefficients": list(search.relation.coefficients) if search.relation else None,
                "residual": mpmath.nstr(search.relation.residual, 5) if search.relation else None,
            }
            text = json.dumps(payload, indent=2)
        elif search.relation:
            coeffs = " ".join(str(c) for c in search.relation.coefficients)
            text = f"relation: {coeffs}\nresidual: {mpmath.nstr(search.relation.residual, 5)}"
        else:
            text = (
                f"no relation found ({search.status}): no relation with max |c| <= {args.norm_bound}"
                f" was detected; any relation has norm >= {bound}"
            )
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clausenlab",
        description="High-precision Clausen / L-series evaluation and identity verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_format=True):
        p.add_argument("--digits", type=int, default=None, help="decimal digits")
        p.add_argument("--out", default=None, help="write output to this file")
        if with_format:
            p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("eval", help="evaluate cl2, hurwitz or lseries")
    p.add_argument("function", choices=("cl2", "hurwitz", "lseries"))
    p.add_argument("--theta", help="angle expression, e.g. pi/2")
    p.add_argument("--s", help="exponent expression")
    p.add_argument("--a", help="Hurwitz shift expression")
    p.add_argument("--d", type=int, help="Kronecker modulus, e.g. -7")
    common(p, with_format=False)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("integrate", help="evaluate I7 by tanh-sinh quadrature")
    p.add_argument("--max-levels", type=int, default=DEFAULT_MAX_LEVELS)
    common(p)
    p.set_defaults(handler=cmd_integrate)

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("--identity", action="append", choices=[i.value for i in IdentityId])
    p.add_argument("--all", action="store_true")
    p.add_argument("--required", type=int, default=None, help="digits of agreement required")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-levels", type=int, default=DEFAULT_MAX_LEVELS)
    common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("pslq", help="search for an integer relation")
    p.add_argument("values", nargs="+", help="constant expressions")
    p.add_argument("--norm-bound", type=int, default=1000)
    common(p)
    p.set_defaults(handler=cmd_pslq)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.digits is None:
            args.digits = _default_digits(args.command)
        return args.handler(args)
    except (UsageError, ConfigurationError, DomainError, ExpressionError) as exc:
        print(f"clausenlab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (QuadratureError, IntegrandEvaluationError, PrecisionExhaustedError, ArithmeticError) as exc:
        print(f"clausenlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
