"""Closed forms for I7 and the suite of numerical identity checks.

Every check compares one or more (left, right) pairs and reports how many
decimal digits they share.  Two of the checks are open conjectures; their
reports only ever say how many digits agreed, never that anything was
proved.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

import mpmath
from mpmath import mpf

from .clausen import cl2_value, multiplication_rhs
from .integrals import (
    antiderivative_35,
    coffey_logcos_integral,
    coffey_logsin_integral,
    integral_i7,
    lemma1_closed_a,
    lemma1_closed_b,
    lemma1_integral_a,
    lemma1_integral_b,
)
from .numeric import ConfigurationError, PrecisionContext, constants, to_mpf
from .tanhsinh import DEFAULT_MAX_LEVELS, IntegrandEvaluationError, QuadratureError, tanh_sinh
from .zeta import dirichlet_l, l_minus7_clausen, l_minus7_direct

__all__ = [
    "IdentityId",
    "IdentityReport",
    "CONJECTURES",
    "closed_form_coffey",
    "closed_form_new",
    "conjecture_15_rhs",
    "split_sum_closed",
    "reduced_bracket",
    "final_bracket",
    "digits_agreed",
    "verify",
    "verify_all",
]

GUARD_SLACK = 10


class IdentityId(str, enum.Enum):
    COFFEY_12A = "COFFEY_12A"
    NEW_16 = "NEW_16"
    L7_THREE_WAYS = "L7_THREE_WAYS"
    CONJ_13 = "CONJ_13"
    CONJ_15 = "CONJ_15"
    EQ_37_CHAIN = "EQ_37_CHAIN"
    EQ_38_FINAL = "EQ_38_FINAL"
    LEMMA1_A = "LEMMA1_A"
    LEMMA1_B = "LEMMA1_B"
    ANTIDERIV_35 = "ANTIDERIV_35"
    COFFEY_LOGSIN = "COFFEY_LOGSIN"
    COFFEY_LOGCOS = "COFFEY_LOGCOS"
    MULT_FORMULA = "MULT_FORMULA"


CONJECTURES = frozenset({IdentityId.CONJ_13, IdentityId.CONJ_15})


@dataclass(frozen=True)
class IdentityReport:
    id: IdentityId
    lhs: mpf
    rhs: mpf
    digits_agreed: int
    required_digits: int
    passed: bool
    wall_time: float
    # (label, digits agreed) for every comparison behind the headline pair
    details: tuple = ()
    error: str | None = None
    digits: int = 0

    @property
    def kind(self) -> str:
        return "conjecture" if self.id in CONJECTURES else "theorem"

    @property
    def verdict(self) -> str:
        return f"agreed-to-{self.digits_agreed}-digits" if self.passed else "failed"

    @property
    def label(self) -> str:
        return "conjecture" if self.id in CONJECTURES else "theorem (paper-proved)"


def digits_agreed(x, y, digits: int) -> int:
    """floor(-log10(|x - y| / max(|x|, |y|, 1))), clamped to [0, digits]."""
    x, y = to_mpf(x), to_mpf(y)
    diff = abs(x - y)
    if diff == 0:
        return digits
    scale = max(abs(x), abs(y), mpf(1))
    agreed = int(mpmath.floor(-mpmath.log10(diff / scale)))
    return max(0, min(agreed, digits))


def closed_form_coffey(ctx: PrecisionContext) -> mpf:
    """12/(7 sqrt 7) [Cl2(2w) + 2 Cl2(t) - Cl2(2w + 2t)], w = omega_plus, t = theta_plus."""
    c = constants(ctx)
    with ctx.workdps():
        w, t = c.omega_plus, c.theta_plus
        bracket = cl2_value(2 * w, ctx) + 2 * cl2_value(t, ctx) - cl2_value(2 * w + 2 * t, ctx)
        return 12 / (7 * c.sqrt7) * bracket


def _phi7_triplet(ctx):
    c = constants(ctx)
    p = c.phi7
    return cl2_value(2 * p, ctx), cl2_value(4 * p, ctx), cl2_value(6 * p, ctx)


def final_bracket(ctx: PrecisionContext) -> mpf:
    """(1/6)[3 Cl2(2 phi7) - 3 Cl2(4 phi7) + Cl2(6 phi7)] = (7 sqrt 7 / 24) I7."""
    with ctx.workdps():
        a, b, c = _phi7_triplet(ctx)
        return (3 * a - 3 * b + c) / 6


def closed_form_new(ctx: PrecisionContext) -> mpf:
    """4/(7 sqrt 7) [3 Cl2(2 phi7) - 3 Cl2(4 phi7) + Cl2(6 phi7)]."""
    c = constants(ctx)
    with ctx.workdps():
        a, b, t = _phi7_triplet(ctx)
        return 4 / (7 * c.sqrt7) * (3 * a - 3 * b + t)


def conjecture_15_rhs(ctx: PrecisionContext) -> mpf:
    # same triplet as the new closed form; kept separate so the conjecture
    # check reads as what it compares
    return closed_form_new(ctx)


def split_sum_closed(ctx: PrecisionContext) -> mpf:
    """Both halves of the split I7 integral, each from its Clausen closed form."""
    c = constants(ctx)
    with ctx.workdps():
        return lemma1_closed_b(c.phi7, c.pi / 3, ctx) + lemma1_closed_a(c.phi7, c.pi / 2, ctx)


def reduced_bracket(ctx: PrecisionContext) -> mpf:
    """(1/2)[Cl2(2 phi7 + 2pi/3) + Cl2(2 phi7 - 2pi/3)] - Cl2(pi + 2 phi7)."""
    c = constants(ctx)
    with ctx.workdps():
        p, pi = c.phi7, c.pi
        return (
            cl2_value(2 * p + 2 * pi / 3, ctx) + cl2_value(2 * p - 2 * pi / 3, ctx)
        ) / 2 - cl2_value(pi + 2 * p, ctx)


@lru_cache(maxsize=8)
def _i7(ctx: PrecisionContext, max_levels: int) -> mpf:
    return integral_i7(ctx, max_levels).value


# Each check returns a list of (label, lhs, rhs).

def _check_coffey(ctx, max_levels):
    return [("I7 quadrature vs Coffey closed form", _i7(ctx, max_levels), closed_form_coffey(ctx))]


def _check_new(ctx, max_levels):
    new = closed_form_new(ctx)
    return [
        ("I7 quadrature vs phi7 closed form", _i7(ctx, max_levels), new),
        ("Coffey closed form vs phi7 closed form", closed_form_coffey(ctx), new),
    ]


def _check_l7(ctx, max_levels):
    direct = l_minus7_direct(2, ctx).value
    hurwitz = dirichlet_l(-7, 2, ctx).value
    clausen = l_minus7_clausen(ctx).value
    return [
        ("direct series vs Hurwitz sum", direct, hurwitz),
        ("direct series vs Clausen form", direct, clausen),
        ("Hurwitz sum vs Clausen form", hurwitz, clausen),
    ]


def _check_conj13(ctx, max_levels):
    return [("I7 quadrature vs L_-7(2)", _i7(ctx, max_levels), dirichlet_l(-7, 2, ctx).value)]


def _check_conj15(ctx, max_levels):
    return [("L_-7(2) vs phi7 Clausen triplet", dirichlet_l(-7, 2, ctx).value, conjecture_15_rhs(ctx))]


def _check_chain(ctx, max_levels):
    c = constants(ctx)
    with ctx.workdps():
        quad = (
            lemma1_integral_b(c.phi7, c.pi / 3, ctx, max_levels).value
            + lemma1_integral_a(c.phi7, c.pi / 2, ctx, max_levels).value
        )
    split = split_sum_closed(ctx)
    return [
        ("split integrals: quadrature vs closed forms", quad, split),
        ("split closed forms vs reduced bracket", split, reduced_bracket(ctx)),
    ]


def _check_final(ctx, max_levels):
    c = constants(ctx)
    final = final_bracket(ctx)
    with ctx.workdps():
        scaled = 24 / (7 * c.sqrt7) * final
    return [
        ("reduced bracket vs final bracket", reduced_bracket(ctx), final),
        ("scaled final bracket vs phi7 closed form", scaled, closed_form_new(ctx)),
    ]


def _lemma_points_a(ctx):
    c = constants(ctx)
    pi = c.pi
    return [(pi / 6, pi / 4), (pi / 8, pi / 3), (mpf("0.3"), mpf("1.1")), (c.phi7, pi / 2)]


def _lemma_points_b(ctx):
    c = constants(ctx)
    pi = c.pi
    return [(pi / 5, pi / 8), (pi / 4, pi / 6), (mpf("1.0"), mpf("0.2")), (c.phi7, pi / 3)]


def _check_lemma_a(ctx, max_levels):
    with ctx.workdps():
        return [
            (
                f"phi={mpmath.nstr(p, 8)}, x={mpmath.nstr(x, 8)}",
                lemma1_integral_a(p, x, ctx, max_levels).value,
                lemma1_closed_a(p, x, ctx),
            )
            for p, x in _lemma_points_a(ctx)
        ]


def _check_lemma_b(ctx, max_levels):
    with ctx.workdps():
        return [
            (
                f"phi={mpmath.nstr(p, 8)}, x={mpmath.nstr(x, 8)}",
                lemma1_integral_b(p, x, ctx, max_levels).value,
                lemma1_closed_b(p, x, ctx),
            )
            for p, x in _lemma_points_b(ctx)
        ]


ANTIDERIVATIVE_CONFIGS = (
    ("pi/7", "0.1", "0.6"),
    ("pi/5", "0.2", "1.0"),
    ("0.3", "0.05", "1.4"),
    ("1.1", "0.4", "0.9"),
    ("0.75", "1.0", "1.5"),
)


def _check_antiderivative(ctx, max_levels):
    out = []
    with ctx.workdps():
        for p, t1, t2 in ANTIDERIVATIVE_CONFIGS:
            phi = mpmath.pi / 7 if p == "pi/7" else mpmath.pi / 5 if p == "pi/5" else mpf(p)
            t1, t2 = mpf(t1), mpf(t2)
            tan_phi = mpmath.tan(phi)
            numeric = tanh_sinh(
                lambda t: mpmath.log(mpmath.tan(t) + tan_phi), t1, t2, ctx, max_levels=max_levels
            ).value
            closed = antiderivative_35(phi, t2, ctx) - antiderivative_35(phi, t1, ctx)
            out.append((f"phi={p}, t1={t1}, t2={t2}", numeric, closed))
    return out


def _coffey_grid():
    pi = mpmath.pi
    for kappa in (1, 2):
        for alpha_name, alpha in (("pi/5", pi / 5), ("pi/3", pi / 3)):
            for x_name, x in (("a/2", alpha / 2), ("a", alpha), ("-a/2", -alpha / 2)):
                yield f"kappa={kappa}, alpha={alpha_name}, x={x_name}", kappa, alpha, x


def _check_logsin(ctx, max_levels):
    out = []
    with ctx.workdps():
        ln2 = mpmath.log(2)
        pi = mpmath.pi
        for label, k, a, x in _coffey_grid():
            lhs = coffey_logsin_integral(k, a, x, ctx, max_levels)
            rhs = (
                cl2_value(a, ctx)
                - cl2_value(k * x + a, ctx)
                + cl2_value(a - k * x + pi, ctx)
                - cl2_value(a + pi, ctx)
                - x * k * ln2
            )
            out.append((label, lhs, rhs))
    return out


def _check_logcos(ctx, max_levels):
    out = []
    with ctx.workdps():
        ln2 = mpmath.log(2)
        for label, k, a, x in _coffey_grid():
            lhs = coffey_logcos_integral(k, a, x, ctx, max_levels)
            rhs = cl2_value(k * x - a, ctx) + cl2_value(k * x + a, ctx) + x * k * ln2
            out.append((label, lhs, rhs))
    return out


MULT_ANGLES = ("0.3", "1.1", "2.5", "-0.7", "4.0")


def _check_multiplication(ctx, max_levels):
    out = []
    with ctx.workdps():
        pi = mpmath.pi
        for name in MULT_ANGLES:
            t = mpf(name)
            for m in (2, 3, 4, 5, 7):
                out.append((f"m={m}, theta={name}", cl2_value(m * t, ctx), multiplication_rhs(t, m, ctx)))
            half_double = cl2_value(2 * t, ctx) / 2
            out.append((f"duplication (plus), theta={name}", half_double, cl2_value(t, ctx) + cl2_value(pi + t, ctx)))
            out.append((f"duplication (minus), theta={name}", half_double, cl2_value(t, ctx) - cl2_value(pi - t, ctx)))
            out.append(
                (
                    f"triplication, theta={name}",
                    cl2_value(3 * t, ctx) / 3,
                    cl2_value(t, ctx) + cl2_value(t + 2 * pi / 3, ctx) + cl2_value(t - 2 * pi / 3, ctx),
                )
            )
    return out


CHECKS: dict[IdentityId, Callable] = {
    IdentityId.COFFEY_12A: _check_coffey,
    IdentityId.NEW_16: _check_new,
    IdentityId.L7_THREE_WAYS: _check_l7,
    IdentityId.CONJ_13: _check_conj13,
    IdentityId.CONJ_15: _check_conj15,
    IdentityId.EQ_37_CHAIN: _check_chain,
    IdentityId.EQ_38_FINAL: _check_final,
    IdentityId.LEMMA1_A: _check_lemma_a,
    IdentityId.LEMMA1_B: _check_lemma_b,
    IdentityId.ANTIDERIV_35: _check_antiderivative,
    IdentityId.COFFEY_LOGSIN: _check_logsin,
    IdentityId.COFFEY_LOGCOS: _check_logcos,
    IdentityId.MULT_FORMULA: _check_multiplication,
}


def verify(
    id: IdentityId | str,
    ctx: PrecisionContext,
    required_digits: int | None = None,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> IdentityReport:
    """Run one identity check.

    ``required_digits`` defaults to ``ctx.digits - 10`` and may not exceed
    ``ctx.digits``.  Numerical failures (quadrature not converging, a bad integrand
    value) come back as a failed report with ``error`` set.
    """
    id = IdentityId(id)
    if required_digits is None:
        required_digits = ctx.digits - GUARD_SLACK
    if required_digits > ctx.digits or required_digits < 0:
        raise ConfigurationError(
            f"required digits must lie in [0, {ctx.digits}] at {ctx.digits} digits"
        )
    start = time.perf_counter()
    try:
        pairs = CHECKS[id](ctx, max_levels)
    except (QuadratureError, IntegrandEvaluationError, ArithmeticError) as exc:
        best = exc.result.value if isinstance(exc, QuadratureError) else mpmath.nan
        return IdentityReport(
            id, best, mpmath.nan, 0, required_digits, False,
            time.perf_counter() - start, (), f"{type(exc).__name__}: {exc}", ctx.digits,
        )
    scored = [(label, lhs, rhs, digits_agreed(lhs, rhs, ctx.digits)) for label, lhs, rhs in pairs]
    worst = min(scored, key=lambda item: item[3])
    agreed = worst[3]
    return IdentityReport(
        id=id,
        lhs=worst[1],
        rhs=worst[2],
        digits_agreed=agreed,
        required_digits=required_digits,
        passed=agreed >= required_digits,
        wall_time=time.perf_counter() - start,
        details=tuple((label, d) for label, _, _, d in scored),
        digits=ctx.digits,
    )


def _verify_job(args):
    return verify(*args)


def verify_all(
    ids: Iterable[IdentityId | str] | None,
    ctx: PrecisionContext,
    required_digits: int | None = None,
    max_levels: int = DEFAULT_MAX_LEVELS,
    jobs: int = 1,
) -> list[IdentityReport]:
    """Run several checks; reports come back in enumeration order.

    With ``jobs > 1`` the checks run in worker processes (mpmath precision
    is process-global state).
    """
    selected = set(IdentityId) if ids is None else {IdentityId(i) for i in ids}
    ordered = [i for i in IdentityId if i in selected]
    work = [(i, ctx, required_digits, max_levels) for i in ordered]
    if jobs <= 1 or len(work) <= 1:
        return [_verify_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_job, work))
