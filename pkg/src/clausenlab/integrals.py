"""Numerical integrals built on the tanh-sinh engine.

The log-tangent integrands are singular where tan(theta) = tan(phi).  They
are only ever integrated with that point at an endpoint, and evaluated as

    (tan t + tan p) / (tan t - tan p) = sin(t + p) / sin(t - p)

at a few extra digits, so nodes a couple of ulps away from the singular
endpoint still get the right sign and magnitude.
"""

from __future__ import annotations

from typing import Callable, Sequence

import mpmath
from mpmath import mpf

from .clausen import cl2_value
from .numeric import DomainError, PrecisionContext, constants, to_mpf
from .tanhsinh import DEFAULT_MAX_LEVELS, Integrand, QuadratureResult, tanh_sinh

__all__ = [
    "integral_i7",
    "lemma1_integral_a",
    "lemma1_integral_b",
    "lemma1_closed_a",
    "lemma1_closed_b",
    "antiderivative_35",
    "antiderivative_check_35",
    "coffey_logsin_integral",
    "coffey_logcos_integral",
    "integrate_piecewise",
]

EXTRA_DIGITS = 20


def _log_tan_ratio(phi: mpf, upper: bool) -> Callable[[mpf], mpf]:
    """log((tan t + tan phi)/(tan t - tan phi)) for t > phi (upper=True),
    log((tan phi + tan t)/(tan phi - tan t)) for t < phi."""

    def f(t):
        with mpmath.extradps(EXTRA_DIGITS):
            if upper:
                ratio = mpmath.sin(t + phi) / mpmath.sin(t - phi)
            else:
                ratio = mpmath.sin(phi + t) / mpmath.sin(phi - t)
            value = mpmath.log(ratio)
        return +value

    return f


def _check_lemma_args(phi, x, ctx):
    with ctx.workdps():
        phi = to_mpf(phi)
        x = to_mpf(x)
        if not 0 < phi < mpmath.pi / 2 or not 0 < x <= mpmath.pi / 2:
            raise DomainError("need 0 < phi < pi/2 and 0 < x <= pi/2")
    return phi, x


def lemma1_integral_a(phi, x, ctx: PrecisionContext, max_levels: int = DEFAULT_MAX_LEVELS) -> QuadratureResult:
    """int_phi^x log((tan t + tan phi)/(tan t - tan phi)) dt for phi <= x <= pi/2."""
    phi, x = _check_lemma_args(phi, x, ctx)
    if x < phi:
        raise DomainError("lemma1_integral_a needs phi <= x")
    f = Integrand(_log_tan_ratio(phi, upper=True), singularities=(phi,))
    return tanh_sinh(f, phi, x, ctx, max_levels=max_levels)


def lemma1_integral_b(phi, x, ctx: PrecisionContext, max_levels: int = DEFAULT_MAX_LEVELS) -> QuadratureResult:
    """int_x^phi log((tan phi + tan t)/(tan phi - tan t)) dt for 0 < x <= phi."""
    phi, x = _check_lemma_args(phi, x, ctx)
    if x > phi:
        raise DomainError("lemma1_integral_b needs x <= phi")
    f = Integrand(_log_tan_ratio(phi, upper=False), singularities=(phi,))
    return tanh_sinh(f, x, phi, ctx, max_levels=max_levels)


def lemma1_closed_a(phi, x, ctx: PrecisionContext) -> mpf:
    """-Cl2(2x + 2phi)/2 + Cl2(2x - 2phi)/2 + Cl2(4phi)/2."""
    with ctx.workdps():
        phi, x = to_mpf(phi), to_mpf(x)
        return (
            -cl2_value(2 * x + 2 * phi, ctx)
            + cl2_value(2 * x - 2 * phi, ctx)
            + cl2_value(4 * phi, ctx)
        ) / 2


def lemma1_closed_b(phi, x, ctx: PrecisionContext) -> mpf:
    """Cl2(2x + 2phi)/2 - Cl2(2x - 2phi)/2 - Cl2(4phi)/2."""
    with ctx.workdps():
        phi, x = to_mpf(phi), to_mpf(x)
        return (
            cl2_value(2 * x + 2 * phi, ctx)
            - cl2_value(2 * x - 2 * phi, ctx)
            - cl2_value(4 * phi, ctx)
        ) / 2


def integral_i7(ctx: PrecisionContext, max_levels: int = DEFAULT_MAX_LEVELS) -> QuadratureResult:
    """I7 = 24/(7 sqrt 7) int_{pi/3}^{pi/2} log|(tan t + sqrt 7)/(tan t - sqrt 7)| dt.

    The interval is split at phi7 = arctan(sqrt 7), the only zero of
    tan t - sqrt 7 inside it, and the absolute value is resolved on each
    side.
    """
    c = constants(ctx)
    with ctx.workdps():
        left = lemma1_integral_b(c.phi7, c.pi / 3, ctx, max_levels)
        right = lemma1_integral_a(c.phi7, c.pi / 2, ctx, max_levels)
        scale = 24 / (7 * c.sqrt7)
        return QuadratureResult(
            value=scale * (left.value + right.value),
            error_estimate=scale * (left.error_estimate + right.error_estimate),
            levels_used=max(left.levels_used, right.levels_used),
            nodes_evaluated=left.nodes_evaluated + right.nodes_evaluated,
        )


def antiderivative_35(phi, theta, ctx: PrecisionContext) -> mpf:
    """-theta log(cos phi) - Cl2(2 theta + 2 phi)/2 - Cl2(pi - 2 theta)/2."""
    with ctx.workdps():
        phi, theta = to_mpf(phi), to_mpf(theta)
        return (
            -theta * mpmath.log(mpmath.cos(phi))
            - cl2_value(2 * theta + 2 * phi, ctx) / 2
            - cl2_value(mpmath.pi - 2 * theta, ctx) / 2
        )


def antiderivative_check_35(phi, t1, t2, ctx: PrecisionContext, max_levels: int = DEFAULT_MAX_LEVELS) -> mpf:
    """|int_{t1}^{t2} log(tan t + tan phi) dt - (F(t2) - F(t1))| with F = :func:`antiderivative_35`."""
    with ctx.workdps():
        phi, t1, t2 = to_mpf(phi), to_mpf(t1), to_mpf(t2)
        if t1 == t2:
            return mpf(0)
        lo, hi = min(t1, t2), max(t1, t2)
        tan_phi = mpmath.tan(phi)
        res = tanh_sinh(lambda t: mpmath.log(mpmath.tan(t) + tan_phi), lo, hi, ctx, max_levels=max_levels)
        numeric = res.value if t1 < t2 else -res.value
        closed = antiderivative_35(phi, t2, ctx) - antiderivative_35(phi, t1, ctx)
        return abs(numeric - closed)


def integrate_piecewise(
    f: Callable[[mpf], mpf],
    a,
    b,
    breakpoints: Sequence,
    ctx: PrecisionContext,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> mpf:
    """Signed integral from ``a`` to ``b``, split at the given points."""
    with ctx.workdps():
        a, b = to_mpf(a), to_mpf(b)
        sign = 1
        if a > b:
            a, b, sign = b, a, -1
        inner = sorted({to_mpf(p) for p in breakpoints if a < to_mpf(p) < b})
        edges = [a, *inner, b]
        parts = [
            tanh_sinh(f, lo, hi, ctx, max_levels=max_levels).value
            for lo, hi in zip(edges, edges[1:])
        ]
        return sign * mpmath.fsum(parts)


def coffey_logsin_integral(kappa, alpha, x, ctx: PrecisionContext, max_levels: int = DEFAULT_MAX_LEVELS) -> mpf:
    """kappa * int_0^x log(sin(kappa t) + sin(alpha)) dt, for kappa > 0, |x| <= |alpha|."""
    with ctx.workdps():
        kappa, alpha, x = to_mpf(kappa), to_mpf(alpha), to_mpf(x)
        if kappa <= 0 or abs(x) > abs(alpha):
            raise DomainError("need kappa > 0 and |x| <= |alpha|")

        def f(t):
            with mpmath.extradps(EXTRA_DIGITS):
                u = kappa * t
                # sin u + sin alpha as a product, free of cancellation
                value = mpmath.log(2 * mpmath.sin((u + alpha) / 2) * mpmath.cos((u - alpha) / 2))
            return +value

        return kappa * integrate_piecewise(f, 0, x, (), ctx, max_levels)


def coffey_logcos_integral(kappa, alpha, x, ctx: PrecisionContext, max_levels: int = DEFAULT_MAX_LEVELS) -> mpf:
    """-kappa * int_0^x log|cos(alpha) - cos(kappa t)| dt, split at the zeros of the argument."""
    with ctx.workdps():
        kappa, alpha, x = to_mpf(kappa), to_mpf(alpha), to_mpf(x)
        if kappa <= 0:
            raise DomainError("need kappa > 0")

        def f(t):
            with mpmath.extradps(EXTRA_DIGITS):
                u = kappa * t
                prod = 2 * mpmath.sin((u + alpha) / 2) * mpmath.sin((u - alpha) / 2)
                value = mpmath.log(abs(prod))
            return +value

        two_pi = 2 * mpmath.pi
        lo, hi = sorted((mpf(0), kappa * x))
        points = []
        j = int(mpmath.floor((lo - abs(alpha)) / two_pi)) - 1
        while j * two_pi - abs(alpha) <= hi:
            for root in (j * two_pi + alpha, j * two_pi - alpha):
                if lo < root < hi:
                    points.append(root / kappa)
            j += 1
        return -kappa * integrate_piecewise(f, 0, x, points, ctx, max_levels)
