"""The Clausen function Cl2 and its functional equations.

Two independent evaluation routes are provided:

* :func:`cl2` reduces the argument to ``[0, pi]`` and sums the expansion

      Cl2(t) = t - t*log(t) + sum_{k>=1} |B_2k| / (2k * (2k+1)!) * t**(2k+1),

  whose terms shrink at least like ``(t / 2pi)**2 <= 1/4`` per step, so the
  tail after the last term is bounded by a geometric series.
* :func:`cl2_via_integral` integrates ``-log|2 sin(t/2)|`` from 0 with
  tanh-sinh quadrature; the log singularity sits at the endpoint t = 0.

:func:`cl2_series_partial` is the defining Fourier series, truncated; it is
only good as a slow oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mpf

from .numeric import DomainError, PrecisionContext, bernoulli_even, to_mpf
from .tanhsinh import DEFAULT_MAX_LEVELS, Integrand, tanh_sinh

__all__ = [
    "EvalResult",
    "cl2",
    "cl2_value",
    "cl2_series_partial",
    "cl2_via_integral",
    "reduce_angle",
    "multiplication_rhs",
    "character_sine_sum",
]

METHODS = ("series", "integral", "functional")


@dataclass(frozen=True)
class EvalResult:
    value: mpf
    error_bound: mpf
    method: str


@lru_cache(maxsize=64)
def _series_coefficients(prec: int, count: int) -> tuple[mpf, ...]:
    """|B_2k| / (2k (2k+1)!) for k = 1..count, rounded at ``prec`` bits."""
    coeffs = []
    with mpmath.workprec(prec):
        factorial = 6  # (2k+1)! for k = 1
        for k in range(1, count + 1):
            if k > 1:
                factorial *= (2 * k) * (2 * k + 1)
            b = abs(bernoulli_even(k))
            coeffs.append(mpf(b.numerator) / (b.denominator * 2 * k * factorial))
    return tuple(coeffs)


def _coefficient_count(prec: int) -> int:
    # (pi / 2pi)**2 = 1/4 per term on the reduced range
    return int(prec / 2) + 8


def reduce_angle(theta) -> mpf:
    """Reduce ``theta`` modulo 2pi into (-pi, pi] at the current precision.

    Extra bits proportional to the magnitude of ``theta`` are used so that
    large arguments keep full relative accuracy after reduction.
    """
    theta = to_mpf(theta)
    if not theta:
        return theta
    extra = max(0, int(mpmath.mag(theta))) + 10
    with mpmath.extraprec(extra):
        two_pi = 2 * mpmath.pi
        r = theta - two_pi * mpmath.nint(theta / two_pi)
        if r <= -mpmath.pi:
            r += two_pi
        elif r > mpmath.pi:
            r -= two_pi
    return +r


def _cl2_reduced(r: mpf) -> tuple[mpf, mpf]:
    """Cl2 on 0 < r <= pi, with a bound on the neglected tail."""
    prec = mpmath.mp.prec
    eps = mpf(2) ** (-prec - 4)
    r2 = r * r
    ratio = r2 / (4 * mpmath.pi ** 2)
    total = [r - r * mpmath.log(r)]
    power = r
    term = mpf(0)
    count = _coefficient_count(prec)
    coeffs = _series_coefficients(prec, count)
    for k in range(count):
        power *= r2
        term = coeffs[k] * power
        total.append(term)
        if term < eps:
            break
    else:
        raise ArithmeticError("Clausen series coefficient table exhausted")
    tail = term * ratio / (1 - ratio)
    rounding = mpf(2) ** (-prec) * (len(total) + 4)
    return mpmath.fsum(total), tail + rounding


def cl2(theta, ctx: PrecisionContext) -> EvalResult:
    """Clausen function Cl2(theta) to ``ctx.digits`` digits.

    Any finite real ``theta`` is accepted; reduction modulo 2pi and oddness
    are applied internally.  Multiples of pi return an exact zero tagged
    ``"functional"``.
    """
    with ctx.workdps():
        r = reduce_angle(theta)
        if r == 0 or r == mpmath.pi:
            return EvalResult(mpf(0), mpf(0), "functional")
        sign = 1
        if r < 0:
            sign, r = -1, -r
        value, bound = _cl2_reduced(r)
        return EvalResult(sign * value, bound, "series")


def cl2_value(theta, ctx: PrecisionContext) -> mpf:
    """Shorthand for ``cl2(theta, ctx).value``."""
    return cl2(theta, ctx).value


def cl2_series_partial(theta, n_terms: int, ctx: PrecisionContext | None = None):
    """Partial sum sum_{m=1}^{n_terms} sin(m theta) / m**2, literally.

    Without ``ctx`` the sum is done in double precision (fast enough for a
    million terms); with ``ctx`` it is done in mpmath at working precision.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    if ctx is None:
        t = float(theta)
        return math.fsum(math.sin(m * t) / (m * m) for m in range(1, n_terms + 1))
    with ctx.workdps():
        t = to_mpf(theta)
        return mpmath.fsum(mpmath.sin(m * t) / (m * m) for m in range(1, n_terms + 1))


def _log_two_sine(t):
    return mpmath.log(abs(2 * mpmath.sin(t / 2)))


def cl2_via_integral(theta, ctx: PrecisionContext, max_levels: int = DEFAULT_MAX_LEVELS) -> EvalResult:
    """Cl2(theta) = -int_0^theta log|2 sin(t/2)| dt, by tanh-sinh quadrature.

    Requires ``|theta| <= 2pi`` so that the only singular points (t = 0 and
    t = +-2pi) are endpoints.  Quadrature failures propagate.
    """
    with ctx.workdps():
        t = to_mpf(theta)
        two_pi = 2 * mpmath.pi
        if abs(t) > two_pi:
            raise DomainError("cl2_via_integral needs |theta| <= 2pi; reduce first")
        if t == 0:
            return EvalResult(mpf(0), mpf(0), "integral")
        integrand = Integrand(_log_two_sine, singularities=(0, two_pi, -two_pi))
        if t > 0:
            res = tanh_sinh(integrand, 0, t, ctx, max_levels=max_levels)
            value = -res.value
        else:
            res = tanh_sinh(integrand, t, 0, ctx, max_levels=max_levels)
            value = res.value
        return EvalResult(value, res.error_estimate, "integral")


def multiplication_rhs(theta, m: int, ctx: PrecisionContext) -> mpf:
    """m * sum_{l=0}^{m-1} Cl2(theta + 2 pi l / m), which equals Cl2(m theta)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    with ctx.workdps():
        t = to_mpf(theta)
        two_pi = 2 * mpmath.pi
        parts = [cl2_value(t + two_pi * l / m, ctx) for l in range(m)]
        return m * mpmath.fsum(parts)


def character_sine_sum(n: int, m: int, theta, ctx: PrecisionContext | None = None) -> mpf:
    """sum_{l=0}^{m-1} sin(n (theta + 2 pi l / m)).

    Vanishes unless m divides n, in which case it is m sin(n theta).
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    if ctx is None:
        t = to_mpf(theta)
        two_pi = 2 * mpmath.pi
        return mpmath.fsum(mpmath.sin(n * (t + two_pi * l / m)) for l in range(m))
    with ctx.workdps():
        return character_sine_sum(n, m, theta)
