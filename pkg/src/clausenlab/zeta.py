"""Hurwitz zeta, the Kronecker symbol and Dirichlet L-series.

L_{-7}(2) is produced three ways that share as little code as possible:

* :func:`l_minus7_direct`   -- period-7 blocks of the character-weighted
  Dirichlet series, tail by Euler-Maclaurin on the block function;
* :func:`dirichlet_l`       -- finite combination of Hurwitz zeta values;
* :func:`l_minus7_clausen`  -- three Clausen values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mpf

from .clausen import cl2_value
from .numeric import DomainError, PrecisionContext, bernoulli_even, to_mpf

__all__ = [
    "KroneckerCharacter",
    "LSeriesValue",
    "kronecker",
    "character_table",
    "hurwitz_zeta",
    "dirichlet_l",
    "dirichlet_l_direct",
    "dirichlet_l_clausen",
    "l_minus7_direct",
    "l_minus7_partial",
    "l_minus7_clausen",
    "character_fourier_check",
]

REPRESENTATIONS = ("direct_series", "hurwitz_sum", "clausen_form")

# (2/n) for odd n, indexed by n mod 8
_TWO_OVER = {1: 1, 3: -1, 5: -1, 7: 1}


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n) for arbitrary integers, d on top.

    Binary algorithm with quadratic reciprocity; 2-adic factors of ``n`` use
    (d/2) = (-1)**((d*d - 1)/8) for odd d, and negative ``n`` contributes the
    sign of ``d``.
    """
    a, b = int(d), int(n)
    if b == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and b % 2 == 0:
        return 0
    v = 0
    while b % 2 == 0:
        v += 1
        b //= 2
    k = 1 if v % 2 == 0 else _TWO_OVER[a % 8]
    if b < 0:
        b = -b
        if a < 0:
            k = -k
    while True:
        if a == 0:
            return k if b == 1 else 0
        v = 0
        while a % 2 == 0:
            v += 1
            a //= 2
        if v % 2:
            k *= _TWO_OVER[b % 8]
        if a % 4 == 3 and b % 4 == 3:
            k = -k
        r = abs(a)
        a = b % r
        b = r


@dataclass(frozen=True)
class KroneckerCharacter:
    """n -> (d/n) stored over one period; ``values[i]`` is chi(i + 1)."""

    d: int
    period: int
    values: tuple[int, ...]

    def __call__(self, n: int) -> int:
        r = n % self.period
        return self.values[(r or self.period) - 1]


@lru_cache(maxsize=None)
def character_table(d: int) -> KroneckerCharacter:
    if d == 0:
        raise DomainError("modulus d must be nonzero")
    period = abs(d)
    return KroneckerCharacter(d, period, tuple(kronecker(d, n) for n in range(1, period + 1)))


@dataclass(frozen=True)
class LSeriesValue:
    d: int
    s: mpf
    value: mpf
    representation: str
    error_estimate: mpf = mpf(0)


def _check_s(s) -> mpf:
    if isinstance(s, complex) or isinstance(s, mpmath.mpc):
        raise DomainError("only real s is supported")
    s = to_mpf(s)
    if s <= 1:
        raise DomainError(f"s must be > 1, got {mpmath.nstr(s, 10)}")
    return s


def _em_cutoff(working_digits: int) -> int:
    # Euler-Maclaurin terms behave like (2k / (2 pi N))**2k; N ~ D/2 leaves a
    # wide margin before the asymptotic series turns around.
    return working_digits // 2 + 10


def _hurwitz_em(s: mpf, a: mpf, working_digits: int) -> tuple[mpf, mpf]:
    n = _em_cutoff(working_digits)
    eps = mpf(10) ** (-working_digits - 2)
    head = mpmath.fsum((m + a) ** (-s) for m in range(n))
    x = n + a
    x_pow = x ** (1 - s)  # (N+a)^(1-s)
    inv_x2 = 1 / (x * x)
    parts = [head, x_pow / (s - 1), x ** (-s) / 2]
    rising = s  # (s)_{2k-1}, starting at k = 1
    factorial = mpf(2)  # (2k)!
    power = x_pow * inv_x2  # (N+a)^(-s-1)
    previous = None
    k = 1
    while True:
        b = bernoulli_even(k)
        term = mpf(b.numerator) / b.denominator / factorial * rising * power
        parts.append(term)
        size = abs(term)
        if size < eps * abs(head):
            break
        if previous is not None and size > previous:
            raise ArithmeticError("Euler-Maclaurin terms stopped decreasing")
        previous = size
        k += 1
        rising *= (s + 2 * k - 3) * (s + 2 * k - 2)
        factorial *= (2 * k - 1) * (2 * k)
        power *= inv_x2
    return mpmath.fsum(parts), size


def hurwitz_zeta(s, a, ctx: PrecisionContext) -> mpf:
    """zeta(s, a) = sum_{m>=0} (m + a)**-s for real s > 1 and a > 0.

    Direct summation of the first N terms followed by the Euler-Maclaurin
    correction; the last correction term is monitored until it is below the
    working precision.
    """
    with ctx.workdps():
        s = _check_s(s)
        a = to_mpf(a)
        if a <= 0:
            raise DomainError("a must be > 0")
        value, _ = _hurwitz_em(s, a, ctx.working_digits)
        return value


def dirichlet_l(d: int, s, ctx: PrecisionContext) -> LSeriesValue:
    """L_d(s) = |d|**-s * sum_{l=1}^{|d|-1} (d/l) zeta(s, l/|d|)."""
    table = character_table(d)
    q = table.period
    with ctx.workdps():
        s = _check_s(s)
        parts = []
        error = mpf(0)
        for l in range(1, q):
            chi = table(l)
            if chi:
                value, err = _hurwitz_em(s, mpf(l) / q, ctx.working_digits)
                parts.append(chi * value)
                error += err
        scale = mpf(q) ** (-s)
        return LSeriesValue(d, s, scale * mpmath.fsum(parts), "hurwitz_sum", scale * error)


def _block(values, period, m, s):
    base = period * m
    return mpmath.fsum(chi * (base + r) ** (-s) for r, chi in enumerate(values, 1) if chi)


def dirichlet_l_direct(d: int, s, ctx: PrecisionContext) -> LSeriesValue:
    """Sum of the character-weighted series in blocks of one period.

    With g(x) = sum_r chi(r) (q x + r)**-s the blocks are g(0), g(1), ...;
    after N blocks the remainder is estimated by Euler-Maclaurin applied to
    g, whose derivatives are explicit.
    """
    table = character_table(d)
    q = table.period
    with ctx.workdps():
        s = _check_s(s)
        wd = ctx.working_digits
        n = _em_cutoff(wd)
        eps = mpf(10) ** (-wd - 2)
        active = [(r, chi) for r, chi in enumerate(table.values, 1) if chi]
        head = mpmath.fsum(_block(table.values, q, m, s) for m in range(n))
        bases = [(chi, mpf(q * n + r)) for r, chi in active]
        integral = mpmath.fsum(chi * x ** (1 - s) for chi, x in bases) / (q * (s - 1))
        half = mpmath.fsum(chi * x ** (-s) for chi, x in bases) / 2
        parts = [head, integral, half]
        rising = s
        factorial = mpf(2)
        q_pow = mpf(q)
        k = 1
        size = mpf(0)
        while True:
            b = bernoulli_even(k)
            deriv = mpmath.fsum(chi * x ** (-s - 2 * k + 1) for chi, x in bases)
            term = mpf(b.numerator) / b.denominator / factorial * rising * q_pow * deriv
            parts.append(term)
            size = abs(term)
            if size < eps:
                break
            if k > 2 * wd:
                raise ArithmeticError("Euler-Maclaurin tail did not reach working precision")
            k += 1
            rising *= (s + 2 * k - 3) * (s + 2 * k - 2)
            factorial *= (2 * k - 1) * (2 * k)
            q_pow *= q * q
        return LSeriesValue(d, s, mpmath.fsum(parts), "direct_series", size)


def l_minus7_direct(s, ctx: PrecisionContext) -> LSeriesValue:
    """L_{-7}(s) from sum_m [(7m+1)^-s + (7m+2)^-s - (7m+3)^-s + (7m+4)^-s - (7m+5)^-s - (7m+6)^-s]."""
    return dirichlet_l_direct(-7, s, ctx)


def l_minus7_partial(n_blocks: int, s, ctx: PrecisionContext) -> mpf:
    """The first ``n_blocks`` seven-term blocks, no tail."""
    table = character_table(-7)
    with ctx.workdps():
        s = to_mpf(s)
        return mpmath.fsum(_block(table.values, 7, m, s) for m in range(n_blocks))


def l_minus7_clausen(ctx: PrecisionContext) -> LSeriesValue:
    """(2/sqrt 7) [Cl2(2pi/7) + Cl2(4pi/7) - Cl2(6pi/7)]."""
    with ctx.workdps():
        pi = mpmath.pi
        bracket = (
            cl2_value(2 * pi / 7, ctx)
            + cl2_value(4 * pi / 7, ctx)
            - cl2_value(6 * pi / 7, ctx)
        )
        return LSeriesValue(-7, mpf(2), 2 / mpmath.sqrt(7) * bracket, "clausen_form")


def dirichlet_l_clausen(d: int, ctx: PrecisionContext) -> LSeriesValue:
    """L_d(2) = |d|**-1/2 * sum_l (d/l) Cl2(2 pi l / |d|) for d < 0."""
    if d >= 0:
        raise DomainError("the Clausen form needs d < 0")
    table = character_table(d)
    q = table.period
    with ctx.workdps():
        parts = [
            chi * cl2_value(2 * mpmath.pi * l / q, ctx)
            for l, chi in enumerate(table.values, 1)
            if chi
        ]
        return LSeriesValue(d, mpf(2), mpmath.fsum(parts) / mpmath.sqrt(q), "clausen_form")


def character_fourier_check(d: int, n: int, ctx: PrecisionContext) -> mpf:
    """(1/sqrt|d|) sum_{l=1}^{|d|-1} (d/l) sin(2 pi l n / |d|); equals (d/n)."""
    if d >= 0:
        raise DomainError("the sine expansion needs d < 0")
    if n < 1:
        raise DomainError("n must be >= 1")
    table = character_table(d)
    q = table.period
    with ctx.workdps():
        two_pi = 2 * mpmath.pi
        total = mpmath.fsum(
            table(l) * mpmath.sin(two_pi * l * n / q) for l in range(1, q) if table(l)
        )
        return total / mpmath.sqrt(q)
