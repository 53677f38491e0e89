"""Precision contexts, the constants the identities are built from, and
exact Bernoulli numbers.

All big-float arithmetic goes through :mod:`mpmath`.  A
:class:`PrecisionContext` names the number of decimal digits a caller wants
and carries the guard digits used internally; every evaluation routine in the
package enters ``ctx.workdps()`` before touching an ``mpf``.

mpmath keeps its working precision in a process-global context, so parallel
work is done with processes (see :mod:`clausenlab.cli`), never threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

__all__ = [
    "MIN_DIGITS",
    "DEFAULT_GUARD",
    "ConfigurationError",
    "DomainError",
    "PrecisionContext",
    "PaperConstants",
    "make_context",
    "constants",
    "bernoulli",
    "bernoulli_even",
    "to_mpf",
]

MIN_DIGITS = 16
DEFAULT_GUARD = 12


class ConfigurationError(ValueError):
    """Invalid precision or run configuration."""


class DomainError(ValueError):
    """Argument outside the domain of a function."""


@dataclass(frozen=True)
class PrecisionContext:
    """Requested decimal digits plus internal guard digits.

    Results are meant to be trusted to ``digits``; arithmetic runs at
    ``digits + guard``.
    """

    digits: int
    guard: int = DEFAULT_GUARD

    def __post_init__(self) -> None:
        if not isinstance(self.digits, int) or self.digits < MIN_DIGITS:
            raise ConfigurationError(
                f"digits must be an integer >= {MIN_DIGITS}, got {self.digits!r}"
            )
        if not isinstance(self.guard, int) or self.guard < 10:
            raise ConfigurationError(f"guard must be an integer >= 10, got {self.guard!r}")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard

    @property
    def tolerance(self) -> mpf:
        with self.workdps():
            return mpf(10) ** (-self.digits)

    def workdps(self, extra: int = 0):
        """Context manager setting mpmath to the working precision."""
        return mpmath.workdps(self.working_digits + extra)


def make_context(digits: int, guard: int = DEFAULT_GUARD) -> PrecisionContext:
    """Build a :class:`PrecisionContext`; digits below 16 are rejected."""
    return PrecisionContext(digits=digits, guard=guard)


def to_mpf(x) -> mpf:
    """Convert ints, Fractions, strings and floats to ``mpf`` at the current precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    value = mpf(x)
    if not mpmath.isfinite(value):
        raise DomainError(f"non-finite argument: {x!r}")
    return value


@dataclass(frozen=True)
class PaperConstants:
    pi: mpf
    sqrt7: mpf
    phi7: mpf
    theta_plus: mpf
    omega_plus: mpf
    # -arctan((2*sqrt(3) + sqrt(7))/5), the other expression for omega_plus
    omega_plus_alt: mpf


@lru_cache(maxsize=None)
def constants(ctx: PrecisionContext) -> PaperConstants:
    """pi, sqrt(7), arctan(sqrt 7), arctan(sqrt(7)/3) and omega_plus at ``ctx``.

    Everything is computed from mpmath elementary functions, never from
    decimal literals.
    """
    with ctx.workdps():
        pi = +mpmath.pi
        sqrt7 = mpmath.sqrt(7)
        phi7 = mpmath.atan(sqrt7)
        theta_plus = mpmath.atan(sqrt7 / 3)
        omega_plus = phi7 - 2 * pi / 3
        omega_plus_alt = -mpmath.atan((2 * mpmath.sqrt(3) + sqrt7) / 5)
    return PaperConstants(pi, sqrt7, phi7, theta_plus, omega_plus, omega_plus_alt)


@lru_cache(maxsize=None)
def _tangent_numbers(n: int) -> tuple[int, ...]:
    """Tangent numbers T_1..T_n (index 0 unused), integer-only recurrence."""
    t = [0] * (n + 1)
    if n >= 1:
        t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return tuple(t)


def _tangent_table(k: int) -> tuple[int, ...]:
    # round up to a power of two so the cache holds few distinct tables
    size = 1 << max(4, math.ceil(math.log2(max(k, 1))))
    return _tangent_numbers(size)


@lru_cache(maxsize=None)
def bernoulli_even(k: int) -> Fraction:
    """B_{2k} as an exact rational (k >= 1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    tk = _tangent_table(k)[k]
    four_k = 1 << (2 * k)
    value = Fraction(2 * k * tk, four_k * (four_k - 1))
    return value if k % 2 == 1 else -value


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    return bernoulli_even(n // 2)
