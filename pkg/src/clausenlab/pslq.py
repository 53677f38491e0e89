"""PSLQ integer relation detection (Ferguson-Bailey, one level).

Given reals v_1..v_n, look for integers c (not all zero) with
sum c_i v_i = 0 to the working precision.  The reduced lattice also yields a
lower bound on the Euclidean norm of any relation, so an unsuccessful run
still excludes all relations below that norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Sequence

import mpmath
from mpmath import mpf

from .numeric import ConfigurationError, PrecisionContext, to_mpf

__all__ = [
    "IntegerRelation",
    "PSLQSearch",
    "PrecisionExhaustedError",
    "pslq",
    "pslq_search",
]

DIGITS_PER_VALUE = 20
DETECTION_SLACK = 15
# a candidate with max |c| = M is only meaningful if M**(n-1) sits this many
# digits below the detection tolerance; random reals admit residuals ~ M**-(n-1)
SIGNIFICANCE_DIGITS = 10


class PrecisionExhaustedError(ArithmeticError):
    """The working precision ran out before a relation could be found or excluded."""


@dataclass(frozen=True)
class IntegerRelation:
    coefficients: tuple[int, ...]
    residual: mpf
    norm_bound: int


@dataclass(frozen=True)
class PSLQSearch:
    """Outcome of a search.

    ``status`` is ``"found"``, ``"excluded"`` (no relation with max |c_i| up
    to ``norm_bound``) or ``"budget"`` (iteration limit hit).  Any relation
    has Euclidean norm at least ``norm_lower_bound``.
    """

    relation: IntegerRelation | None
    status: str
    iterations: int
    norm_lower_bound: mpf


def _normalize(coeffs: Sequence[int]) -> tuple[int, ...]:
    g = reduce(gcd, (abs(c) for c in coeffs))
    coeffs = [c // g for c in coeffs]
    lead = next(c for c in coeffs if c)
    if lead < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def _residual(values, coeffs) -> mpf:
    with mpmath.extradps(20):
        return abs(mpmath.fsum(c * v for c, v in zip(coeffs, values) if c))


def pslq_search(
    values: Sequence,
    ctx: PrecisionContext,
    norm_bound: int = 1000,
    max_iterations: int | None = None,
) -> PSLQSearch:
    """Search for an integer relation among ``values``.

    Raises
    ------
    ConfigurationError
        Fewer than two values, or ``ctx.digits < 20 * len(values)``.
    PrecisionExhaustedError
        The candidate relation fails re-verification, or the integer matrix
        entries grew beyond what the working precision can resolve.
    """
    n = len(values)
    if n < 2:
        raise ConfigurationError("pslq needs at least two values")
    if ctx.digits < DIGITS_PER_VALUE * n:
        raise ConfigurationError(
            f"pslq on {n} values needs at least {DIGITS_PER_VALUE * n} digits"
        )
    if norm_bound < 1:
        raise ConfigurationError("norm_bound must be positive")
    max_iterations = max_iterations or 200 * n * n + 100 * ctx.digits

    with ctx.workdps():
        raw = [to_mpf(v) for v in values]
        tol = mpf(10) ** (-(ctx.digits - DETECTION_SLACK))
        # entries this large cannot be resolved at the working precision
        limit_digits = (ctx.digits - DETECTION_SLACK - SIGNIFICANCE_DIGITS) / (n - 1)
        coeff_limit = mpf(10) ** limit_digits

        def accept(coeffs, iterations, lower):
            coeffs = _normalize(coeffs)
            residual = _residual(raw, coeffs)
            if residual > tol:
                raise PrecisionExhaustedError(
                    f"candidate relation {coeffs} has residual {mpmath.nstr(residual, 5)}"
                )
            if max(abs(c) for c in coeffs) > coeff_limit:
                raise PrecisionExhaustedError(
                    f"candidate relation with max |c| = {max(abs(c) for c in coeffs)} is too"
                    " large to be significant at this precision"
                )
            if max(abs(c) for c in coeffs) > norm_bound:
                return PSLQSearch(None, "excluded", iterations, lower)
            return PSLQSearch(IntegerRelation(coeffs, residual, norm_bound), "found", iterations, lower)

        for i, v in enumerate(raw):
            if v == 0:
                coeffs = [0] * n
                coeffs[i] = 1
                return accept(coeffs, 0, mpf(1))

        scale = max(abs(v) for v in raw)
        x = [v / scale for v in raw]
        gamma = mpmath.sqrt(mpf(4) / 3)
        s = [mpmath.sqrt(mpmath.fsum(xj * xj for xj in x[k:])) for k in range(n)]
        y = [xj / s[0] for xj in x]
        s = [sk / s[0] for sk in s]
        H = [[mpf(0)] * (n - 1) for _ in range(n)]
        for i in range(n):
            for j in range(min(i + 1, n - 1)):
                if i == j:
                    H[i][j] = s[i + 1] / s[i]
                else:
                    H[i][j] = -y[i] * y[j] / (s[j] * s[j + 1])
        B = [[int(i == j) for j in range(n)] for i in range(n)]

        def reduce_row(i, j_start):
            for j in range(j_start, -1, -1):
                if not H[j][j]:
                    continue
                t = int(mpmath.nint(H[i][j] / H[j][j]))
                if t == 0:
                    continue
                y[j] += t * y[i]
                for k in range(j + 1):
                    H[i][k] -= t * H[j][k]
                for k in range(n):
                    B[k][j] += t * B[k][i]

        for i in range(1, n):
            reduce_row(i, i - 1)

        lower = mpf(0)
        for iteration in range(max_iterations + 1):
            diag = max(abs(H[j][j]) for j in range(n - 1))
            if diag:
                lower = 1 / diag
            j_min = min(range(n), key=lambda j: abs(y[j]))
            if abs(y[j_min]) < tol:
                return accept([B[k][j_min] for k in range(n)], iteration, lower)
            if diag == 0:
                raise PrecisionExhaustedError("lattice basis degenerated")
            if lower > norm_bound:
                return PSLQSearch(None, "excluded", iteration, lower)
            if max(abs(b) for row in B for b in row) > coeff_limit:
                raise PrecisionExhaustedError(
                    f"basis entries exceed 10^{int(limit_digits)}"
                    " before a relation was found or excluded"
                )
            if iteration == max_iterations:
                break

            m = max(range(n - 1), key=lambda i: gamma ** (i + 1) * abs(H[i][i]))
            y[m], y[m + 1] = y[m + 1], y[m]
            H[m], H[m + 1] = H[m + 1], H[m]
            for row in B:
                row[m], row[m + 1] = row[m + 1], row[m]
            if m < n - 2:
                t0 = mpmath.sqrt(H[m][m] ** 2 + H[m][m + 1] ** 2)
                t1 = H[m][m] / t0
                t2 = H[m][m + 1] / t0
                for i in range(m, n):
                    t3, t4 = H[i][m], H[i][m + 1]
                    H[i][m] = t1 * t3 + t2 * t4
                    H[i][m + 1] = -t2 * t3 + t1 * t4
            for i in range(m + 1, n):
                reduce_row(i, min(i - 1, m + 1))

        return PSLQSearch(None, "budget", max_iterations, lower)


def pslq(values: Sequence, ctx: PrecisionContext, norm_bound: int = 1000) -> IntegerRelation | None:
    """The relation found by :func:`pslq_search`, or ``None``."""
    return pslq_search(values, ctx, norm_bound).relation
