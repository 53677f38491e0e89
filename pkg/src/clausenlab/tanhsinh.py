"""Double-exponential (tanh-sinh) quadrature at arbitrary precision.

The substitution x = tanh((pi/2) sinh t) maps [-1, 1] onto the real line and
makes the transformed integrand decay doubly exponentially, so the plain
trapezoidal rule in t converges very fast, also for integrands with
integrable (e.g. logarithmic) singularities at the endpoints.  Interior
singularities have to be split off by the caller.

Level ``k`` uses step ``h = 2**-k``; each level only evaluates the odd
multiples of ``h`` and reuses all earlier function values.  Nodes are kept as
distances to the nearest endpoint, so points very close to a singular
endpoint are not destroyed by cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import mpmath
from mpmath import mpf

from .numeric import PrecisionContext, to_mpf

__all__ = [
    "Integrand",
    "QuadratureResult",
    "QuadratureError",
    "IntegrandEvaluationError",
    "tanh_sinh",
    "DEFAULT_MAX_LEVELS",
]

DEFAULT_MAX_LEVELS = 14
MIN_LEVELS = 2


@dataclass(frozen=True)
class Integrand:
    """A real function together with the points where it is singular."""

    func: Callable[[mpf], mpf]
    singularities: Sequence = ()

    def __call__(self, x):
        return self.func(x)


@dataclass(frozen=True)
class QuadratureResult:
    value: mpf
    error_estimate: mpf
    levels_used: int
    nodes_evaluated: int
    converged: bool = True
    # |S_k - S_{k-1}| for k = 1..levels_used
    error_history: tuple = field(default=(), compare=False)


class QuadratureError(ArithmeticError):
    """Raised when the level sequence does not converge.

    ``result`` carries the best estimate reached.
    """

    def __init__(self, message: str, result: QuadratureResult):
        super().__init__(message)
        self.result = result


class IntegrandEvaluationError(ArithmeticError):
    """The integrand returned NaN or infinity at a quadrature node."""


@lru_cache(maxsize=256)
def _level_nodes(prec: int, level: int) -> tuple[tuple[mpf, mpf], ...]:
    """(weight, complement) pairs for the new nodes t > 0 of a level.

    ``complement`` is 1 - tanh((pi/2) sinh t), the distance of the node to
    the endpoint of [-1, 1].  Nodes stop where the weight falls below
    2**-prec.  Level 0 also holds t = 0, stored with complement 1.
    """
    with mpmath.workprec(prec):
        half_pi = mpmath.pi / 2
        cutoff = mpf(2) ** (-prec)
        nodes = []
        if level == 0:
            nodes.append((+half_pi, mpf(1)))
            step, j = mpf(1), 1
            stride = 1
        else:
            step = mpf(2) ** (-level)
            j, stride = 1, 2
        while True:
            t = j * step
            s = half_pi * mpmath.sinh(t)
            weight = half_pi * mpmath.cosh(t) / mpmath.cosh(s) ** 2
            if weight < cutoff:
                break
            complement = 2 / (mpmath.exp(2 * s) + 1)
            nodes.append((weight, complement))
            j += stride
    return tuple(nodes)


def _check(value, x):
    if not mpmath.isfinite(value):
        raise IntegrandEvaluationError(f"integrand not finite at x = {mpmath.nstr(x, 20)}")
    return value


def _level_sum(f, a, b, half_width, prec, level):
    """Sum of weight * f over the new nodes of ``level``, plus node count."""
    terms = []
    count = 0
    for weight, complement in _level_nodes(prec, level):
        offset = half_width * complement
        scaled = weight * half_width
        if complement == 1:
            x = a + offset
            terms.append(scaled * _check(f(x), x))
            count += 1
            continue
        left = a + offset
        right = b - offset
        # nodes that round onto an endpoint carry negligible weight; skip them
        if left != a and left != b:
            terms.append(scaled * _check(f(left), left))
            count += 1
        if right != b and right != a:
            terms.append(scaled * _check(f(right), right))
            count += 1
    return mpmath.fsum(terms), count


def tanh_sinh(
    f: Callable[[mpf], mpf],
    a,
    b,
    ctx: PrecisionContext,
    max_levels: int = DEFAULT_MAX_LEVELS,
    tolerance=None,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, b]`` by tanh-sinh quadrature.

    Parameters
    ----------
    f : callable or Integrand
        Integrand; may be singular at ``a`` or ``b`` only.  If it is an
        :class:`Integrand`, its declared singularities are checked to lie
        at the endpoints.
    a, b : number
        Integration limits, ``a <= b``.
    ctx : PrecisionContext
        Arithmetic runs at ``ctx.working_digits``.
    max_levels : int
        Last level tried (step ``2**-max_levels``).
    tolerance : number, optional
        Absolute convergence target, ``ctx.tolerance`` by default.

    Returns
    -------
    QuadratureResult

    Raises
    ------
    QuadratureError
        If two successive levels never agree to ``tolerance``.
    IntegrandEvaluationError
        If the integrand returns NaN or an infinity at a node.
    """
    with ctx.workdps():
        a = to_mpf(a)
        b = to_mpf(b)
        if a > b:
            raise ValueError("tanh_sinh requires a <= b")
        tol = ctx.tolerance if tolerance is None else to_mpf(tolerance)
        for point in getattr(f, "singularities", ()):
            point = to_mpf(point)
            if a < point < b:
                raise ValueError(
                    f"interior singularity at {mpmath.nstr(point, 15)}; split the interval there"
                )
        if a == b:
            return QuadratureResult(mpf(0), mpf(0), 1, 0)

        prec = mpmath.mp.prec
        half_width = (b - a) / 2
        level_sums = []
        nodes = 0
        history = []
        previous = None
        estimate = mpf(0)
        error = mpf("inf")
        for level in range(max_levels + 1):
            partial, count = _level_sum(f, a, b, half_width, prec, level)
            level_sums.append(partial)
            nodes += count
            estimate = mpmath.fsum(level_sums) * mpf(2) ** (-level)
            if previous is not None:
                error = abs(estimate - previous)
                history.append(error)
                if level >= MIN_LEVELS and error <= tol:
                    return QuadratureResult(
                        +estimate, error, level, nodes, True, tuple(history)
                    )
            previous = estimate
        result = QuadratureResult(+estimate, error, max_levels, nodes, False, tuple(history))
    raise QuadratureError(
        f"tanh-sinh did not converge in {max_levels} levels "
        f"(last difference {mpmath.nstr(error, 5)})",
        result,
    )
