"""Reference computations that share no code with the package.

Everything here is either exact integer/rational arithmetic or a slow,
textbook method whose correctness is easy to see.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import mpmath
from mpmath import mpf

# Frozen decimal strings; convert inside a working-precision block.

# L_{-7}(2), from mpmath's own Hurwitz zeta at 80 digits:
#   (1/49) sum_{l=1}^{6} (-7/l) zeta(2, l/7)
L_MINUS7_2 = "1.151925470544491047101692397320549964797821404686566914083968636166124"
# L_{-3}(2) = (1/9) [zeta(2, 1/3) - zeta(2, 2/3)]
L_MINUS3_2 = "0.7813024128964862968671874296240923563651343365452854202221"
CATALAN_40 = "0.9159655941772190150546035149323841107741"
CL2_PI_OVER_3_40 = "1.014941606409653625021202554274520285941"
PHI7_16 = "1.209429202888189"


def machin_pi(digits: int) -> Fraction:
    """pi = 16 atan(1/5) - 4 atan(1/239) in fixed-point integer arithmetic."""
    unity = 10 ** (digits + 10)

    def arctan_inv(x: int) -> int:
        total = term = unity // x
        x2 = x * x
        n, sign = 1, 1
        while term:
            term //= x2
            n += 2
            sign = -sign
            total += sign * (term // n)
        return total

    return Fraction(16 * arctan_inv(5) - 4 * arctan_inv(239), unity)


def bernoulli_by_recurrence(n_max: int) -> list[Fraction]:
    """B_0..B_n_max from sum_{k=0}^{n} C(n+1, k) B_k = 0, with B_1 = -1/2."""
    b = [Fraction(1)]
    for n in range(1, n_max + 1):
        b.append(-sum(comb(n + 1, k) * b[k] for k in range(n)) / (n + 1))
    return b


def alternating_sum(term, n: int) -> mpf:
    """sum_{k>=0} (-1)^k term(k) by the Cohen-Rodriguez Villegas-Zagier scheme.

    Error about 5.83^-n for moment sequences, i.e. 0.77 digits per term.
    """
    d = (3 + mpmath.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b, c, s = mpf(-1), -d, mpf(0)
    for k in range(n):
        c = b - c
        s += c * term(k)
        b = b * (k + n) * (k - n) / ((k + mpf(1) / 2) * (k + 1))
    return s / d


def catalan(dps: int) -> mpf:
    """Cl2(pi/2) = sum (-1)^k / (2k+1)^2."""
    with mpmath.workdps(dps + 10):
        v = alternating_sum(lambda k: mpf(1) / (2 * k + 1) ** 2, int(dps * 1.35) + 10)
    return v


def cl2_pi_over_3(dps: int) -> mpf:
    """Cl2(pi/3) = (sqrt3/2) sum (-1)^k [(3k+1)^-2 + (3k+2)^-2]."""
    with mpmath.workdps(dps + 10):
        v = alternating_sum(
            lambda k: mpf(1) / (3 * k + 1) ** 2 + mpf(1) / (3 * k + 2) ** 2,
            int(dps * 1.35) + 10,
        )
        v = mpmath.sqrt(3) / 2 * v
    return v


def legendre_by_euler(a: int, p: int) -> int:
    """(a/p) for an odd prime p, by Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hurwitz_bracket(s: float, a: float, n_terms: int = 4000, dps: int = 30):
    """Rigorous [lo, hi] for zeta(s, a): partial sum plus integral tail bounds.

    With f(x) = (x + a)^-s decreasing,
    int_N^inf f <= sum_{m>=N} f(m) <= f(N) + int_N^inf f.
    """
    with mpmath.workdps(dps):
        s, a = mpf(s), mpf(a)
        partial = mpmath.fsum((m + a) ** -s for m in range(n_terms))
        integral = (n_terms + a) ** (1 - s) / (s - 1)
        return partial + integral, partial + integral + (n_terms + a) ** -s


def relation_scan(values, bound: int, tol) -> list[tuple[int, ...]]:
    """All integer vectors with max |c| <= bound and |c . v| <= tol (2 values only)."""
    hits = []
    x, y = values
    for c1 in range(-bound, bound + 1):
        for c2 in range(-bound, bound + 1):
            if (c1, c2) != (0, 0) and abs(c1 * x + c2 * y) <= tol:
                hits.append((c1, c2))
    return hits
