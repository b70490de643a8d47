"""Scalar special functions used by the Debye representations.

Everything here works in double precision except the Bernoulli numbers,
which are exact ``Fraction`` objects converted to float at the point of use.
The convention B_1 = -1/2 is used throughout; the Bernoulli polynomials
and the polylogarithm inversion formula depend on it.
"""

from __future__ import annotations

import math
import sys
import threading
from fractions import Fraction

from .errors import BoundsError, ConvergenceError, DomainError, PoleError

EPS = sys.float_info.epsilon

#: largest index served by :func:`bernoulli_number` unless a caller raises it
BERNOULLI_BOUND = 200

#: hard cap on the number of terms of a direct polylogarithm series
POLYLOG_MAX_TERMS = 10**7

_GAMMA_OVERFLOW = 171.6243769563027

_bernoulli_lock = threading.Lock()
_bernoulli_table: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def gamma(x: float) -> float:
    """Gamma function on the real line.

    Raises PoleError at non-positive integers and OverflowError past the
    double-precision overflow threshold (x > 171.62...).
    """
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    if x > _GAMMA_OVERFLOW:
        raise OverflowError(f"Gamma({x!r}) overflows double precision")
    return math.gamma(x)


def _extend_bernoulli(k: int) -> None:
    # recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0, odd entries past B_1 are zero
    with _bernoulli_lock:
        table = _bernoulli_table
        for m in range(len(table), k + 1):
            if m % 2 == 1:
                table.append(Fraction(0))
                continue
            acc = Fraction(0)
            binom = 1
            for j in range(m):
                # binom == C(m+1, j)
                if table[j]:
                    acc += binom * table[j]
                binom = binom * (m + 1 - j) // (j + 1)
            table.append(-acc / (m + 1))


def bernoulli_number(k: int, bound: int = BERNOULLI_BOUND) -> Fraction:
    """Exact Bernoulli number B_k with B_1 = -1/2.

    >>> bernoulli_number(2)
    Fraction(1, 6)
    """
    if k < 0:
        raise DomainError(f"Bernoulli index must be >= 0, got {k}")
    if k > bound:
        raise BoundsError(f"B_{k} is beyond the configured bound {bound}")
    if k >= len(_bernoulli_table):
        _extend_bernoulli(k)
    return _bernoulli_table[k]


def bernoulli_polynomial(n: int, z, bound: int = BERNOULLI_BOUND):
    """B_n(z) = sum_j C(n, j) B_j z^(n-j).

    Exact when ``z`` is an int or Fraction, otherwise evaluated in the
    arithmetic of ``z`` (float or complex).
    """
    if n < 0:
        raise DomainError(f"polynomial degree must be >= 0, got {n}")
    if n > bound:
        raise BoundsError(f"B_{n}(z) is beyond the configured bound {bound}")
    exact = isinstance(z, (int, Fraction))
    acc = Fraction(0) if exact else 0.0
    # Horner in z with coefficients C(n, j) B_j, highest power first
    for j in range(n + 1):
        coeff = math.comb(n, j) * bernoulli_number(j, bound)
        acc = acc * z + (coeff if exact else float(coeff))
    return acc


#: from this order on, zeta sums converge in a handful of terms
_DIRECT_ZETA = 20


def hurwitz_zeta_int(s: int, a: float) -> float:
    """sum_{m>=0} (a + m)^-s for integer s >= 2 and a >= 1.

    Direct summation up to a shifted origin followed by an Euler-Maclaurin
    tail with exact Bernoulli coefficients.
    """
    if s < 2:
        raise DomainError(f"Hurwitz zeta needs s >= 2, got {s}")
    if a < 1:
        raise DomainError(f"Hurwitz zeta helper needs a >= 1, got {a}")
    if s >= _DIRECT_ZETA:
        terms = []
        m = 0
        while True:
            t = (a + m) ** -s
            terms.append(t)
            if t < EPS * 1e-3 * terms[0]:
                break
            m += 1
        return math.fsum(terms)

    shift = max(0, math.ceil(20.0 - a))
    q = a + shift
    terms = [(a + m) ** -s for m in range(shift)]
    terms.append(q ** (1 - s) / (s - 1))
    terms.append(0.5 * q**-s)
    rising = s  # (s)_{2j-1}
    qpow = q ** (-s - 1)
    for j in range(1, 16):
        t = float(bernoulli_number(2 * j) / math.factorial(2 * j)) * rising * qpow
        terms.append(t)
        if abs(t) < EPS * 1e-3:
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        qpow /= q * q
    return math.fsum(terms)


def zeta_int(s: int) -> float:
    """Riemann zeta at an integer s >= 2.

    Small even s comes from the Bernoulli closed form; odd s and large s,
    where the power of 2 pi loses digits, from the direct series.
    """
    if s < 2 or s != int(s):
        raise DomainError(f"zeta_int needs an integer s >= 2, got {s!r}")
    s = int(s)
    if s % 2 == 0 and s < _DIRECT_ZETA:
        ratio = float(abs(bernoulli_number(s)) / math.factorial(s))
        return ratio * (2.0 * math.pi) ** s / 2.0
    return hurwitz_zeta_int(s, 1.0)


def _zeta_any(m: int) -> float:
    # zeta at any integer except 1, negative and zero arguments from Bernoulli
    if m >= 2:
        return zeta_int(m)
    if m == 1:
        raise DomainError("zeta has a pole at 1")
    k = -m
    return float((-1) ** k * bernoulli_number(k + 1) / (k + 1))


def _polylog_direct(n: int, x: float, max_terms: int) -> float:
    terms = []
    ax = abs(x)
    xk = 1.0
    for k in range(1, max_terms + 1):
        xk *= x
        terms.append(xk / k**n)
        # remainder <= |x|^(k+1) / ((k+1)^n (1 - |x|))
        if ax ** (k + 1) / ((k + 1) ** n * (1.0 - ax)) <= EPS * 0.25 * abs(terms[0]):
            return math.fsum(terms)
    raise ConvergenceError(f"Li_{n}({x}) did not converge within {max_terms} terms")


def _polylog_log_series(n: int, mu: float) -> float:
    """Li_n(e^mu) for n >= 2, mu < 0 and |mu| < 2 pi (expansion about x = 1)."""
    harmonic = math.fsum(1.0 / j for j in range(1, n))
    terms = [mu ** (n - 1) / math.factorial(n - 1) * (harmonic - math.log(-mu))]
    mupow = 1.0
    small = 0
    k = 0
    while True:
        if k > 0:
            mupow *= mu / k
        if k != n - 1:
            t = _zeta_any(n - k) * mupow
            terms.append(t)
            # zeta vanishes at negative even integers, so require two quiet terms
            if k > n and abs(t) <= EPS * 1e-2 * abs(terms[1]):
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
        k += 1
        if k - n + 1 > BERNOULLI_BOUND:
            raise ConvergenceError(f"Li_{n}(exp({mu})) expansion did not converge")
    return math.fsum(terms)


def polylog(n: int, x: float, max_terms: int = POLYLOG_MAX_TERMS) -> float:
    """Integer-order polylogarithm Li_n(x) for real x < 1 (and x = 1 when n >= 2).

    Li_0 and Li_1 use their closed forms. Near x = 1 the expansion in
    ln(x) replaces the slowly convergent power series; x < -1/2 is mapped
    back into range with the duplication and inversion identities.
    Arguments past 1 need :func:`polylog_continued`.
    """
    if n < 0 or n != int(n):
        raise DomainError(f"polylog order must be an integer >= 0, got {n!r}")
    n = int(n)
    x = float(x)
    if math.isnan(x):
        raise DomainError("polylog argument is NaN")
    if x > 1.0 or (x == 1.0 and n < 2):
        raise DomainError(f"Li_{n}({x}) has no real series value; use polylog_continued")
    if n == 0:
        return x / (1.0 - x)
    if n == 1:
        return -math.log1p(-x)
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return zeta_int(n)
    if -0.5 <= x <= 0.5:
        return _polylog_direct(n, x, max_terms)
    if x > 0.5:
        return _polylog_log_series(n, math.log(x))
    if x >= -1.0:
        # Li_n(x) + Li_n(-x) = 2^(1-n) Li_n(x^2)
        return 2.0 ** (1 - n) * polylog(n, x * x, max_terms) - polylog(n, -x, max_terms)
    # x < -1: inversion with a real logarithm, the result is real
    value = _inversion_polynomial(n, complex(math.log(-x), 0.0))
    return (value - (-1) ** n * polylog(n, 1.0 / x, max_terms)).real


_eulerian_rows: list[list[int]] = [[1]]


def _eulerian_row(n: int) -> list[int]:
    with _bernoulli_lock:
        rows = _eulerian_rows
        while len(rows) <= n:
            m = len(rows)
            prev = rows[-1]
            row = []
            for k in range(m):
                a = (k + 1) * prev[k] if k < len(prev) else 0
                b = (m - k) * prev[k - 1] if 0 < k <= len(prev) else 0
                row.append(a + b)
            rows.append(row)
    return _eulerian_rows[n]


def polylog_nonpositive(j: int, x: float) -> float:
    """Li_{-j}(x) for j >= 0 and real x != 1.

    Rational in x: Li_{-j}(x) = x A_j(x) / (1 - x)^(j+1) with the Eulerian
    polynomial A_j; for 0 < x < 1 every term is positive.
    """
    if j < 0:
        raise DomainError(f"order -j needs j >= 0, got j={j}")
    if x == 1.0:
        raise DomainError("Li_{-j} has a pole at x = 1")
    if j == 0:
        return x / (1.0 - x)
    row = _eulerian_row(j)
    poly = 0.0
    for coeff in reversed(row):
        poly = poly * x + coeff
    return x * poly / (1.0 - x) ** (j + 1)


def _inversion_polynomial(n: int, log_minus_z: complex) -> complex:
    # -(2 pi i)^n / n! * B_n(1/2 + ln(-z) / (2 pi i))
    two_pi_i = 2j * math.pi
    arg = 0.5 + log_minus_z / two_pi_i
    return -(two_pi_i**n) / math.factorial(n) * bernoulli_polynomial(n, arg)


def polylog_continued(n: int, x: float) -> complex:
    """Principal-branch Li_n(x) for real x > 1 via the Jonquiere inversion formula.

    Uses ln(-x) = ln(x) + i pi, so Li_1(2) = -i pi and
    Im Li_n(x) = -pi ln(x)^(n-1) / (n-1)!.
    """
    if n < 1 or n != int(n):
        raise DomainError(f"continued polylog needs an integer order >= 1, got {n!r}")
    n = int(n)
    if not x > 1.0:
        raise DomainError(f"polylog_continued needs x > 1, got {x!r}")
    log_minus_x = complex(math.log(x), math.pi)
    return _inversion_polynomial(n, log_minus_x) - (-1) ** n * polylog(n, 1.0 / x)


def jonquiere_residual(n: int, x: float) -> float:
    """|Li_n(x) + (-1)^n Li_n(1/x) + (2 pi i)^n/n! B_n(1/2 + ln(-x)/(2 pi i))|.

    Li_n(1/x) is recomputed here by plain summation of the defining series,
    independently of the path :func:`polylog_continued` takes.
    """
    y = 1.0 / x
    if n == 1:
        direct = -math.log1p(-y)
    else:
        direct = _plain_series(n, y)
    total = polylog_continued(n, x) + (-1) ** n * direct
    total -= _inversion_polynomial(n, complex(math.log(x), math.pi))
    return abs(total)


def _plain_series(n: int, y: float) -> float:
    terms = []
    k = 1
    yk = y
    while True:
        t = yk / k**n
        terms.append(t)
        if abs(t) < EPS * 1e-3 and k > 10:
            break
        k += 1
        yk *= y
        if k > POLYLOG_MAX_TERMS:
            raise ConvergenceError(f"plain Li_{n}({y}) series did not converge")
    return math.fsum(terms)


def lower_incomplete_gamma(n: int, Z: float) -> float:
    """gamma(n, Z) = int_0^Z t^(n-1) e^-t dt for integer n >= 1.

    For Z > n the finite sum Gamma(n) [1 - e^-Z sum_{k<n} Z^k/k!] is used,
    with the Poisson terms formed in log space. For Z <= n the same
    quantity is written as the tail e^-Z sum_{k>=n} Z^k/k!, which avoids
    subtracting two nearly equal numbers.
    """
    if n < 1 or n != int(n):
        raise DomainError(f"lower_incomplete_gamma needs integer n >= 1, got {n!r}")
    n = int(n)
    if Z < 0:
        raise DomainError(f"lower_incomplete_gamma needs Z >= 0, got {Z!r}")
    if Z == 0:
        return 0.0
    if Z <= n:
        # gamma(n, Z) = Z^n e^-Z sum_{j>=0} Z^j / (n (n+1) ... (n+j))
        terms = []
        t = 1.0 / n
        j = 0
        while True:
            terms.append(t)
            j += 1
            t *= Z / (n + j)
            if t < EPS * 0.1 * terms[0]:
                break
        return math.exp(n * math.log(Z) - Z) * math.fsum(terms)
    log_z = math.log(Z)
    head = math.fsum(math.exp(k * log_z - Z - math.lgamma(k + 1)) for k in range(n))
    return gamma(n) * (1.0 - head)


def kummer_ratio(n: int, Z: float) -> float:
    """1F1(n; n+1; -Z) for integer n >= 1 and real Z.

    Z > 0 goes through n gamma(n, Z) / Z^n; Z < 0 (positive hypergeometric
    argument) is summed as e^|Z| times a Poisson-weighted average of
    n / (n + k), which has no cancellation.
    """
    if n < 1 or n != int(n):
        raise DomainError(f"kummer_ratio needs integer n >= 1, got {n!r}")
    n = int(n)
    if Z == 0:
        return 1.0
    if Z > 0:
        if Z <= n:
            terms = []
            t = 1.0
            j = 0
            while True:
                terms.append(t)
                j += 1
                t *= Z / (n + j)
                if t < EPS * 0.1:
                    break
            return math.exp(-Z) * math.fsum(terms)
        return math.exp(math.log(n * lower_incomplete_gamma(n, Z)) - n * math.log(Z))
    w = -Z
    log_w = math.log(w)
    terms = []
    k = 0
    while True:
        t = math.exp(k * log_w - math.lgamma(k + 1)) * n / (n + k)
        terms.append(t)
        if k > w and t < EPS * 0.01 * max(terms):
            break
        k += 1
    return math.fsum(terms)


__all__ = [
    "BERNOULLI_BOUND",
    "bernoulli_number",
    "bernoulli_polynomial",
    "gamma",
    "hurwitz_zeta_int",
    "jonquiere_residual",
    "kummer_ratio",
    "lower_incomplete_gamma",
    "polylog",
    "polylog_continued",
    "polylog_nonpositive",
    "zeta_int",
]
