"""Representations of the extended Debye function

    D_N(alpha, X) = N / X^N * int_0^X t^N / (e^t - alpha) dt.

Each evaluator returns a :class:`DebyeEvaluation` carrying the value, the
method that produced it and an error estimate that method can justify.
The integrand has a pole inside (0, X) when 1 < alpha < e^X; every
evaluator refuses that band.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import special
from .errors import ConvergenceError, ContinuationResidualError, DomainError, SingularBandError
from .quadrature import integrate
from .special import EPS

#: relative margin around alpha = e^X treated as part of the singular band
BAND_MARGIN = 1e-9

#: continuation results whose imaginary part exceeds this are rejected
CONTINUATION_RESIDUAL_TOL = 1e-9

#: below this X (alpha = 1) the method selector prefers the Bernoulli series
SMALL_X = 1.0

_EXACT_BERNOULLI = 60


class Method(str, enum.Enum):
    ORACLE = "oracle"
    BERNOULLI_SERIES = "bernoulli_series"
    DUBINOV_POLYLOG = "dubinov_polylog"
    NEW_POLYLOG = "new_polylog"
    S1_DIRECT = "s1_direct"
    S2_DIRECT = "s2_direct"
    LARGE_X_ASYMPTOTIC = "large_x_asymptotic"
    BRACKET_CANDIDATE = "bracket_candidate"


@dataclass(frozen=True)
class DebyeParams:
    """Dimension ``N``, extension parameter ``alpha`` and upper limit ``X``."""

    N: int
    alpha: float
    X: float
    band_margin: float = BAND_MARGIN

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 0:
            raise DomainError(f"N must be a non-negative integer, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))
        if not self.X > 0 or not math.isfinite(self.X):
            raise DomainError(f"X must be positive and finite, got {self.X!r}")
        if not self.alpha > 0 or not math.isfinite(self.alpha):
            raise DomainError(f"alpha must be positive and finite, got {self.alpha!r}")

    @property
    def in_singular_band(self) -> bool:
        """True when the integrand has a pole in (0, X] (boundary margin included)."""
        if self.alpha <= 1.0:
            return False
        return math.log(self.alpha) < self.X + math.log1p(self.band_margin)

    def check(self) -> None:
        if self.in_singular_band:
            raise SingularBandError(
                f"singular band 1<alpha<e^X: alpha={self.alpha!r}, e^X={math.exp(self.X)!r}"
            )
        if self.N == 0 and self.alpha == 1.0:
            raise DomainError("N=0 with alpha=1 gives a divergent integral")


@dataclass(frozen=True)
class DebyeEvaluation:
    value: float
    method: Method
    err_estimate: float
    terms_used: int
    label: str = ""
    #: leftover imaginary part of a continued closed form (0 on real paths)
    residual: float = 0.0


def _integrand(N: int, alpha: float):
    def f(t: float) -> float:
        if t == 0.0:
            if N == 0:
                return 1.0 / (1.0 - alpha)
            if N == 1 and alpha == 1.0:
                return 1.0
            return 0.0
        e = math.exp(-t)
        # e^t - alpha = e^t (1 - alpha e^-t), written to keep alpha ~ 1 accurate
        den = -math.expm1(-t) + (1.0 - alpha) * e
        return t**N * e / den

    return f


def debye_oracle(p: DebyeParams, tol: float = 1e-12) -> DebyeEvaluation:
    """Adaptive-quadrature value of the defining integral."""
    p.check()
    if tol < 1e-13:
        raise DomainError(f"oracle tolerance must be >= 1e-13, got {tol!r}")
    res = integrate(_integrand(p.N, p.alpha), 0.0, p.X, rel_tol=tol)
    scale = p.N / p.X**p.N
    return DebyeEvaluation(res.value * scale, Method.ORACLE, res.error * scale, res.evaluations)


def _bernoulli_ratio(k: int) -> float:
    """B_2k / (2k)! as a float; past the exact table via 2 zeta(2k) / (2 pi)^2k."""
    if 2 * k <= _EXACT_BERNOULLI:
        return float(special.bernoulli_number(2 * k) / math.factorial(2 * k))
    sign = 1.0 if k % 2 else -1.0
    return sign * 2.0 * special.zeta_int(2 * k) * (2.0 * math.pi) ** (-2 * k)


def debye_bernoulli_series(
    N: int, X: float, tol: float = 1e-15, max_terms: int = 20_000
) -> DebyeEvaluation:
    """D_N(X) (alpha = 1) from its Bernoulli-number power series, |X| < 2 pi."""
    if N < 1:
        raise DomainError(f"Bernoulli series needs N >= 1, got {N}")
    if abs(X) >= 2.0 * math.pi:
        raise DomainError(f"Bernoulli series diverges for |X| >= 2*pi (X={X!r})")
    terms = [1.0, -N * X / (2.0 * (N + 1))]
    r = X / (2.0 * math.pi)
    for k in range(1, max_terms + 1):
        if 2 * k <= _EXACT_BERNOULLI:
            t = _bernoulli_ratio(k) * X ** (2 * k) * N / (2 * k + N)
        else:
            sign = 1.0 if k % 2 else -1.0
            t = sign * 2.0 * special.zeta_int(2 * k) * r ** (2 * k) * N / (2 * k + N)
        terms.append(t)
        # alternating terms of decreasing size: the tail is bounded by the next one
        nxt = abs(t) * r * r * (2 * k + N) / (2 * k + 2 + N)
        value = math.fsum(terms)
        if nxt <= tol * abs(value) or t == 0.0:
            err = nxt + 4 * EPS * abs(value)
            return DebyeEvaluation(value, Method.BERNOULLI_SERIES, err, k)
    raise ConvergenceError(f"Bernoulli series not converged after {max_terms} terms (X={X!r})")


def _prefactor(N: int, X: float, alpha: float) -> float:
    return N * math.factorial(N) / (X**N * alpha)


def _shifted_bracket(N: int, alpha: float, X: float) -> tuple[float, float, int]:
    """Bracket of the new form with every Li(alpha e^-X) Taylor-shifted to alpha.

    Li_s(alpha e^-X) = sum_j Li_{s-j}(alpha) (-X)^j / j!; the orders N+1 ... 1
    cancel exactly, leaving

        -sum_{m>N} (-1)^(m+N) C(m-1, N) Li_{N+1-m}(alpha) X^m / m!,

    an alternating series converging for X < ln(1/alpha).
    """
    terms = []
    xm = X ** (N + 1) / math.factorial(N + 1)
    m = N + 1
    while True:
        t = -((-1) ** (m + N)) * math.comb(m - 1, N) * special.polylog_nonpositive(m - N - 1, alpha) * xm
        terms.append(t)
        if len(terms) > 2 and abs(t) <= EPS * 1e-2 * abs(terms[0]):
            break
        if len(terms) > 2 * special.BERNOULLI_BOUND:
            raise ConvergenceError(f"shifted bracket did not converge (alpha={alpha}, X={X})")
        m += 1
        xm *= X / m
    value = math.fsum(terms)
    return value, 2 * abs(terms[-1]) + 4 * EPS * sum(abs(t) for t in terms), len(terms)


#: relative cancellation above which the shifted bracket replaces the direct one
_SHIFT_AMPLIFICATION = 1e4


def debye_new_polylog(p: DebyeParams) -> DebyeEvaluation:
    """Closed form in Li_{N+1-k}(alpha e^-X), valid for 0 < alpha <= 1.

    For small X the bracket cancels to O(X^(N+1)). When alpha < 1 and the
    cancellation is severe, the same bracket is re-expanded about alpha
    (see :func:`_shifted_bracket`). Otherwise the error estimate carries the
    rounding of every term times the prefactor.
    """
    if p.alpha > 1.0:
        raise DomainError(f"new polylog form needs alpha <= 1, got {p.alpha!r}")
    if p.N < 1:
        raise DomainError(f"new polylog form needs N >= 1, got {p.N}")
    N, alpha, X = p.N, p.alpha, p.X
    lead = special.zeta_int(N + 1) if alpha == 1.0 else special.polylog(N + 1, alpha)
    y = alpha * math.exp(-X)
    terms = [lead]
    xk = 1.0
    for k in range(N + 1):
        if k:
            xk *= X / k
        terms.append(-special.polylog(N + 1 - k, y) * xk)
    pre = _prefactor(N, X, alpha)
    bracket = math.fsum(terms)
    magnitude = sum(abs(t) for t in terms)
    count = N + 2
    if (
        alpha < 1.0
        and magnitude > _SHIFT_AMPLIFICATION * abs(bracket)
        and X <= 0.75 * math.log(1.0 / alpha)
    ):
        bracket, bracket_err, count = _shifted_bracket(N, alpha, X)
    else:
        bracket_err = 4 * EPS * magnitude
    value = pre * bracket
    err = pre * bracket_err + 2 * EPS * abs(value)
    return DebyeEvaluation(value, Method.NEW_POLYLOG, err, count)


def debye_dubinov_polylog(
    p: DebyeParams,
    allow_continuation: bool = False,
    residual_tol: float = CONTINUATION_RESIDUAL_TOL,
) -> DebyeEvaluation:
    """Closed form in Li_{N+1-k}(e^X / alpha).

    Real series for alpha > e^X. With ``allow_continuation`` and
    alpha <= 1 the polylogarithms past 1 are continued to the principal
    branch and the real part of the assembly is returned; its imaginary
    part must cancel to ``residual_tol`` (reported in err_estimate).
    """
    if p.N < 1:
        raise DomainError(f"Dubinov form needs N >= 1, got {p.N}")
    p.check()
    N, alpha, X = p.N, p.alpha, p.X
    real_path = alpha > 1.0
    if not real_path and not allow_continuation:
        raise DomainError(
            f"Dubinov form needs alpha >= e^X for a real series (alpha={alpha!r}); "
            "enable continuation for alpha <= 1"
        )

    def li(order: int, x: float) -> tuple[complex, float]:
        # value and the magnitude its rounding error scales with
        if x < 1.0:
            v = special.polylog(order, x)
            return complex(v), abs(v)
        if x == 1.0:
            v = special.zeta_int(order)
            return complex(v), v
        return special.polylog_continued(order, x), _continued_magnitude(order, x)

    y = math.exp(X - math.log(alpha))
    first, scale = li(N + 1, 1.0 / alpha)
    terms = [first]
    scales = [scale]
    xk = 1.0
    for k in range(N + 1):
        if k:
            xk *= -X / k
        v, scale = li(N + 1 - k, y)
        terms.append(-v * xk)
        scales.append(scale * abs(xk))
    pre = (-1) ** N * _prefactor(N, X, alpha)
    bracket = complex(
        math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms)
    )
    linear = -(N / (N + 1)) * X / alpha
    value = linear + pre * bracket.real
    residual = abs(pre * bracket.imag)
    rounding = 8 * EPS * abs(pre) * sum(scales) + 2 * EPS * abs(value)
    if residual > max(residual_tol, 8 * rounding):
        raise ContinuationResidualError(
            f"imaginary residual {residual:.3e} exceeds {residual_tol:.1e}"
        )
    return DebyeEvaluation(
        value, Method.DUBINOV_POLYLOG, residual + rounding, N + 2, residual=residual
    )


def _continued_magnitude(n: int, x: float) -> float:
    # sum of |pieces| of the inversion formula, bounds the rounding of its result
    zabs = abs(complex(1.0, -math.log(x) / (2.0 * math.pi)))
    poly = sum(
        math.comb(n, j) * abs(float(special.bernoulli_number(j))) * zabs ** (n - j)
        for j in range(n + 1)
    )
    return (2.0 * math.pi) ** n / math.factorial(n) * poly + abs(special.polylog(n, 1.0 / x))


def debye_large_x(N: int, X: float) -> DebyeEvaluation:
    """Leading large-X value N Gamma(N+1) zeta(N+1) / X^N (alpha = 1).

    The neglected part is N N!/X^N sum_k Li_{N+1-k}(e^-X) X^k/k!, and
    Li_s(y) <= y/(1-y) for s >= 1, which gives the reported bound.
    """
    if N < 1:
        raise DomainError(f"large-X limit needs N >= 1, got {N}")
    if not X > 0:
        raise DomainError(f"large-X limit needs X > 0, got {X!r}")
    value = N * math.factorial(N) * special.zeta_int(N + 1) / X**N
    y = math.exp(-X)
    poly = math.fsum(X**k / math.factorial(k) for k in range(N + 1))
    bound = N * math.factorial(N) / X**N * poly * y / (-math.expm1(-X))
    return DebyeEvaluation(value, Method.LARGE_X_ASYMPTOTIC, bound, 1)


def debye_series_s1(
    p: DebyeParams, max_terms: int = 400, tol: float = 1e-12
) -> DebyeEvaluation:
    """Truncated double series in powers of 1/alpha and X, needs alpha > e^X.

    Row n1 of the series equals r^n1 * sum_n2 w_n2 / (N + 1 + n2) with
    r = e^X / alpha and w the Poisson weights of mean X n1, so rows are
    bounded by r^n1 / (N + 1) and the outer tail is geometric.
    """
    N, alpha, X = p.N, p.alpha, p.X
    if N < 1:
        raise DomainError(f"S1 needs N >= 1, got {N}")
    log_r = X - math.log(alpha)
    if log_r >= 0.0:
        raise ConvergenceError(
            f"S1 diverges: geometric ratio e^X/alpha = {math.exp(log_r):.6g} >= 1"
        )
    r = math.exp(log_r)
    pre = -N * X / alpha
    rows = [pre / (N + 1)]  # n1 = 0 keeps only n2 = 0 (0^0 = 1)
    count = 1
    inner_err = 0.0
    tail = math.inf
    for n1 in range(1, max_terms):
        z = X * n1
        log_z = math.log(z)
        acc = []
        log_w = -z
        n2 = 0
        while True:
            w = math.exp(log_w)
            acc.append(w / (N + 1 + n2))
            count += 1
            if n2 > z and w < EPS * 1e-2 * max(acc):
                break
            n2 += 1
            if n2 >= max_terms:
                # unsummed Poisson mass is at most 1
                inner_err += abs(pre) * r**n1 / (N + 1 + n2)
                break
            log_w += log_z - math.log(n2)
        rows.append(pre * r**n1 * math.fsum(acc))
        value = math.fsum(rows)
        tail = abs(pre) / (N + 1) * r ** (n1 + 1) / (1.0 - r)
        if tail <= tol * abs(value):
            break
    value = math.fsum(rows)
    err = tail + inner_err + 4 * EPS * sum(abs(v) for v in rows)
    if tail > tol * abs(value):
        raise ConvergenceError(
            f"S1 tail bound {err:.3e} above tolerance after {max_terms} outer terms"
        )
    return DebyeEvaluation(value, Method.S1_DIRECT, err, count)


def debye_series_s2(
    p: DebyeParams, max_terms: int = 100_000, tol: float = 1e-13
) -> DebyeEvaluation:
    """Series in powers of alpha resummed with incomplete gammas, 0 < alpha <= 1.

    S2 = N/X^N sum_m alpha^m gamma(N+1, (m+1) X) / (m+1)^(N+1).
    For alpha = 1 the terms only decay like (m+1)^-(N+1); once
    gamma(N+1, (m+1)X) equals Gamma(N+1) to rounding, the remainder is added
    in closed form as Gamma(N+1) times a Hurwitz zeta tail.
    """
    N, alpha, X = p.N, p.alpha, p.X
    if N < 1:
        raise DomainError(f"S2 needs N >= 1, got {N}")
    if alpha > 1.0:
        raise ConvergenceError(f"S2 diverges for alpha > 1 (alpha={alpha!r})")
    gN = math.factorial(N)
    terms = []
    tail = math.inf
    alpha_m = 1.0
    for m in range(max_terms):
        z = (m + 1) * X
        g = special.lower_incomplete_gamma(N + 1, z)
        terms.append(alpha_m * g / (m + 1) ** (N + 1))
        if alpha < 1.0:
            nxt = alpha_m * alpha
            tail = gN * nxt / (m + 2) ** (N + 1) / (1.0 - alpha)
            if tail <= tol * abs(math.fsum(terms)):
                break
            alpha_m = nxt
        elif z > N + 1 and gN - g <= EPS * 0.25 * gN:
            terms.append(gN * special.hurwitz_zeta_int(N + 1, m + 2))
            # the complement Gamma(N+1) - gamma decreases in z
            tail = (gN - g) * special.hurwitz_zeta_int(N + 1, m + 2) + EPS * terms[-1]
            break
    else:
        raise ConvergenceError(f"S2 did not converge within {max_terms} terms")
    scale = N / X**N
    value = scale * math.fsum(terms)
    err = scale * (tail + 4 * EPS * sum(abs(t) for t in terms))
    return DebyeEvaluation(value, Method.S2_DIRECT, err, len(terms))


#: relative error estimate above which evaluate() looks for a better path
_SELECT_REL_ERR = 1e-12

#: S2 needs about 30 / ln(1/alpha) terms; past this alpha quadrature is cheaper
_S2_ALPHA_MAX = 0.99


def evaluate(p: DebyeParams) -> DebyeEvaluation:
    """Pick a production representation for ``p``.

    alpha = 1 with X < SMALL_X: Bernoulli series (the closed forms cancel there);
    alpha <= 1: new polylogarithm form; when it reports cancellation, the
    resummed S2 series or, for alpha within 1% of 1, quadrature;
    alpha > e^X: Dubinov real form;
    anything else lies in the singular band.
    """
    p.check()
    if p.alpha == 1.0 and p.X < SMALL_X:
        return debye_bernoulli_series(p.N, p.X)
    if p.alpha <= 1.0:
        res = debye_new_polylog(p)
        if res.err_estimate > _SELECT_REL_ERR * abs(res.value):
            if p.alpha == 1.0 and p.X < 2.0 * math.pi:
                alt = debye_bernoulli_series(p.N, p.X)
            elif p.alpha <= _S2_ALPHA_MAX:
                alt = debye_series_s2(p)
            else:
                # alpha just below 1: the pole at ln(alpha) sits next to t = 0
                # and every series converges slowly, so integrate directly
                alt = debye_oracle(p)
            if alt.err_estimate < res.err_estimate:
                return alt
        return res
    return debye_dubinov_polylog(p)


__all__ = [
    "DebyeEvaluation",
    "DebyeParams",
    "Method",
    "debye_bernoulli_series",
    "debye_dubinov_polylog",
    "debye_large_x",
    "debye_new_polylog",
    "debye_oracle",
    "debye_series_s1",
    "debye_series_s2",
    "evaluate",
]
