"""Debye-model internal energy and heat capacity.

Everything is expressed through u = theta_D / T and D_3(u), the
three-dimensional Debye function with alpha = 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import special
from .core import (
    CONTINUATION_RESIDUAL_TOL,
    SMALL_X,
    DebyeEvaluation,
    DebyeParams,
    debye_bernoulli_series,
    debye_dubinov_polylog,
    debye_new_polylog,
)
from .errors import ContinuationResidualError, DomainError
from .special import EPS

PI4 = math.pi**4

#: below this u the high-temperature polynomial is exact to double precision
TINY_U = 1e-8


@dataclass(frozen=True)
class SolidModel:
    n_particles: float = 1.0
    k_B: float = 1.0
    theta_D: float = 1.0

    def __post_init__(self):
        for name in ("n_particles", "k_B", "theta_D"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive finite number, got {v!r}")

    @property
    def nk(self) -> float:
        return self.n_particles * self.k_B

    def u(self, T: float) -> float:
        if not (T > 0 and math.isfinite(T)):
            raise DomainError(f"temperature must be positive and finite, got {T!r}")
        return self.theta_D / T


class Regime(str, enum.Enum):
    HIGH_T = "high_T"
    LOW_T = "low_T"


def debye3(u: float) -> DebyeEvaluation:
    """D_3(u): Bernoulli series for u < 1, the alpha <= 1 polylog form above."""
    if not u > 0:
        raise DomainError(f"u must be positive, got {u!r}")
    if u < SMALL_X:
        return debye_bernoulli_series(3, u)
    return debye_new_polylog(DebyeParams(3, 1.0, u))


def debye3_epos_form(u: float) -> DebyeEvaluation:
    """D_3(u) from the Li_k(e^u) closed form, continued past the branch point."""
    return debye_dubinov_polylog(DebyeParams(3, 1.0, u), allow_continuation=True)


def internal_energy(m: SolidModel, T: float) -> float:
    return 3.0 * m.nk * T * debye3(m.u(T)).value


def _cv_small_u(u: float) -> float:
    return 3.0 * (4.0 * debye3(u).value - 3.0 * u / math.expm1(u))


def _cv_eneg(u: float) -> float:
    q = math.exp(-u)
    terms = (
        12.0 / 5.0 * PI4 / u**3,
        -216.0 * special.polylog(4, q) / u**3,
        -216.0 * special.polylog(3, q) / u**2,
        -108.0 * special.polylog(2, q) / u,
        -36.0 * special.polylog(1, q),
        -9.0 * u * q / -math.expm1(-u),
    )
    return math.fsum(terms)


def heat_capacity(m: SolidModel, T: float) -> float:
    """c_V = dU/dT; polylogs of e^{-u} for u >= 1, the D_3 identity below."""
    u = m.u(T)
    if u < TINY_U:
        return m.nk * (3.0 - 0.15 * u * u)
    if u < SMALL_X:
        return m.nk * _cv_small_u(u)
    return m.nk * _cv_eneg(u)


def _cv_epos_terms(u: float) -> tuple[complex, float]:
    e = math.exp(u)
    li = {n: special.polylog_continued(n, e) for n in (1, 2, 3, 4)}
    terms = (
        complex(-12.0 / 5.0 * PI4 / u**3),
        216.0 * li[4] / u**3,
        -216.0 * li[3] / u**2,
        108.0 * li[2] / u,
        -36.0 * li[1],
        complex(9.0 * u / math.expm1(-u)),
    )
    total = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    return total, 8.0 * EPS * sum(abs(t) for t in terms)


def heat_capacity_epos_form(
    m: SolidModel, T: float, residual_tol: float = CONTINUATION_RESIDUAL_TOL
) -> tuple[float, float]:
    """c_V from polylogs of e^u (real part) and the leftover imaginary part.

    The imaginary parts of the continued polylogs cancel exactly in the
    combination. A residual above ``residual_tol`` relative to c_V raises,
    unless it is within the rounding noise of the terms being combined;
    that noise grows like 1/u^3 at high temperature.
    """
    z, rounding = _cv_epos_terms(m.u(T))
    value = m.nk * z.real
    residual = m.nk * abs(z.imag)
    if residual > max(residual_tol * abs(value), 8.0 * m.nk * rounding):
        raise ContinuationResidualError(
            f"imaginary residual {residual:.3e} exceeds {residual_tol:.1e} relative"
        )
    return value, residual


def d3_high_T_expansion(u: float) -> float:
    return 1.0 - 3.0 * u / 8.0 + u * u / 20.0 - u**4 / 1680.0


def d3_low_T_limit(u: float) -> float:
    return PI4 / (5.0 * u**3)


def asymptotic_u_and_cv(m: SolidModel, T: float, regime: Regime | str) -> tuple[float, float]:
    """Truncated (U, c_V) approximants for T >> theta_D or T << theta_D."""
    regime = Regime(regime)
    u = m.u(T)
    th = m.theta_D
    if regime is Regime.HIGH_T:
        U = m.nk * (3.0 * T - 9.0 / 8.0 * th + 3.0 / 20.0 * th * u - th * u**3 / 560.0)
        cv = m.nk * (3.0 - 3.0 / 20.0 * u**2 + 3.0 / 560.0 * u**4)
        return U, cv
    U = 3.0 / 5.0 * PI4 * m.nk * T**4 / th**3
    cv = 12.0 / 5.0 * PI4 * m.nk / u**3
    return U, cv
