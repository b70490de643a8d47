"""The acceptance grid as plain check functions, shared by the CLI and tests."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import special
from .brackets import candidate_by_name, debye_candidates, evaluate_candidate, term_descriptor
from .brackets.engine import TermDescriptor
from .core import (
    DebyeParams,
    debye_bernoulli_series,
    debye_dubinov_polylog,
    debye_large_x,
    debye_new_polylog,
    debye_oracle,
    debye_series_s1,
)
from .errors import DivergentTermError, DomainError
from .thermo import (
    PI4,
    SolidModel,
    d3_high_T_expansion,
    d3_low_T_limit,
    debye3,
    heat_capacity,
    internal_energy,
)


@dataclass(frozen=True)
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} [{self.number}] {self.title}: {self.detail}"


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def log_grid(lo: float, hi: float, points: int) -> list[float]:
    grid = [lo * (hi / lo) ** (i / (points - 1)) for i in range(points)]
    grid[-1] = hi
    return grid


def check_oracle_grid() -> CheckResult:
    worst = 0.0
    for N in (1, 2, 3, 5):
        for alpha in (0.3, 0.7, 1.0):
            for X in (0.2, 1.0, 3.0, 6.0):
                p = DebyeParams(N, alpha, X)
                worst = max(worst, _rel(debye_new_polylog(p).value, debye_oracle(p).value))
    return CheckResult(1, "new polylog form vs quadrature", worst <= 1e-9, f"max rel err {worst:.2e} (tol 1e-9)")


def check_bernoulli() -> CheckResult:
    worst = 0.0
    for N in (1, 3, 5):
        for X in (0.5, 3.0, 6.2):
            ref = debye_oracle(DebyeParams(N, 1.0, X)).value
            worst = max(worst, _rel(debye_bernoulli_series(N, X).value, ref))
    try:
        debye_bernoulli_series(3, 2 * math.pi + 0.1)
        refused = False
    except DomainError:
        refused = True
    ok = worst <= 1e-8 and refused
    return CheckResult(
        2, "Bernoulli series", ok, f"max rel err {worst:.2e} (tol 1e-8), X=2pi+0.1 refused: {refused}"
    )


def check_dubinov_real() -> CheckResult:
    worst_closed = worst_s1 = 0.0
    for N in (1, 3):
        for X in (0.5, 1.0, 2.0):
            for factor in (1.5, 10.0):
                p = DebyeParams(N, factor * math.exp(X), X)
                ref = debye_oracle(p).value
                closed = debye_dubinov_polylog(p).value
                s1 = debye_series_s1(p).value
                worst_closed = max(worst_closed, _rel(closed, ref))
                worst_s1 = max(worst_s1, _rel(s1, ref), _rel(s1, closed))
    ok = worst_closed <= 1e-9 and worst_s1 <= 1e-8
    return CheckResult(
        3, "alpha > e^X closed form and S1", ok,
        f"closed form {worst_closed:.2e} (tol 1e-9), S1 {worst_s1:.2e} (tol 1e-8)",
    )


def check_continuation() -> CheckResult:
    worst = worst_res = 0.0
    for u in (0.5, 1.0, 2.0):
        p = DebyeParams(3, 1.0, u)
        cont = debye_dubinov_polylog(p, allow_continuation=True)
        worst = max(worst, _rel(cont.value, debye_new_polylog(p).value))
        worst_res = max(worst_res, cont.residual)
    ok = worst <= 1e-8 and worst_res <= 1e-9
    return CheckResult(
        4, "continued e^u form vs e^-u form", ok,
        f"max rel diff {worst:.2e} (tol 1e-8), max |Im| {worst_res:.2e} (tol 1e-9)",
    )


def check_high_t() -> CheckResult:
    ratio = max(abs(debye3(u).value - d3_high_T_expansion(u)) / u**6 for u in (0.02, 0.05, 0.1))
    return CheckResult(5, "high-T expansion of D3", ratio <= 5.0, f"max |diff|/u^6 = {ratio:.3e} (bound 5)")


def check_low_t() -> CheckResult:
    d = abs(debye3(25.0).value - d3_low_T_limit(25.0))
    T = 0.02
    cv = heat_capacity(SolidModel(), T)
    rel = _rel(cv, 12.0 / 5.0 * PI4 * T**3)
    ok = d <= 1e-9 and rel <= 1e-6
    return CheckResult(6, "low-T limits", ok, f"|D3(25) - limit| {d:.2e} (tol 1e-9), c_V rel err {rel:.2e} (tol 1e-6)")


def check_gradient() -> CheckResult:
    m = SolidModel()
    worst = 0.0
    for T in (0.05, 0.2, 1.0, 5.0, 100.0):
        h = 1e-5 * T
        fd = (internal_energy(m, T + h) - internal_energy(m, T - h)) / (2 * h)
        worst = max(worst, _rel(fd, heat_capacity(m, T)))
    return CheckResult(7, "c_V vs central difference of U", worst <= 1e-6, f"max rel err {worst:.2e} (tol 1e-6)")


def check_dulong_petit() -> CheckResult:
    m = SolidModel()
    ratios = [heat_capacity(m, T) / (3 * m.nk) for T in log_grid(0.01, 100.0, 50)]
    in_range = all(0.0 < r <= 1.0 for r in ratios)
    monotone = all(a < b for a, b in zip(ratios, ratios[1:]))
    ok = in_range and ratios[-1] >= 0.9999 and monotone
    return CheckResult(
        8, "Dulong-Petit ceiling", ok,
        f"in (0,1]: {in_range}, increasing: {monotone}, value at T=100: {ratios[-1]:.10f} (min 0.9999)",
    )


def printed_summand(name: str, N: int, a: int, b: int) -> TermDescriptor:
    """The four published summands at (first, second) summation index, exactly."""
    fact = math.factorial

    def g(k: int) -> Fraction:  # Gamma(k)
        return Fraction(fact(k - 1))

    def rg(k: int) -> Fraction:  # 1/Gamma(k), zero at poles
        return Fraction(0) if k <= 0 else Fraction(1, fact(k - 1))

    ratio = g(N + 1 + b) * rg(N + 2 + b)
    if name == "S1":
        coeff = -N * ratio * Fraction(a) ** b / fact(b)
        return TermDescriptor.make(coeff, {"alpha": Fraction(-1 - a), "X": Fraction(1 + b)})
    if name == "S2":
        coeff = N * (-1) ** b * ratio * Fraction(1 + a) ** b / fact(b)
        return TermDescriptor.make(coeff, {"alpha": Fraction(a), "X": Fraction(1 + b)})
    if name == "S3":
        coeff = N * (-1) ** b * g(N + 1 + b) * rg(1 - b) / Fraction(1 + a) ** (1 + N + b) / fact(b)
        return TermDescriptor.make(coeff, {"alpha": Fraction(a), "X": Fraction(-N - b)})
    if name == "S4":
        if a == 0:
            raise DivergentTermError("0 to a negative power")
        coeff = (-1) ** N * N * g(N + 1 + b) * rg(1 - b) / Fraction(a) ** (N + 1 + b) / fact(b)
        return TermDescriptor.make(coeff, {"alpha": Fraction(-1 - a), "X": Fraction(-N + b)})
    raise KeyError(name)


#: printed (first, second) index of each series, in terms of the candidate's free indices
PRINTED_ORDER = {"S1": ("n1", "n3"), "S2": ("n2", "n3"), "S3": ("n2", "n4"), "S4": ("n1", "n4")}


def regeneration_mismatches(N: int, size: int = 4) -> list[str]:
    s, cands = debye_candidates(N)
    named = {c.name: c for c in cands if c.name}
    bad = []
    for name, order in PRINTED_ORDER.items():
        c = named[name]
        for a in range(size):
            for b in range(size):
                if name == "S4" and a == 0:
                    continue
                got = term_descriptor(c, s, N, {order[0]: a, order[1]: b})
                if got != printed_summand(name, N, a, b):
                    bad.append(f"{name}({a},{b})")
    return bad


def check_brackets() -> CheckResult:
    s, cands = debye_candidates()
    structured = [c for c in cands if c.abs_det]
    names = sorted(c.name for c in structured)
    s4 = next(c for c in structured if c.name == "S4")
    s4_ok = not s4.valid and "n1 = 0" in s4.reason
    mismatches = [m for N in (1, 2, 3, 5) for m in regeneration_mismatches(N)]
    s_sym, s3 = candidate_by_name("S3")
    trunc = 0.0
    for N in (3, 5):
        value = evaluate_candidate(s3, s_sym, DebyeParams(N, 1.0, 30.0), max_terms=5000, tol=1e-11).value
        trunc = max(trunc, _rel(value, debye_large_x(N, 30.0).value))
    ok = (
        len(cands) == 10
        and names == ["S1", "S2", "S3", "S4"]
        and all(c.abs_det == 1 for c in structured)
        and s4_ok
        and not mismatches
        and trunc <= 1e-10
    )
    return CheckResult(
        9, "bracket series regeneration", ok,
        f"{len(cands)} subsets, structured {names}, S4 divergent at n1=0: {s4_ok}, "
        f"summand mismatches {len(mismatches)}, S3 vs zeta limit {trunc:.2e} (tol 1e-10)",
    )


def check_jonquiere() -> CheckResult:
    worst = max(special.jonquiere_residual(n, x) for n in range(1, 6) for x in (1.5, 3.0, 10.0))
    return CheckResult(10, "inversion formula residuals", worst <= 1e-10, f"max residual {worst:.2e} (tol 1e-10)")


CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_oracle_grid,
    check_bernoulli,
    check_dubinov_real,
    check_continuation,
    check_high_t,
    check_low_t,
    check_gradient,
    check_dulong_petit,
    check_brackets,
    check_jonquiere,
)


def run_all() -> list[CheckResult]:
    return [check() for check in CHECKS]
