"""Bracket series, Rule-4 solution candidates and their evaluation.

A bracket series is sum_{n} phi_n1 ... phi_nk C(n) <a_1.n + c_1> ... <a_r.n + c_r>
with phi_n = (-1)^n / Gamma(n + 1). Each choice of r indices with an
invertible coefficient matrix A gives one candidate: the chosen (bound)
indices are solved from the vanishing of the brackets, each contributes
Gamma(-n*), the remaining (free) indices keep their phi factor and are
summed, and the whole is divided by |det A|.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from ..core import DebyeEvaluation, DebyeParams, Method
from ..errors import ConvergenceError, DivergentTermError, GammaPoleError, StructureError
from ..special import EPS
from .forms import AffineForm, Factor, FactorKind, gamma_den, gamma_num, power, sign
from .linalg import bareiss_det, solve_exact


@dataclass(frozen=True)
class BracketSeries:
    indices: tuple[str, ...]
    factors: tuple[Factor, ...]
    brackets: tuple[AffineForm, ...]
    prefactor: tuple[Factor, ...] = ()

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise StructureError(f"duplicate summation indices in {self.indices}")
        if len(self.brackets) > len(self.indices):
            raise StructureError(
                f"{len(self.brackets)} brackets exceed {len(self.indices)} summation indices"
            )
        declared = set(self.indices)
        used = set()
        for f in self.factors + self.prefactor:
            used |= f.indices
        for b in self.brackets:
            used |= set(b.indices)
        if used - declared:
            raise StructureError(f"undeclared indices {sorted(used - declared)}")

    def phi(self, index: str) -> tuple[Factor, Factor]:
        n = AffineForm.index(index)
        return sign(n), gamma_den(n + 1)

    def render_brackets(self, N: int | None = None) -> list[str]:
        return [f"<{b.at_n(N)}>" for b in self.brackets]


@dataclass(frozen=True)
class SeriesCandidate:
    """One Rule-4 solution: bound indices as affine forms of the free ones."""

    bound: tuple[str, ...]
    free: tuple[str, ...]
    solution: tuple[tuple[str, AffineForm], ...]
    abs_det: Fraction
    valid: bool
    reason: str = ""
    name: str = ""
    expansion: tuple[tuple[str, str], ...] = field(default=())

    @property
    def solution_map(self) -> dict[str, AffineForm]:
        return dict(self.solution)

    @property
    def label(self) -> str:
        return self.name or "{" + ",".join(self.bound) + "}"


@dataclass(frozen=True)
class TermDescriptor:
    """Exact term: rational coefficient times powers of the symbolic bases."""

    coeff: Fraction
    powers: tuple[tuple[str, Fraction], ...] = ()

    @classmethod
    def make(cls, coeff: Fraction, powers: Mapping[str, Fraction]) -> "TermDescriptor":
        if coeff == 0:
            return cls(Fraction(0))
        return cls(coeff, tuple(sorted((k, v) for k, v in powers.items() if v)))

    def value(self, alpha: float, X: float) -> float:
        bases = {"alpha": alpha, "X": X}
        out = float(self.coeff)
        for key, exponent in self.powers:
            out *= bases[key] ** float(exponent)
        return out

    def __str__(self) -> str:
        parts = [str(self.coeff)] + [f"{k}^{v}" for k, v in self.powers]
        return " * ".join(parts)


def candidate_factors(c: SeriesCandidate, s: BracketSeries) -> tuple[Factor, ...]:
    """Full factor list of the candidate's summand, a function of the free indices."""
    sol = c.solution_map
    out = [gamma_num(-form) for _, form in c.solution]
    for idx in c.free:
        out.extend(s.phi(idx))
    out.extend(f.substitute(sol) for f in s.factors + s.prefactor)
    if c.abs_det != 1:
        out.append(power(AffineForm.const(c.abs_det), AffineForm.const(-1)))
    return tuple(out)


def _always_nonpositive_int(form: AffineForm) -> bool:
    # true for every N >= 0 when form = p N + q with integer p <= 0 and q <= 0
    p, q = form.n_coeff, form.constant
    return not form.terms and p.denominator == 1 and q.denominator == 1 and p <= 0 and q <= 0


def _corner_divergence(factors: Sequence[Factor], free: Sequence[str]) -> str:
    corner = {idx: AffineForm.const(0) for idx in free}
    for f in factors:
        arg = f.arg.substitute(corner)
        if f.kind is FactorKind.GAMMA_NUM and _always_nonpositive_int(arg):
            return f"divergent: {f} has a pole at the lowest free-index corner"
        if f.kind is FactorKind.POWER and isinstance(f.base, AffineForm):
            base = f.base.substitute(corner)
            negative = not arg.terms and arg.n_coeff <= 0 and arg.constant < 0
            if base.is_zero() and negative:
                zero = " and ".join(f"{i} = 0" for i in f.base.indices) or "the corner"
                return f"divergent: term with {zero} diverges, {f} is 0 to a negative power"
    return ""


def _expansion(factors: Sequence[Factor], free: Sequence[str]) -> tuple[tuple[str, str], ...]:
    out = []
    for symbol in ("alpha", "X"):
        exponent = AffineForm()
        for f in factors:
            if f.kind is FactorKind.POWER and f.base == symbol:
                exponent = exponent + f.arg
        slopes = {exponent.coeff(i) for i in free} - {0}
        if not slopes:
            direction = "none"
        elif all(v > 0 for v in slopes):
            direction = f"{symbol}->0"
        elif all(v < 0 for v in slopes):
            direction = f"{symbol}->inf"
        else:
            direction = "mixed"
        out.append((symbol, direction))
    return tuple(out)


def enumerate_candidates(s: BracketSeries) -> list[SeriesCandidate]:
    """Classify every choice of len(brackets) bound indices (Rule 4).

    Singular subsystems and candidates whose lowest term is infinite for
    every N >= 0 come back with ``valid=False`` and a reason.
    """
    r = len(s.brackets)
    if r > len(s.indices):
        raise StructureError("more brackets than summation indices")
    out = []
    for bound in itertools.combinations(s.indices, r):
        free = tuple(i for i in s.indices if i not in bound)
        matrix = [[b.coeff(i) for i in bound] for b in s.brackets]
        det = bareiss_det(matrix)
        if det == 0:
            out.append(SeriesCandidate(bound, free, (), Fraction(0), False, "singular: subsystem matrix has zero determinant"))
            continue
        zero_bound = {i: AffineForm.const(0) for i in bound}
        rhs = [-(b.substitute(zero_bound)) for b in s.brackets]
        solution = tuple(zip(bound, solve_exact(matrix, rhs)))
        cand = SeriesCandidate(bound, free, solution, abs(det), True)
        factors = candidate_factors(cand, s)
        reason = _corner_divergence(factors, free)
        out.append(
            SeriesCandidate(
                bound, free, solution, abs(det), not reason, reason,
                expansion=_expansion(factors, free),
            )
        )
    return out


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise StructureError(f"{what} must be an integer for exact evaluation, got {value}")
    return value.numerator


def term_descriptor(
    c: SeriesCandidate, s: BracketSeries, N: int, assignment: Mapping[str, int]
) -> TermDescriptor:
    """Exact summand at one free-index assignment with alpha and X kept symbolic.

    Raises GammaPoleError or DivergentTermError for infinite terms;
    1/Gamma at a pole gives an exact zero.
    """
    coeff = Fraction(1)
    powers: dict[str, Fraction] = {}
    for f in candidate_factors(c, s):
        f = f.at_n(N)
        a = f.arg.evaluate(assignment)
        if f.kind is FactorKind.GAMMA_NUM:
            k = _as_int(a, "gamma argument")
            if k <= 0:
                raise GammaPoleError(f"{f} at {dict(assignment)} needs Gamma({k})")
            coeff *= math.factorial(k - 1)
        elif f.kind is FactorKind.GAMMA_DEN:
            k = _as_int(a, "gamma argument")
            if k <= 0:
                return TermDescriptor(Fraction(0))
            coeff /= math.factorial(k - 1)
        elif f.kind is FactorKind.SIGN:
            if _as_int(a, "sign exponent") % 2:
                coeff = -coeff
        elif isinstance(f.base, str):
            powers[f.base] = powers.get(f.base, Fraction(0)) + a
        else:
            b = f.base.evaluate(assignment)
            e = _as_int(a, "power exponent")
            if b == 0:
                if e < 0:
                    raise DivergentTermError(f"{f} at {dict(assignment)} is 0^{e}")
                if e > 0:
                    return TermDescriptor(Fraction(0))
            else:
                coeff *= b**e
    return TermDescriptor.make(coeff, powers)


def candidate_to_series_terms(
    c: SeriesCandidate,
    s: BracketSeries,
    N: int,
    max_terms: int,
    skip_poles: bool = False,
) -> Iterator[tuple[dict[str, int], TermDescriptor]]:
    """Yield (assignment, exact term) for every free index in range(max_terms).

    Assignments run lexicographically with the first free index outermost.
    """
    if not c.valid:
        raise StructureError(f"candidate {c.label} is not valid: {c.reason}")
    for values in itertools.product(range(max_terms), repeat=len(c.free)):
        assignment = dict(zip(c.free, values))
        try:
            yield assignment, term_descriptor(c, s, N, assignment)
        except DivergentTermError:
            if not skip_poles:
                raise


# numeric evaluation ------------------------------------------------------


#: relative rounding error beyond which a cancelling sum is reported as failed
CANCELLATION_LIMIT = 1e-6


#: an outermost sum whose terms grow this many times in a row is taken as divergent
GROWTH_RUN = 30


def _growing(values: list[float]) -> bool:
    mags = [abs(v) for v in values]
    return all(0.0 < a < b for a, b in zip(mags, mags[1:]))


class _Zero(Exception):
    pass


@dataclass
class _NumFactor:
    kind: FactorKind
    arg: tuple[float, dict[str, float]]
    base: object  # float for symbols, (const, coeffs) for affine bases
    symbolic: bool

    @staticmethod
    def _lin(form: AffineForm) -> tuple[float, dict[str, float]]:
        return float(form.constant), {k: float(v) for k, v in form.terms}


def _lin_eval(lin, assign) -> float:
    const, coeffs = lin
    return const + sum(v * assign[k] for k, v in coeffs.items())


def _is_int(x: float) -> bool:
    return x == math.floor(x)


def _numeric_factors(factors: Sequence[Factor], alpha: float, X: float) -> list[_NumFactor]:
    out = []
    for f in factors:
        if f.kind is FactorKind.POWER and isinstance(f.base, str):
            base = math.log(alpha if f.base == "alpha" else X)
            out.append(_NumFactor(f.kind, _NumFactor._lin(f.arg), base, True))
        elif f.kind is FactorKind.POWER:
            out.append(_NumFactor(f.kind, _NumFactor._lin(f.arg), _NumFactor._lin(f.base), False))
        else:
            out.append(_NumFactor(f.kind, _NumFactor._lin(f.arg), None, False))
    return out


def _log_term(nfs: Sequence[_NumFactor], assign: Mapping[str, int]) -> tuple[int, float]:
    sgn = 1
    logabs = 0.0
    for f in nfs:
        a = _lin_eval(f.arg, assign)
        if f.kind is FactorKind.GAMMA_NUM or f.kind is FactorKind.GAMMA_DEN:
            if a <= 0 and _is_int(a):
                if f.kind is FactorKind.GAMMA_DEN:
                    raise _Zero
                raise GammaPoleError(f"Gamma({a:g}) in term {dict(assign)}")
            lg = math.lgamma(a)
            if a < 0 and math.ceil(-a) % 2:
                sgn = -sgn
            logabs += lg if f.kind is FactorKind.GAMMA_NUM else -lg
        elif f.kind is FactorKind.SIGN:
            if int(a) % 2:
                sgn = -sgn
        elif f.symbolic:
            logabs += a * f.base
        else:
            b = _lin_eval(f.base, assign)
            if b == 0:
                if a < 0:
                    raise DivergentTermError(f"0^{a:g} in term {dict(assign)}")
                if a > 0:
                    raise _Zero
                continue
            if b < 0:
                if not _is_int(a):
                    raise DivergentTermError(f"negative base to non-integer power in {dict(assign)}")
                if int(a) % 2:
                    sgn = -sgn
            logabs += a * math.log(abs(b))
    return sgn, logabs


def _structural_limit(nfs, index: str, outer: Mapping[str, int], deeper: set[str]) -> int | None:
    """First value of ``index`` from which every term vanishes identically, if any."""
    limit = None

    def depends_only_on(lin) -> bool:
        return not (set(lin[1]) & deeper)

    for f in nfs:
        c = f.arg[1].get(index, 0.0)
        if f.kind is FactorKind.GAMMA_DEN and c < 0 and depends_only_on(f.arg):
            d = _lin_eval((f.arg[0], {k: v for k, v in f.arg[1].items() if k != index}), outer)
            if _is_int(c) and _is_int(d):
                n0 = max(0, math.ceil(d / -c))
                limit = n0 if limit is None else min(limit, n0)
        elif f.kind is FactorKind.POWER and not f.symbolic and c > 0 and depends_only_on(f.arg):
            if index in f.base[1] or set(f.base[1]) & deeper:
                continue
            if _lin_eval(f.base, outer) != 0:
                continue
            d = _lin_eval((f.arg[0], {k: v for k, v in f.arg[1].items() if k != index}), outer)
            n1 = max(0, math.floor(-d / c) + 1)
            limit = n1 if limit is None else min(limit, n1)
    return limit


@dataclass
class _Tally:
    count: int = 0
    skipped: int = 0
    hit_cap: bool = False


def _tail_estimate(contribs: list[float], n: int) -> float:
    """Tail beyond position n from the last contributions (geometric or power law)."""
    a, b = abs(contribs[-2]), abs(contribs[-1])
    if b == 0.0:
        return 0.0 if a == 0.0 else math.inf
    if a == 0.0:
        return math.inf
    q = b / a
    if q < 0.9:
        return b * q / (1.0 - q)
    p = math.log(a / b) / math.log((n + 1) / n) if n > 0 else 0.0
    if p > 1.0:
        return b * (n + 1) / (p - 1.0)
    return math.inf


def _sum_level(nfs, free, level, assign, max_terms, tol, tally) -> tuple[float, float, float]:
    """(sum, sum of |terms|, error estimate) over free[level:] with outer indices fixed."""
    index = free[level]
    deeper = set(free[level + 1:])
    limit = _structural_limit(nfs, index, assign, deeper)
    stop = max_terms if limit is None else min(max_terms, limit)
    contribs: list[float] = []
    mags: list[float] = []
    errs: list[float] = []
    tail = 0.0
    converged = stop < max_terms
    for n in range(stop):
        assign[index] = n
        if level + 1 < len(free):
            v, m, e = _sum_level(nfs, free, level + 1, assign, max_terms, tol, tally)
        else:
            tally.count += 1
            try:
                sg, lg = _log_term(nfs, assign)
                v = sg * math.exp(lg)
            except _Zero:
                v = 0.0
            except DivergentTermError:
                tally.skipped += 1
                v = 0.0
            m, e = abs(v), 0.0
        contribs.append(v)
        mags.append(m)
        errs.append(e)
        if level == 0 and n >= GROWTH_RUN and _growing(contribs[-GROWTH_RUN:]):
            raise ConvergenceError(
                f"outer terms grew for {GROWTH_RUN} steps in a row (last {abs(v):.3e}): outside the convergence domain"
            )
        if n >= 3 and any(contribs):
            total = math.fsum(contribs)
            recent = contribs[-3:]
            if all(x == 0.0 for x in recent):
                tail = 0.0
                if n >= 10:
                    converged = True
                    break
                continue
            if abs(recent[-1]) <= abs(recent[-2]):
                tail = _tail_estimate(contribs, n)
                # the second test stops a cancelling sum once its tail is below rounding noise
                if tail <= tol * abs(total) or tail <= EPS * math.fsum(mags):
                    converged = True
                    break
    del assign[index]
    if not converged:
        tally.hit_cap = True
        tail = max(tail, _tail_estimate(contribs, len(contribs) - 1) if len(contribs) > 1 else 0.0)
    return math.fsum(contribs), math.fsum(mags), math.fsum(errs) + tail


def evaluate_candidate(
    c: SeriesCandidate,
    s: BracketSeries,
    params: DebyeParams,
    max_terms: int = 400,
    tol: float = 1e-10,
) -> DebyeEvaluation:
    """Numerically sum a valid candidate at (N, alpha, X).

    Each free index runs up to ``max_terms``; a level stops early once its
    tail estimate (geometric ratio, else power-law fit) falls below
    ``tol`` relative to its partial sum. Terms sitting on isolated poles are
    skipped and counted in the label.
    """
    if not c.valid:
        raise StructureError(f"candidate {c.label} is not valid: {c.reason}")
    factors = [f.at_n(params.N) for f in candidate_factors(c, s)]
    nfs = _numeric_factors(factors, params.alpha, params.X)
    tally = _Tally()
    if c.free:
        value, mag, err = _sum_level(nfs, c.free, 0, {}, max_terms, tol, tally)
    else:
        sg, lg = _log_term(nfs, {})
        value, mag, err = sg * math.exp(lg), abs(sg * math.exp(lg)), 0.0
        tally.count = 1
    rounding = 4 * EPS * mag
    err += rounding
    if rounding > CANCELLATION_LIMIT * abs(value):
        raise ConvergenceError(
            f"candidate {c.label}: cancellation leaves relative rounding error {rounding / abs(value) if value else math.inf:.3e}"
        )
    if tally.hit_cap and err > tol * abs(value):
        raise ConvergenceError(
            f"candidate {c.label}: error estimate {err:.3e} above tolerance after {max_terms} terms per index"
        )
    label = c.label + (f" (skipped {tally.skipped} pole terms)" if tally.skipped else "")
    return DebyeEvaluation(value, Method.BRACKET_CANDIDATE, err, tally.count, label)
