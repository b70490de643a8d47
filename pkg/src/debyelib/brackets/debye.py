"""The bracket series of the extended Debye function and its four candidates."""

from __future__ import annotations

from dataclasses import replace

from .engine import BracketSeries, SeriesCandidate, enumerate_candidates
from .forms import AffineForm, gamma_den, power, sign

#: series names keyed by the expansion directions in (alpha, X)
SERIES_NAMES = {
    ("alpha->inf", "X->0"): "S1",
    ("alpha->0", "X->0"): "S2",
    ("alpha->0", "X->inf"): "S3",
    ("alpha->inf", "X->inf"): "S4",
}


def build_debye_bracket_series(N: int | None = None) -> BracketSeries:
    """Bracket series of D_N(alpha, X) over n1..n5.

    With ``N=None`` the dimension stays a formal parameter in every form,
    so one enumeration serves all N.
    """
    if N is not None and N < 0:
        raise ValueError("N must be non-negative")
    n1, n2, n3, n4, n5 = (AffineForm.index(f"n{i}") for i in range(1, 6))
    dim = AffineForm.of(n=1)
    factors = (
        sign(n2 - n3),
        power(n1, n3),
        gamma_den(dim + n3 + 2),
        power("alpha", n2),
        power("X", n3),
    )
    brackets = (1 + n1 + n2, dim + n3 + 2 + n4 + n5, dim + n3 + n4 + 1)
    prefactor = (power(dim, AffineForm.const(1)), power("X", AffineForm.const(1)))
    series = BracketSeries(("n1", "n2", "n3", "n4", "n5"), factors, brackets, prefactor)
    if N is None:
        return series
    return BracketSeries(
        series.indices,
        tuple(f.at_n(N) for f in series.factors),
        tuple(b.at_n(N) for b in series.brackets),
        tuple(f.at_n(N) for f in series.prefactor),
    )


def name_candidates(candidates: list[SeriesCandidate]) -> list[SeriesCandidate]:
    """Attach S1..S4 names to the non-singular candidates by expansion direction."""
    out = []
    for c in candidates:
        key = tuple(direction for _, direction in c.expansion)
        out.append(replace(c, name=SERIES_NAMES.get(key, "")) if c.abs_det else c)
    return out


def debye_candidates(N: int | None = None) -> tuple[BracketSeries, list[SeriesCandidate]]:
    s = build_debye_bracket_series(N)
    return s, name_candidates(enumerate_candidates(s))


def candidate_by_name(name: str, N: int | None = None) -> tuple[BracketSeries, SeriesCandidate]:
    s, cands = debye_candidates(N)
    for c in cands:
        if c.name == name:
            return s, c
    raise KeyError(name)
