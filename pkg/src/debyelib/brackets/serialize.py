"""JSON form of bracket series and candidates.

Schema (all rationals as strings such as "-3/2"):

    affine form : {"coeffs": {index: rational}, "constant": rational, "N": rational}
    factor      : {"kind": "gamma_num" | "gamma_den" | "power" | "sign",
                   "arg": affine form,
                   "base": "alpha" | "X" | affine form}      (power only)
    series      : {"indices": [...], "prefactor": [factor], "factors": [factor],
                   "brackets": [affine form]}
    candidate   : {"bound": {index: affine form}, "free": [...], "abs_det": rational,
                   "valid": bool, "reason": str, "name": str,
                   "expansion": {"alpha": direction, "X": direction}}
"""

from __future__ import annotations

import json
from fractions import Fraction

from .engine import BracketSeries, SeriesCandidate
from .forms import AffineForm, Factor, FactorKind


def form_to_dict(form: AffineForm) -> dict:
    return {
        "coeffs": {k: str(v) for k, v in form.terms},
        "constant": str(form.constant),
        "N": str(form.n_coeff),
    }


def form_from_dict(data: dict) -> AffineForm:
    coeffs = {k: Fraction(v) for k, v in data.get("coeffs", {}).items()}
    return AffineForm.of(coeffs, Fraction(data.get("constant", "0")), Fraction(data.get("N", "0")))


def factor_to_dict(f: Factor) -> dict:
    out = {"kind": f.kind.value, "arg": form_to_dict(f.arg)}
    if f.kind is FactorKind.POWER:
        out["base"] = f.base if isinstance(f.base, str) else form_to_dict(f.base)
    return out


def factor_from_dict(data: dict) -> Factor:
    base = data.get("base")
    if isinstance(base, dict):
        base = form_from_dict(base)
    return Factor(FactorKind(data["kind"]), form_from_dict(data["arg"]), base)


def series_to_dict(s: BracketSeries) -> dict:
    return {
        "indices": list(s.indices),
        "prefactor": [factor_to_dict(f) for f in s.prefactor],
        "factors": [factor_to_dict(f) for f in s.factors],
        "brackets": [form_to_dict(b) for b in s.brackets],
    }


def series_from_dict(data: dict) -> BracketSeries:
    return BracketSeries(
        tuple(data["indices"]),
        tuple(factor_from_dict(f) for f in data["factors"]),
        tuple(form_from_dict(b) for b in data["brackets"]),
        tuple(factor_from_dict(f) for f in data.get("prefactor", [])),
    )


def candidate_to_dict(c: SeriesCandidate) -> dict:
    return {
        "bound": {k: form_to_dict(v) for k, v in c.solution},
        "bound_order": list(c.bound),
        "free": list(c.free),
        "abs_det": str(c.abs_det),
        "valid": c.valid,
        "reason": c.reason,
        "name": c.name,
        "expansion": dict(c.expansion),
    }


def candidate_from_dict(data: dict) -> SeriesCandidate:
    bound = tuple(data.get("bound_order") or data["bound"])
    solution = tuple((k, form_from_dict(data["bound"][k])) for k in bound if k in data["bound"])
    return SeriesCandidate(
        bound,
        tuple(data["free"]),
        solution,
        Fraction(data["abs_det"]),
        bool(data["valid"]),
        data.get("reason", ""),
        data.get("name", ""),
        tuple(data.get("expansion", {}).items()),
    )


def dumps(s: BracketSeries, candidates: list[SeriesCandidate] | None = None, **kw) -> str:
    payload = {"series": series_to_dict(s)}
    if candidates is not None:
        payload["candidates"] = [candidate_to_dict(c) for c in candidates]
    return json.dumps(payload, **kw)


def loads(text: str) -> tuple[BracketSeries, list[SeriesCandidate]]:
    payload = json.loads(text)
    cands = [candidate_from_dict(c) for c in payload.get("candidates", [])]
    return series_from_dict(payload["series"]), cands
