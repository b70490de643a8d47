"""Command-line front end.

Every flag can also come from an environment variable DEBYE_<FLAG>
(upper case, dashes as underscores); an explicit flag wins.
"""

from __future__ import annotations

import argparse
import datetime as dt
import math
import os
import sys
from typing import Callable, Sequence

from . import __version__
from .brackets import debye_candidates, evaluate_candidate
from .brackets.serialize import candidate_to_dict, series_to_dict
from .core import (
    DebyeParams,
    Method,
    debye_bernoulli_series,
    debye_dubinov_polylog,
    debye_large_x,
    debye_new_polylog,
    debye_oracle,
    debye_series_s1,
    debye_series_s2,
    evaluate,
)
from .errors import ContinuationResidualError, ConvergenceError, DebyeError, DivergentTermError, DomainError
from .selftest import log_grid, run_all
from .tables import OutputTable
from .thermo import Regime, SolidModel, asymptotic_u_and_cv, heat_capacity, internal_energy

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3
EXIT_IO = 4

ENV_PREFIX = "DEBYE_"
K_B_SI = 1.380649e-23  # J/K

METHODS: dict[str, Callable] = {
    "auto": lambda p, tol: evaluate(p),
    "oracle": lambda p, tol: debye_oracle(p, tol=tol),
    "bernoulli": lambda p, tol: _bernoulli(p, tol),
    "new_polylog": lambda p, tol: debye_new_polylog(p),
    "dubinov": lambda p, tol: debye_dubinov_polylog(p, allow_continuation=p.alpha <= 1),
    "s1": lambda p, tol: debye_series_s1(p, tol=tol),
    "s2": lambda p, tol: debye_series_s2(p, tol=tol),
    "large_x": lambda p, tol: _large_x(p),
}
ALIASES = {
    Method.BERNOULLI_SERIES.value: "bernoulli",
    Method.DUBINOV_POLYLOG.value: "dubinov",
    Method.S1_DIRECT.value: "s1",
    Method.S2_DIRECT.value: "s2",
    Method.LARGE_X_ASYMPTOTIC.value: "large_x",
}


def _bernoulli(p: DebyeParams, tol: float):
    if p.alpha != 1:
        raise DomainError(f"the Bernoulli series needs alpha = 1, got {p.alpha!r}")
    return debye_bernoulli_series(p.N, p.X, tol=max(tol, 1e-15))


def _large_x(p: DebyeParams):
    if p.alpha != 1:
        raise DomainError(f"the large-X limit is for alpha = 1, got {p.alpha!r}")
    return debye_large_x(p.N, p.X)


def _env(name: str, default, cast=str):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise SystemExit(f"bad value for {ENV_PREFIX}{name.upper()}: {raw!r} ({exc})")


def _metadata(args, **extra) -> dict:
    meta = {"version": __version__, **extra}
    if not args.no_meta:
        meta["generated_at"] = dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds")
    return meta


def cmd_eval(args) -> OutputTable:
    method = ALIASES.get(args.method, args.method)
    p = DebyeParams(args.N, args.alpha, args.X)
    res = METHODS[method](p, args.tol)
    table = OutputTable(
        [("value", "1"), ("err_estimate", "1"), ("terms_used", "count"), ("method", "tag")],
        metadata=_metadata(
            args, N=p.N, alpha=p.alpha, X=p.X, tol=args.tol, methods={"value": res.method.value}
        ),
    )
    table.add_row([res.value, res.err_estimate, res.terms_used, res.method.value])
    return table


SWEEP_COLUMNS = [
    ("T", "K"),
    ("U", "energy"),
    ("c_V", "energy/K"),
    ("c_V/3Nk_B", "1"),
    ("U_high_T", "energy"),
    ("c_V_high_T", "energy/K"),
    ("U_low_T", "energy"),
    ("c_V_low_T", "energy/K"),
]


def cmd_sweep(args) -> OutputTable:
    if not 0 < args.T_min < args.T_max:
        raise DomainError(f"need 0 < T_min < T_max, got {args.T_min!r}, {args.T_max!r}")
    if args.points < 2:
        raise DomainError(f"need at least 2 points, got {args.points}")
    k_B = K_B_SI if args.si else args.k_B
    m = SolidModel(args.n_particles, k_B, args.theta_D)
    if args.scale == "log":
        grid = log_grid(args.T_min, args.T_max, args.points)
    else:
        step = (args.T_max - args.T_min) / (args.points - 1)
        grid = [args.T_min + i * step for i in range(args.points - 1)] + [args.T_max]
    columns = list(SWEEP_COLUMNS) + ([("flag", "error")] if args.lenient else [])
    table = OutputTable(
        columns,
        metadata=_metadata(
            args,
            theta_D=m.theta_D,
            k_B=m.k_B,
            n_particles=m.n_particles,
            scale=args.scale,
            methods={
                "U": "new_polylog",
                "c_V": "polylog e^-u closed form",
                "U_high_T": "high_T asymptotic",
                "U_low_T": "low_T asymptotic",
            },
        ),
    )
    for T in grid:
        try:
            U = internal_energy(m, T)
            cv = heat_capacity(m, T)
            hi = asymptotic_u_and_cv(m, T, Regime.HIGH_T)
            lo = asymptotic_u_and_cv(m, T, Regime.LOW_T)
            row = [T, U, cv, cv / (3 * m.nk), *hi, *lo]
            if args.lenient:
                row.append("")
        except DebyeError as exc:
            if not args.lenient:
                raise
            row = [T] + [math.nan] * (len(SWEEP_COLUMNS) - 1) + [type(exc).__name__]
        table.add_row(row)
    return table


def cmd_brackets(args) -> OutputTable:
    series, cands = debye_candidates()
    p = DebyeParams(args.N, args.alpha, args.X)
    # a converged candidate need not equal D: S3 and S4 drop e^{-X} terms
    reference = evaluate(p).value
    table = OutputTable(
        [
            ("bound", "indices"),
            ("free", "indices"),
            ("abs_det", "1"),
            ("valid", "bool"),
            ("name", "series"),
            ("expansion", "direction"),
            ("value", "1"),
            ("err_estimate", "1"),
            ("rel_diff_vs_auto", "1"),
            ("reason", "text"),
        ],
        metadata=_metadata(
            args,
            N=p.N,
            alpha=p.alpha,
            X=p.X,
            max_terms=args.max_terms,
            methods={"value": Method.BRACKET_CANDIDATE.value, "rel_diff_vs_auto": "auto"},
            series=series_to_dict(series),
            candidates=[candidate_to_dict(c) for c in cands],
        ),
    )
    for c in cands:
        value = err = diff = math.nan
        reason = c.reason
        if c.valid:
            try:
                res = evaluate_candidate(c, series, p, max_terms=args.max_terms)
                value, err = res.value, res.err_estimate
                diff = abs(value - reference) / abs(reference) if reference else abs(value)
            except (ConvergenceError, DivergentTermError, OverflowError) as exc:
                reason = f"not convergent here: {exc}"
        table.add_row(
            [
                " ".join(c.bound),
                " ".join(c.free),
                str(c.abs_det),
                c.valid,
                c.name,
                " ".join(d for _, d in c.expansion),
                value,
                err,
                diff,
                reason,
            ]
        )
    return table


def cmd_selftest(args) -> int:
    results = run_all()
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="debye", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p: argparse.ArgumentParser, default_format: str = "csv") -> None:
        p.add_argument("--format", choices=("csv", "json"), default=_env("format", default_format))
        p.add_argument("--out", default=_env("out", None), help="write to this file instead of stdout")
        p.add_argument(
            "--no-meta",
            action="store_true",
            default=_env("no_meta", False, _truthy),
            help="omit the generation timestamp so output is byte-reproducible",
        )

    ev = sub.add_parser("eval", help="evaluate D_N(alpha, X) by one method")
    ev.add_argument("--N", type=int, default=_env("N", 3, int))
    ev.add_argument("--alpha", type=float, default=_env("alpha", 1.0, float))
    ev.add_argument("--X", type=float, default=_env("X", 1.0, float))
    ev.add_argument(
        "--method",
        choices=sorted(METHODS) + sorted(ALIASES),
        default=_env("method", "auto"),
    )
    ev.add_argument("--tol", type=float, default=_env("tol", 1e-12, float))
    output_flags(ev)
    ev.set_defaults(handler=cmd_eval)

    sw = sub.add_parser("sweep", help="U and c_V over a temperature grid")
    sw.add_argument("--theta-D", dest="theta_D", type=float, default=_env("theta_D", 1.0, float))
    sw.add_argument("--T-min", dest="T_min", type=float, default=_env("T_min", 0.01, float))
    sw.add_argument("--T-max", dest="T_max", type=float, default=_env("T_max", 100.0, float))
    sw.add_argument("--points", type=int, default=_env("points", 50, int))
    sw.add_argument("--scale", choices=("linear", "log"), default=_env("scale", "log"))
    sw.add_argument("--n-particles", dest="n_particles", type=float, default=_env("n_particles", 1.0, float))
    sw.add_argument("--k-B", dest="k_B", type=float, default=_env("k_B", 1.0, float))
    sw.add_argument("--si", action="store_true", default=_env("si", False, _truthy), help="k_B in J/K")
    sw.add_argument(
        "--lenient",
        action="store_true",
        default=_env("lenient", False, _truthy),
        help="record failing rows as NaN with a flag instead of aborting",
    )
    output_flags(sw)
    sw.set_defaults(handler=cmd_sweep)

    br = sub.add_parser("brackets", help="classify and evaluate the bracket-series candidates")
    br.add_argument("--N", type=int, default=_env("N", 3, int))
    br.add_argument("--alpha", type=float, default=_env("alpha", 0.5, float))
    br.add_argument("--X", type=float, default=_env("X", 1.0, float))
    br.add_argument("--max-terms", dest="max_terms", type=int, default=_env("max_terms", 400, int))
    output_flags(br, default_format="json")
    br.set_defaults(handler=cmd_brackets)

    st = sub.add_parser("selftest", help="run the acceptance checks and print PASS/FAIL lines")
    st.set_defaults(handler=cmd_selftest)
    return parser


def _truthy(raw: str) -> bool:
    return raw.strip().lower() in ("1", "true", "yes", "on")


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.handler(args)
        if isinstance(result, int):
            return result
        _write(result.render(args.format), args.out)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ConvergenceError, ContinuationResidualError, DivergentTermError) as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except DebyeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
