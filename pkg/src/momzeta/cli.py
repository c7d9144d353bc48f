"""Command-line front end: every computation as a reproducible experiment.

Subcommands
    zeta      one zeta value (Riemann integer series or a moment zeta sum)
    moments   moment sweep of a distribution with the scaled-tail column
    sum       alternating-sum sweep over n, stable or naive, with predictors
    predict   evaluate a growth law at n
    game      exact     closed-form duration oracles for fixed p
              simulate  Monte Carlo runs, fixed-p or random-p
    dn        sum-integral defect sweep
    identity  quadrature vs closed form for the limit integrals
    verify    run the acceptance checks and emit a pass/fail report

Reports are JSON ({"schema": 1, "config": ..., "results": ...}) or CSV with
fixed headers.  Numbers are serialized with 17 significant digits, so a given
config and seed produce byte-identical output; the seed falls back to the
MOMZETA_SEED environment variable, then to 42.  Exit codes: 0 success,
1 numeric failure (divergence, precision, quadrature), 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Sequence

from . import acceptance, binom_sums, euler_maclaurin, game_sim
from .dist_core import (
    BetaEdge,
    PowerMoments,
    Uniform,
    load_tabulated_csv,
    moment_sequence,
)
from .errors import Divergence, MomentZetaError
from .game_sim import GameParams
from .moment_zeta import moment_zeta as _moment_zeta_sum, riemann_zeta_int

SCHEMA_VERSION = 1
_DIST_CHOICES = ("uniform", "beta", "tabulated", "riemann", "riemann-scaled")


# ---------------------------------------------------------------------------
# deterministic serialization: floats always carry 17 significant digits
# ---------------------------------------------------------------------------

def fmt_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "null"
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def json_dumps(obj, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        import json as _json

        return _json.dumps(obj)
    if isinstance(obj, (bool, int, float)):
        return fmt_number(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(inner + json_dumps(v, indent + 1) for v in obj)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        import json as _json

        body = ",\n".join(
            f"{inner}{_json.dumps(str(k))}: {json_dumps(v, indent + 1)}" for k, v in obj.items()
        )
        return "{\n" + body + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("" if v is None else fmt_number(v) if not isinstance(v, str) else v
                              for v in row))
    return "\n".join(lines) + "\n"


def _report(config: dict, results) -> str:
    return json_dumps({"schema": SCHEMA_VERSION, "config": config, "results": results})


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _add_dist_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dist", choices=_DIST_CHOICES, help="distribution / sequence family")
    p.add_argument("--beta", type=float, help="edge exponent of the density at x=1")
    p.add_argument("--c", type=float, help="edge coefficient of the density at x=1")
    p.add_argument("--delta", type=float, default=1.0, help="tail correction exponent")
    p.add_argument("--table", help="CSV file with header x,f for --dist tabulated")
    p.add_argument("--s", type=float, help="exponent of the abstract sequence j^(-s)")


def _dist_config(args) -> dict:
    return {
        "family": args.dist,
        "c": args.c,
        "beta": args.beta,
        "delta": args.delta,
        "table": args.table,
        "s": args.s,
    }


def _build_source(args, parser: argparse.ArgumentParser):
    """EdgeDistribution or PowerMoments from CLI flags."""
    if args.dist is None:
        parser.error("--dist is required")
    if args.dist == "uniform":
        return Uniform()
    if args.dist == "beta":
        if args.beta is None:
            parser.error("--dist beta needs --beta")
        return BetaEdge(beta=args.beta, c=args.c, delta=args.delta)
    if args.dist == "tabulated":
        if args.table is None:
            parser.error("--dist tabulated needs --table")
        edge = (args.c, args.beta) if args.c is not None and args.beta is not None else None
        return load_tabulated_csv(args.table, edge=edge, delta=args.delta)
    if args.dist == "riemann":
        return PowerMoments(1.0)
    # riemann-scaled
    if args.s is None:
        parser.error("--dist riemann-scaled needs --s")
    return PowerMoments(args.s)


def _parse_int_list(text: str, parser: argparse.ArgumentParser, flag: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part]
    except ValueError:
        parser.error(f"{flag} expects a comma-separated integer list, got {text!r}")
    if not values:
        parser.error(f"{flag} is empty")
    return values


def _parse_float_list(text: str, parser: argparse.ArgumentParser, flag: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part]
    except ValueError:
        parser.error(f"{flag} expects a comma-separated number list, got {text!r}")
    if not values:
        parser.error(f"{flag} is empty")
    return values


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("MOMZETA_SEED")
    if env is not None:
        return int(env)
    return 42


# ---------------------------------------------------------------------------
# worker tasks (module level so process pools can pickle them)
# ---------------------------------------------------------------------------

def _sum_row(task: dict) -> dict:
    ms = task["ms"]
    n = task["n"]
    if task["method"] == "stable":
        res = binom_sums.alt_sum_stable(ms, n, kmin=task["kmin"], tol=task["tol"])
        value, tail_bound, terms = res.value, res.tail_bound, res.terms_used
    else:
        src_kind = task["zeta_source"]
        if src_kind == "riemann":
            source = binom_sums.riemann_zeta_source()
        elif src_kind == "uniform":
            source = binom_sums.uniform_zeta_source()
        else:
            source = binom_sums.scaled_riemann_zeta_source(task["s"])
        value = binom_sums.alt_sum_naive(n, task["kmin"], source)
        tail_bound, terms = 0.0, n - task["kmin"] + 1
    row = {"n": n, "value": value, "prediction": None, "residual": None,
           "tail_bound": tail_bound, "terms_used": terms}
    if task["predict"] is not None:
        pred = binom_sums.predict(
            task["predict"], n, c=task.get("c"), beta=task.get("beta"), s=task.get("s")
        ).value
        row["prediction"] = pred
        # mainisdef and riemann_scaled predict the magnitude of a negative sum
        measured = abs(value) if task["predict"] in ("mainisdef", "riemann_scaled") else value
        row["residual"] = measured - pred
    return row


def _dn_row(task: dict) -> dict:
    res = euler_maclaurin.defect_dnform(task["n"], tol=task["tol"])
    return {
        "n": res.n,
        "d_n": res.d_value,
        "abs_dev": abs(res.deviation),
        "scaled_dev": res.n * abs(res.deviation),
    }


def _map_rows(fn, tasks: list[dict], workers: int) -> list[dict]:
    if workers > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_zeta(args, parser) -> int:
    if args.riemann:
        if args.k is None:
            parser.error("zeta --riemann needs --k")
        res = riemann_zeta_int(args.k)
        config = {"command": "zeta", "riemann": True, "k": args.k}
    else:
        source = _build_source(args, parser)
        if args.s_eval is None:
            parser.error("zeta needs --s-eval for a moment zeta sum")
        ms = moment_sequence(source)
        res = _moment_zeta_sum(ms, args.s_eval, tol=args.tol)
        config = {"command": "zeta", "dist": _dist_config(args), "s_eval": args.s_eval,
                  "tol": args.tol}
    results = {"value": res.value, "tail_bound": res.tail_bound,
               "terms_used": res.terms_used, "method": res.method}
    _write_output(_report(config, results), args.output)
    return 0


def _cmd_moments(args, parser) -> int:
    import numpy as np

    source = _build_source(args, parser)
    if isinstance(source, PowerMoments):
        parser.error("moments needs a distribution, not an abstract sequence")
    ms = moment_sequence(source)
    tm = ms.tail
    ks = np.unique(np.round(np.geomspace(1, args.k_max, args.points)).astype(np.int64))
    m = ms.moments(ks)
    rows = [
        (int(k), float(mk), float(k**tm.alpha * mk), tm.L)
        for k, mk in zip(ks, m)
    ]
    text = _csv_text(("k", "m_k", "k_pow_alpha_m_k", "tail_L"), rows)
    _write_output(text, args.output)
    return 0


def _cmd_sum(args, parser) -> int:
    source = _build_source(args, parser)
    ms = moment_sequence(source)
    ns = _parse_int_list(args.n, parser, "--n")
    # let the predictor inherit edge parameters from the distribution
    pred_c, pred_beta = args.c, args.beta
    if args.predict in ("mainisdef", "alpha1") and pred_c is None:
        if isinstance(source, BetaEdge):
            pred_c, pred_beta = source.c, source.beta
        elif not isinstance(source, PowerMoments):
            try:
                pred_c, pred_beta = source.edge_params()[:2]
            except MomentZetaError:
                pass
    if args.method == "naive":
        if args.dist == "riemann":
            zeta_source = "riemann"
        elif args.dist == "uniform":
            zeta_source = "uniform"
        elif args.dist == "riemann-scaled":
            zeta_source = "scaled"
        else:
            parser.error("--method naive supports riemann, riemann-scaled and uniform only")
    else:
        zeta_source = None
    base = {
        "ms": ms, "kmin": args.kmin, "tol": args.tol, "method": args.method,
        "zeta_source": zeta_source, "predict": args.predict,
        "c": pred_c, "beta": pred_beta, "s": args.s,
    }
    rows = _map_rows(_sum_row, [dict(base, n=n) for n in ns], args.workers)
    config = {
        "command": "sum", "dist": _dist_config(args), "n": ns, "kmin": args.kmin,
        "tol": args.tol, "method": args.method, "predict": args.predict,
        "workers": args.workers, "format": args.format,
    }
    if args.format == "csv":
        text = _csv_text(
            ("n", "value", "prediction", "residual", "tail_bound", "terms_used"),
            [(r["n"], r["value"], r["prediction"], r["residual"], r["tail_bound"],
              r["terms_used"]) for r in rows],
        )
    else:
        text = _report(config, {"rows": rows})
    _write_output(text, args.output)
    return 0


def _cmd_predict(args, parser) -> int:
    pred = binom_sums.predict(args.kind, args.n, c=args.c, beta=args.beta, s=args.s)
    config = {"command": "predict", "kind": args.kind, "n": args.n,
              "c": args.c, "beta": args.beta, "s": args.s}
    _write_output(_report(config, {"value": pred.value, "params": pred.params}), args.output)
    return 0


def _cmd_game(args, parser) -> int:
    seed = _resolve_seed(args)
    if args.game_cmd == "exact":
        if args.p is None:
            parser.error("game exact needs --p")
        params = GameParams(_parse_float_list(args.p, parser, "--p"))
        series = game_sim.paper_T_series(params, tol=args.tol)
        results = {
            "paper_T": series.value,
            "paper_T_tail_bound": series.tail_bound,
            "expected_rounds": 1.0 + series.value,
            "inclusion_exclusion": (
                game_sim.paper_T_inclusion_exclusion(params) if params.n <= 20 else None
            ),
        }
        config = {"command": "game-exact", "p": list(params.p), "tol": args.tol}
        _write_output(_report(config, results), args.output)
        return 0
    # simulate
    if args.p is not None:
        params = GameParams(_parse_float_list(args.p, parser, "--p"))
        report = game_sim.run_trials("fixed-p", params, trials=args.trials, seed=seed,
                                     workers=args.workers)
        config = {"command": "game-simulate", "mode": "fixed-p", "p": list(params.p),
                  "trials": args.trials, "seed": seed, "workers": args.workers}
    else:
        source = _build_source(args, parser)
        if isinstance(source, PowerMoments):
            parser.error("game simulate needs a distribution, not an abstract sequence")
        if args.n_sets is None:
            parser.error("game simulate --dist ... needs --n-sets")
        report = game_sim.run_trials("random-p", source, trials=args.trials, seed=seed,
                                     n=args.n_sets, workers=args.workers)
        config = {"command": "game-simulate", "mode": "random-p",
                  "dist": _dist_config(args), "n_sets": args.n_sets,
                  "trials": args.trials, "seed": seed, "workers": args.workers}
    _write_output(_report(config, report.to_json_dict()), args.output)
    return 0


def _cmd_dn(args, parser) -> int:
    ns = _parse_int_list(args.n, parser, "--n")
    rows = _map_rows(_dn_row, [{"n": n, "tol": args.tol} for n in ns], args.workers)
    text = _csv_text(
        ("n", "d_n", "abs_dev", "scaled_dev"),
        [(r["n"], r["d_n"], r["abs_dev"], r["scaled_dev"]) for r in rows],
    )
    _write_output(text, args.output)
    return 0


def _cmd_identity(args, parser) -> int:
    ls = _parse_float_list(args.l_grid, parser, "--l-grid")
    alphas = _parse_float_list(args.alpha_grid, parser, "--alpha-grid")
    rows = []
    for length in ls:
        for alpha in alphas:
            quad, closed = binom_sums.gamma_integral_identity_check(length, alpha)
            rows.append(("power", length, alpha, quad, closed, abs(quad - closed)))
        quad, closed = binom_sums.gamma_integral_identity_check(length, 1.0)
        rows.append(("log", length, 1.0, quad, closed, abs(quad - closed)))
    text = _csv_text(
        ("variant", "L", "alpha", "quadrature", "closed_form", "abs_diff"), rows
    )
    _write_output(text, args.output)
    return 0


def _cmd_verify(args, parser) -> int:
    seed = _resolve_seed(args)
    only = args.criteria.split(",") if args.criteria else None
    results = acceptance.run_all(seed=seed, only=only)
    for res in results:
        print(f"{res.line()} ({res.seconds:.2f}s)", file=sys.stderr)
    # timings stay out of the report so identical config + seed give
    # byte-identical bytes
    payload = {
        "criteria": [
            {"id": r.cid, "description": r.description, "passed": r.passed,
             "details": r.details}
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    config = {"command": "verify", "criteria": only, "seed": seed}
    _write_output(_report(config, payload), args.output)
    return 0 if payload["all_passed"] else 1


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momzeta",
        description="moment zeta sums, alternating binomial sums, and the covering game",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default=None):
        p.add_argument("-o", "--output", help="output file (default stdout)")
        p.add_argument("--workers", type=int, default=1, help="parallel workers for sweeps")
        p.add_argument("--seed", type=int, help="RNG seed (fallback: MOMZETA_SEED, then 42)")
        if fmt_default:
            p.add_argument("--format", choices=("json", "csv"), default=fmt_default)

    p = sub.add_parser("zeta", help="one zeta value")
    p.add_argument("--riemann", action="store_true", help="integer-argument Riemann series")
    p.add_argument("--k", type=int, help="integer exponent for --riemann")
    p.add_argument("--s-eval", type=float, help="exponent s of the moment zeta sum")
    p.add_argument("--tol", type=float, default=1e-10)
    _add_dist_args(p)
    common(p)
    p.set_defaults(func=_cmd_zeta)

    p = sub.add_parser("moments", help="moment sweep with tail check")
    _add_dist_args(p)
    p.add_argument("--k-max", type=int, default=10_000)
    p.add_argument("--points", type=int, default=25)
    common(p)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("sum", help="alternating-sum sweep over n")
    _add_dist_args(p)
    p.add_argument("--n", required=True, help="comma-separated n values")
    p.add_argument("--kmin", type=int, choices=(1, 2), default=1)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--method", choices=("stable", "naive"), default="stable")
    p.add_argument("--predict", choices=binom_sums.PREDICTION_KINDS,
                   help="add prediction and residual columns")
    common(p, fmt_default="csv")
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("predict", help="evaluate a growth law")
    p.add_argument("--kind", required=True, choices=binom_sums.PREDICTION_KINDS)
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--c", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--s", type=float)
    common(p)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("game", help="covering game oracles and simulation")
    gsub = p.add_subparsers(dest="game_cmd", required=True)
    pe = gsub.add_parser("exact", help="closed-form duration oracles")
    pe.add_argument("--p", required=True, help="comma-separated measures p_i in [0,1)")
    pe.add_argument("--tol", type=float, default=1e-12)
    common(pe)
    pe.set_defaults(func=_cmd_game, game_cmd="exact")
    ps = gsub.add_parser("simulate", help="Monte Carlo game runs")
    ps.add_argument("--p", help="fixed measures p_i (fixed-p mode)")
    _add_dist_args(ps)
    ps.add_argument("--n-sets", type=int, help="number of sets in random-p mode")
    ps.add_argument("--trials", type=int, default=100_000)
    common(ps)
    ps.set_defaults(func=_cmd_game, game_cmd="simulate")

    p = sub.add_parser("dn", help="sum-integral defect sweep")
    p.add_argument("--n", required=True, help="comma-separated n values")
    p.add_argument("--tol", type=float, default=1e-12)
    common(p)
    p.set_defaults(func=_cmd_dn)

    p = sub.add_parser("identity", help="limit-integral identity checks")
    p.add_argument("--l-grid", default="0.5,1,2")
    p.add_argument("--alpha-grid", default="1.5,2,3")
    common(p)
    p.set_defaults(func=_cmd_identity)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--criteria", help="comma-separated criterion ids (default: all)")
    common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except Divergence as exc:
        print(f"divergent: {exc}", file=sys.stderr)
        return 1
    except MomentZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
