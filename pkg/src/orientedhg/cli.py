"""Command-line interface: ``orientedhg <subcommand> ...``.

Failures exit non-zero and print one JSON object ``{"error": category,
"message": ...}`` on stderr.  Categories: ``usage`` (2), ``input`` (3),
``domain`` (4), ``no_root`` (5).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import analysis, combinatorics, extrema, random_model as rm, reaction_io as rio
from .core import OrientedHypergraph

DEFAULT_SEED = 1959
SEED_ENV = "ORIENTEDHG_SEED"

EXIT_CODES = {"usage": 2, "input": 3, "domain": 4, "no_root": 5}


class CliError(Exception):
    def __init__(self, category: str, message: str):
        super().__init__(message)
        self.category = category


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _resolve_seed(args) -> int:
    if getattr(args, "entropy", False):
        return int(np.random.SeedSequence().entropy % 2**63)
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError("usage", f"{SEED_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _resolve_probability(args, n: int) -> float:
    has_p = args.p is not None
    has_family = args.alpha is not None or args.beta is not None
    if has_p == has_family:
        raise CliError("usage", "give exactly one of --p or (--alpha, --beta)")
    if has_p:
        if not 0.0 <= args.p <= 1.0:
            raise CliError("domain", f"--p must lie in [0, 1], got {args.p}")
        return args.p
    if args.alpha is None or args.beta is None:
        raise CliError("usage", "--alpha and --beta must be given together")
    return rm.ProbabilityFamily(args.alpha, args.beta)(n)


# -- count ------------------------------------------------------------------------------


def cmd_count(args) -> None:
    report = combinatorics.full_report(args.n, blocks=args.blocks)
    if args.format == "csv":
        _emit(report.to_csv(), args.output)
    else:
        _emit(report.to_json(indent=1), args.output)


# -- sample ---------------------------------------------------------------------------------


def _sample_replicate(job):
    n, p, seed, index, strategy, out_dir = job
    left, right, meta = rm.draw_edges(n, p, rm.replicate_generator(seed, index), strategy)
    g = OrientedHypergraph.from_masks(n, zip(left.tolist(), right.tolist()))
    if out_dir is not None:
        rio.write_hypergraph(g, Path(out_dir) / f"sample_{index:05d}.json")
    return {
        "replicate": index,
        "edges": len(g),
        "degree_sum": sum(g.degree_sequence()),
        "size_histogram": {str(k): v for k, v in g.size_histogram().items()},
        **({"meta": meta} if meta else {}),
    }


def _run_jobs(fn, jobs, workers: int):
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, jobs))
    else:
        results = [fn(j) for j in jobs]
    return sorted(results, key=lambda r: r["replicate"])


def cmd_sample(args) -> None:
    seed = _resolve_seed(args)
    p = _resolve_probability(args, args.n)
    if args.count < 1:
        raise CliError("usage", "--count must be positive")
    if args.output_dir:
        Path(args.output_dir).mkdir(parents=True, exist_ok=True)
    jobs = [(args.n, p, seed, i, args.strategy, args.output_dir) for i in range(args.count)]
    results = _run_jobs(_sample_replicate, jobs, args.jobs)
    edges = [r["edges"] for r in results]
    summary = {
        "n": args.n,
        "p": p,
        "seed": seed,
        "count": args.count,
        "expected_edges": rm.expected_edges(args.n, p),
        "mean_edges": float(np.mean(edges)),
        "replicates": results,
    }
    _emit(json.dumps(summary, indent=1), args.output)


# -- curves -------------------------------------------------------------------------------


def _n_grid(args) -> list:
    if args.n_min < 2 or args.n_max < args.n_min:
        raise CliError("usage", "need 2 <= --n-min <= --n-max")
    if args.points:
        space = np.geomspace if args.log_spaced else np.linspace
        grid = np.unique(np.round(space(args.n_min, args.n_max, args.points)).astype(int))
        return [int(x) for x in grid]
    return list(range(args.n_min, args.n_max + 1, args.step))


def _fit(x, y) -> float | None:
    x, y = np.asarray(x, float), np.asarray(y, float)
    ok = np.isfinite(y)
    if ok.sum() < 2:
        return None
    return float(np.polyfit(x[ok], y[ok], 1)[0])


def curve_table(alpha: float, beta: float, n_values, sizes=()) -> dict:
    """Columns of ln E[R], ln E[D], E[R]/E[D], n/2 and, per size, ln E[R_s] and P(s)."""
    fam = rm.ProbabilityFamily(alpha, beta)
    cols = {"n": list(n_values)}
    cols["ln_ER"] = [rm.log_expected_edges(n, fam) for n in n_values]
    cols["ln_ED"] = [rm.log_expected_degree(n, fam) for n in n_values]
    cols["ratio_RD"] = [rm.ratio_R_over_D(n) for n in n_values]
    cols["ratio_simple_graph"] = [rm.simple_graph_ratio(n) for n in n_values]
    for s in sizes:
        cols[f"ln_ER_{s}"] = [
            rm.log_expected_edges_of_size(n, s, fam) if n >= s else -math.inf for n in n_values
        ]
        cols[f"P_{s}"] = [rm.size_probability(n, s) if n >= s else 0.0 for n in n_values]
    return cols


def cmd_curves(args) -> None:
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else []
    n_values = _n_grid(args)
    try:
        cols = curve_table(args.alpha, args.beta, n_values, sizes)
    except ValueError as exc:
        raise CliError("domain", str(exc)) from None
    log_n = np.log(n_values)
    fits = {
        "slope_ln_ER_vs_ln_n": _fit(log_n, cols["ln_ER"]),
        "slope_ln_ER_vs_n": _fit(n_values, cols["ln_ER"]),
    }
    for s in sizes:
        fits[f"slope_ln_ER_{s}_vs_ln_n"] = _fit(log_n, cols[f"ln_ER_{s}"])
    if args.format == "json":
        doc = {"alpha": args.alpha, "beta": args.beta, "columns": {
            k: [v if not isinstance(v, float) or math.isfinite(v) else None for v in vals]
            for k, vals in cols.items()
        }, "fits": fits}
        _emit(json.dumps(doc, indent=1), args.output)
        return
    names = list(cols)
    lines = [",".join(names)]
    for row in zip(*(cols[k] for k in names)):
        lines.append(",".join(repr(v) if isinstance(v, float) else str(v) for v in row))
    _emit("\n".join(lines), args.output)
    if args.fit:
        sys.stderr.write(json.dumps(fits) + "\n")


# -- extrema ---------------------------------------------------------------------------------


def cmd_extrema(args) -> None:
    if (args.n_max is None) == (args.s_max is None):
        raise CliError("usage", "give exactly one of --n-max S ALPHA or --s-max N")
    try:
        if args.n_max is not None:
            s, alpha = args.n_max
            if not float(s).is_integer():
                raise CliError("usage", "--n-max size must be an integer")
            result = extrema.solve_n_max(int(s), alpha)
        else:
            result = extrema.solve_s_max(args.s_max)
    except extrema.NoRootError as exc:
        raise CliError("no_root", str(exc)) from None
    _emit(json.dumps(result.to_dict(), indent=1), args.output)


# -- ingest / test ------------------------------------------------------------------------------


def _load_hypergraph(path: str, policy: str):
    try:
        if path.endswith(".json"):
            return rio.read_hypergraph(path), None
        return rio.read_reaction_file(path, policy)
    except OSError as exc:
        raise CliError("input", str(exc)) from None
    except (rio.ReactionSyntaxError, rio.BuildError, rio.DocumentError) as exc:
        raise CliError("input", str(exc)) from None


def cmd_ingest(args) -> None:
    g, table = _load_hypergraph(args.path, args.policy)
    if args.hypergraph:
        rio.write_hypergraph(g, args.hypergraph)
    if args.matrix:
        m = rio.export_matrix(g)
        text = m.to_json(indent=1) if args.matrix.endswith(".json") else m.to_csv(dense=args.dense)
        Path(args.matrix).write_text(text, encoding="utf-8")
    doc = {
        "n": g.n,
        "names": g.names,
        "intermediates": sorted(g.names[i] for i in table.intermediates) if table else [],
        "edges": len(g),
        "size": sum(g.size_histogram()[s] * s for s in range(2, g.n + 1)),
        "degree_sequence": g.degree_sequence(),
        "size_histogram": {str(k): v for k, v in g.size_histogram().items()},
        "bounds": [0, combinatorics.max_size_degree(g.n)],
        "ratio": analysis.ratio_diagnostic(g) if len(g) else None,
    }
    _emit(json.dumps(doc, indent=1), args.output)


def _test_replicate(job):
    n, p, seed, index, significance, min_expected = job
    left, right, _ = rm.draw_edges(n, p, rm.replicate_generator(seed, index))
    g = OrientedHypergraph.from_masks(n, zip(left.tolist(), right.tolist()))
    rep = analysis.fit_randomness(g, significance=significance, min_expected=min_expected)
    return {"replicate": index, "verdict": rep.verdict, "size_p_value": rep.size_fit.p_value}


def cmd_test(args) -> None:
    if (args.path is None) == (not args.sampled):
        raise CliError("usage", "give a hypergraph path or --sampled")
    if args.sampled:
        if args.n is None:
            raise CliError("usage", "--sampled needs --n")
        seed = _resolve_seed(args)
        p = _resolve_probability(args, args.n)
        if args.replicates > 1:
            jobs = [(args.n, p, seed, i, args.significance, args.min_expected)
                    for i in range(args.replicates)]
            results = _run_jobs(_test_replicate, jobs, args.jobs)
            rejected = sum(r["verdict"] == analysis.REJECTED for r in results)
            _emit(json.dumps({
                "n": args.n, "p": p, "seed": seed, "replicates": args.replicates,
                "significance": args.significance, "rejected": rejected,
                "rejection_rate": rejected / args.replicates,
            }, indent=1), args.output)
            return
        g = rm.sample(rm.RandomModelParams(args.n, p, seed))
        model_p = p if args.known_p else None
    else:
        g, _ = _load_hypergraph(args.path, args.policy)
        model_p = args.p
        if model_p is not None and not 0 <= model_p <= 1:
            raise CliError("domain", "--p must lie in [0, 1]")
    report = analysis.fit_randomness(g, model_p, args.significance, args.min_expected)
    if args.format == "text":
        _emit(report.summary(), args.output)
    else:
        _emit(report.to_json(indent=1), args.output)


# -- parser ---------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def _add_probability(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=float, help="wiring probability")
    p.add_argument("--alpha", type=float, help="family exponent, p = n^alpha / beta^n")
    p.add_argument("--beta", type=float, help="family base, p = n^alpha / beta^n")


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, help=f"RNG seed (default {DEFAULT_SEED} or ${SEED_ENV})")
    p.add_argument("--entropy", action="store_true", help="seed from OS entropy")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for replicates")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orientedhg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="exact counts for the complete oriented hypergraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--blocks", action="store_true", help="include the per-block table")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sample", help="draw random oriented hypergraphs G(n, p)")
    p.add_argument("--n", type=int, required=True)
    _add_probability(p)
    _add_seed(p)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--strategy", choices=("auto", "bernoulli", "by_size"), default="auto")
    p.add_argument("--output-dir", help="write one hypergraph JSON per replicate here")
    p.add_argument("--output")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("curves", help="expectation curves for p = n^alpha / beta^n")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--points", type=int, help="number of grid points instead of --step")
    p.add_argument("--log-spaced", action="store_true")
    p.add_argument("--sizes", help="comma-separated sizes s for E[R_s] and P(s)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--fit", action="store_true", help="report fitted slopes on stderr (csv)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_curves, p=None)

    p = sub.add_parser("extrema", help="solve for n_max or s_max")
    p.add_argument("--n-max", nargs=2, type=float, metavar=("S", "ALPHA"))
    p.add_argument("--s-max", type=int, metavar="N")
    p.add_argument("--output")
    p.set_defaults(func=cmd_extrema)

    p = sub.add_parser("ingest", help="read a reaction file into an oriented hypergraph")
    p.add_argument("path")
    p.add_argument("--policy", choices=("reject", "split"), default="reject",
                   help="autocatalytic reactions: reject or split via an intermediate")
    p.add_argument("--hypergraph", help="write the hypergraph JSON here")
    p.add_argument("--matrix", help="write the adjacency classification (.json or .csv)")
    p.add_argument("--dense", action="store_true", help="list every matrix cell in CSV")
    p.add_argument("--output")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("test", help="test a hypergraph for consistency with G(n, p)")
    p.add_argument("path", nargs="?")
    p.add_argument("--policy", choices=("reject", "split"), default="reject")
    p.add_argument("--sampled", action="store_true", help="test freshly sampled instances")
    p.add_argument("--n", type=int)
    _add_probability(p)
    _add_seed(p)
    p.add_argument("--known-p", action="store_true",
                   help="with --sampled, test against the true p instead of its estimate")
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--significance", type=float, default=0.01)
    p.add_argument("--min-expected", type=float, default=5.0)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=cmd_test)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except CliError as exc:
        category, message = exc.category, str(exc)
    except (rio.ReactionSyntaxError, rio.BuildError, rio.DocumentError) as exc:
        category, message = "input", str(exc)
    except extrema.NoRootError as exc:
        category, message = "no_root", str(exc)
    except (ValueError, OverflowError) as exc:
        category, message = "domain", str(exc)
    else:
        return 0
    sys.stderr.write(json.dumps({"error": category, "message": message}) + "\n")
    return EXIT_CODES[category]


if __name__ == "__main__":
    sys.exit(main())
