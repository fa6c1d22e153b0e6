"""Command-line front end.

Subcommands: ``run``, ``compare``, ``derive-weights`` and ``oracle``.
Exit codes: 0 success, 1 usage/config error, 2 runtime error.

A run config is one JSON document; every key is optional::

    {
      "grid": "builtin",                 # or "uniform:RxC", or a matrix file path
      "scheme": "aspect",                # "einarsson", or a scheme / rating-table JSON path
      "cost": {"lambda": 3.0, ...},
      "ga": {"population_size": 200, "generations": 500, ...},
      "active_components": ["URBANIZATION", "MORTALITY", "POVERTY"],
      "fixed_level": 3,
      "seeds": [0],
      "out": "floodga_out"
    }

Relative paths are resolved against the config file's directory.
"""
from __future__ import annotations

import argparse
import dataclasses
import datetime
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analysis, ga, oracle
from .errors import ConfigError, DimMismatch, FloodGAError
from .genome import COMPONENT_LABELS, COMPONENTS, PackedGenome, decode, render_city, render_component_grid
from .hazard import HazardGrid, default_grid, load_grid, uniform_grid
from .objective import CostParams
from .problem import Problem
from .weights import (
    BUILTIN_SCHEMES,
    builtin_scheme,
    derive_totals,
    aspect_rating_table,
    load_scheme_file,
    normalize,
    rating_table_from_json,
)

RESULT_FORMAT = "floodga-run/1"
EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(FloodGAError):
    pass


@dataclass
class RunConfig:
    grid: HazardGrid
    problem: Problem
    ga_doc: dict
    seeds: list[int]
    out: Path
    grid_source: str = "builtin"
    scheme_source: str = "aspect"
    raw: dict = field(default_factory=dict)

    def ga_config(self, seed: int) -> ga.GaConfig:
        return ga.GaConfig.from_json(self.ga_doc, rng_seed=seed)


def _resolve(base: Path, value: str) -> Path:
    p = Path(value)
    return p if p.is_absolute() else base / p


def _load_grid_source(source: str, base: Path) -> HazardGrid:
    if source == "builtin":
        return default_grid()
    m = re.fullmatch(r"uniform:(\d+)x(\d+)", source)
    if m:
        return uniform_grid(int(m.group(1)), int(m.group(2)))
    path = _resolve(base, source)
    if not path.is_file():
        raise ConfigError(f"grid file not found: {path}")
    return load_grid(path.read_text())


def _load_scheme_source(source: str, base: Path):
    if source in BUILTIN_SCHEMES:
        return builtin_scheme(source)
    path = _resolve(base, source)
    if not path.is_file():
        raise ConfigError(f"scheme {source!r} is neither a builtin ({sorted(BUILTIN_SCHEMES)}) nor a file")
    return load_scheme_file(path)


def load_config(path: str | None, scheme_override: str | None = None,
                seeds_override=None, out_override: str | None = None) -> RunConfig:
    if path is None:
        doc, base = {}, Path.cwd()
    else:
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file not found: {p}")
        try:
            doc = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{p}: invalid JSON: {exc}") from None
        base = p.parent
    known = {"name", "grid", "scheme", "cost", "ga", "active_components", "fixed_level", "seeds", "out"}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config key(s): {sorted(unknown)}")

    grid_source = str(doc.get("grid", "builtin"))
    scheme_source = scheme_override or str(doc.get("scheme", "aspect"))
    grid = _load_grid_source(grid_source, base)
    scheme = _load_scheme_source(scheme_source, base)
    cost = CostParams.from_json(doc.get("cost"))
    active = tuple(doc.get("active_components", [k.name for k in COMPONENTS]))
    problem = Problem(grid, scheme, cost, active, int(doc.get("fixed_level", 3)))

    seeds = list(seeds_override) if seeds_override else list(doc.get("seeds", [0]))
    if not seeds:
        raise ConfigError("seed list must be non-empty")
    ga_doc = dict(doc.get("ga", {}))
    ga.GaConfig.from_json(ga_doc, rng_seed=int(seeds[0]))  # validate early
    out = Path(out_override) if out_override else _resolve(base, str(doc.get("out", "floodga_out")))
    return RunConfig(grid, problem, ga_doc, [int(s) for s in seeds], out,
                     grid_source, scheme_source, doc)


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def result_document(result: ga.RunResult, timestamp: bool) -> dict:
    problem = result.problem
    breakdown = problem.evaluate(decode(result.best_genome))
    doc = {
        "format": RESULT_FORMAT,
        "scheme": result.scheme_name,
        "seed": result.seed,
        "rng_algorithm": result.rng_algorithm,
        "problem": problem.describe(),
        "ga": result.config.to_json(),
        "dims": list(result.best_genome.dims),
        "best_genome": result.best_genome.to_string(),
        "best_fitness": result.best_fitness,
        "vulnerability_term": breakdown.vulnerability_term,
        "cost_term": breakdown.cost_term,
        "best_generation": result.best_generation,
        "generations_run": result.generations_run,
        "history": {"best": result.history_best.tolist(), "mean": result.history_mean.tolist()},
    }
    if timestamp:
        doc["generated_at"] = _timestamp()
    return doc


def write_run_report(result: ga.RunResult, out_dir: Path, timestamp: bool = True) -> Path:
    """Write grids, stats and the full result document for one GA run."""
    out_dir.mkdir(parents=True, exist_ok=True)
    city = decode(result.best_genome)
    grid = result.problem.grid
    (out_dir / "grids.txt").write_text(render_city(city))
    for k in COMPONENTS:
        (out_dir / f"{k.name.lower()}.txt").write_text(render_component_grid(city, k))
    stats = {
        "scheme": result.scheme_name,
        "seed": result.seed,
        "best_fitness": result.best_fitness,
        "zone_stats": analysis.zone_stats(city, grid).to_json(),
    }
    (out_dir / "stats.json").write_text(_dump_json(stats))
    lines = ["generation,best,mean"]
    lines += [f"{i},{b!r},{m!r}" for i, (b, m) in
              enumerate(zip(result.history_best.tolist(), result.history_mean.tolist()))]
    (out_dir / "history.csv").write_text("\n".join(lines) + "\n")
    (out_dir / "result.json").write_text(_dump_json(result_document(result, timestamp)))
    return out_dir


def load_saved_result(path: Path):
    """Return ``(city, grid, scheme_name, seed)`` from a run directory or its result.json."""
    path = Path(path)
    if path.is_dir():
        path = path / "result.json"
    if not path.is_file():
        raise ConfigError(f"saved result not found: {path}")
    doc = json.loads(path.read_text())
    if doc.get("format") != RESULT_FORMAT:
        raise ConfigError(f"{path}: not a {RESULT_FORMAT} document")
    city = decode(PackedGenome.from_string(doc["best_genome"], tuple(doc["dims"])))
    grid = HazardGrid(np.array(doc["problem"]["hazard_grid"]))
    return city, grid, doc["scheme"], int(doc["seed"])


def _seed_dir(out: Path, scheme_name: str, seed: int) -> Path:
    return out / f"{scheme_name}_seed{seed}"


def cmd_run(args) -> int:
    cfg = load_config(args.config, args.scheme, args.seed, args.out)
    for seed in cfg.seeds:
        result = ga.run(cfg.problem, cfg.ga_config(seed))
        d = write_run_report(result, _seed_dir(cfg.out, cfg.problem.scheme.name, seed),
                             timestamp=not args.no_timestamp)
        print(f"seed {seed}: best fitness {result.best_fitness:.6f} -> {d}")
    return EXIT_OK


def _write_comparison(report: analysis.ComparisonReport, out: Path, stem: str) -> None:
    (out / f"{stem}.txt").write_text(report.render_text())
    (out / f"{stem}.json").write_text(_dump_json(report.to_json()))


def _paired_saved(path: Path) -> dict[int, tuple]:
    path = Path(path)
    if (path / "result.json").is_file() or path.suffix == ".json":
        item = load_saved_result(path)
        return {item[3]: item}
    found = {}
    for p in sorted(path.glob("*/result.json")):
        item = load_saved_result(p)
        found[item[3]] = item
    if not found:
        raise ConfigError(f"no saved results under {path}")
    return found


def cmd_compare(args) -> int:
    margin = args.margin
    pairs = []  # (seed, city_a, city_b, grid, label_a, label_b)
    if args.saved:
        if len(args.saved) != 2 or args.config:
            raise UsageError("saved mode takes exactly two --saved paths and no --config")
        a, b = (_paired_saved(p) for p in args.saved)
        seeds = sorted(set(a) & set(b))
        if not seeds:
            raise ConfigError("the two saved result sets share no seed")
        for s in seeds:
            ca, ga_grid, la, _ = a[s]
            cb, gb_grid, lb, _ = b[s]
            if ga_grid != gb_grid:
                raise DimMismatch(f"seed {s}: the two results use different hazard grids")
            pairs.append((s, ca, cb, ga_grid, la, lb))
        out = Path(args.out or "floodga_compare")
    else:
        configs = list(args.config or [])
        if len(configs) > 2:
            raise UsageError("compare takes at most two --config files")
        if len(configs) == 2:
            cfg_a = load_config(configs[0], None, args.seed, args.out)
            cfg_b = load_config(configs[1], None, args.seed, args.out)
        else:
            path = configs[0] if configs else None
            cfg_a = load_config(path, "aspect", args.seed, args.out)
            cfg_b = load_config(path, "einarsson", args.seed, args.out)
        if cfg_a.grid != cfg_b.grid:
            raise DimMismatch("the two configs use different hazard grids")
        out = cfg_a.out
        for s in cfg_a.seeds:
            ra = ga.run(cfg_a.problem, cfg_a.ga_config(s))
            rb = ga.run(cfg_b.problem, cfg_b.ga_config(s))
            if args.keep_runs:
                ts = not args.no_timestamp
                write_run_report(ra, _seed_dir(out / "runs_a", ra.scheme_name, s), ts)
                write_run_report(rb, _seed_dir(out / "runs_b", rb.scheme_name, s), ts)
            pairs.append((s, decode(ra.best_genome), decode(rb.best_genome), cfg_a.grid,
                          ra.scheme_name, rb.scheme_name))

    out.mkdir(parents=True, exist_ok=True)
    reports, per_seed = [], {}
    for s, ca, cb, grid, la, lb in pairs:
        rep = analysis.compare_schemes(ca, cb, grid, margin, labels=(la, lb))
        _write_comparison(rep, out, f"compare_seed{s}")
        reports.append(rep)
        per_seed[str(s)] = rep.tags()
        print(f"seed {s}: " + ", ".join(f"{k}={t}" for k, t in rep.tags().items()))
    published = analysis.published_reference_report(margin)
    _write_comparison(published, out, "published_reference")
    summary = {
        "margin": margin,
        "seeds": [p[0] for p in pairs],
        "tags_per_seed": per_seed,
        "tag_counts": analysis.tag_counts(reports),
        "published_reference_tags": published.tags(),
    }
    if not args.no_timestamp:
        summary["generated_at"] = _timestamp()
    (out / "summary.json").write_text(_dump_json(summary))
    print("published reference: " + ", ".join(f"{k}={t}" for k, t in published.tags().items()))
    print(f"wrote comparison reports to {out}")
    return EXIT_OK


def cmd_derive_weights(args) -> int:
    if args.builtin:
        table = aspect_rating_table()
    else:
        if not args.table:
            raise UsageError("derive-weights needs a rating-table JSON path or --builtin")
        path = Path(args.table)
        if not path.is_file():
            raise ConfigError(f"rating table not found: {path}")
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
        table = rating_table_from_json(doc)
    totals = derive_totals(table)
    scheme = normalize(totals, name="derived")
    stated = table.stated_totals
    print(f"aspect weights: {', '.join(format(a, 'g') for a in table.aspect_weights)}")
    print(f"{'component':<24} {'derived':>8} {'stated':>8} {'weight':>10}")
    flags = []
    for k in COMPONENTS:
        st = "" if stated is None else format(stated[k], ".4g")
        print(f"{COMPONENT_LABELS[k]:<24} {totals[k]:>8.4f} {st:>8} {scheme.w[k]:>10.6f}")
        if stated is not None and abs(totals[k] - stated[k]) > 1e-3:
            flags.append((k, totals[k], stated[k]))
    print(f"sum of derived totals: {totals.sum():.4f}")
    for k, d, s in flags:
        print(f"FLAG: {COMPONENT_LABELS[k]} derived total {d:.4f} does not match stated total {s:g}; "
              f"the stated value is kept as canonical in the builtin scheme")
    return EXIT_OK


def cmd_oracle(args) -> int:
    cfg = load_config(args.config, args.scheme, args.seed, None)
    problem = cfg.problem
    if args.lam is not None:
        problem = dataclasses.replace(problem, cost=dataclasses.replace(problem.cost, lam=args.lam))
    mode = args.mode
    if mode == "auto":
        mode = "flat" if problem.n_bits <= oracle.MAX_EXHAUSTIVE_BITS else "separable"
    if mode == "flat":
        best = oracle.exhaustive_best(problem)
    else:
        best = oracle.separable_best(problem, workers=args.workers)
    print(f"mode: {mode}; states evaluated: {best.evaluated}")
    print(f"optimum fitness: {best.fitness!r}")
    print(render_city(best.city), end="")
    if args.check_ga:
        for seed in cfg.seeds:
            result = ga.run(problem, cfg.ga_config(seed))
            gap = (result.best_fitness - best.fitness) / abs(best.fitness) if best.fitness else \
                result.best_fitness - best.fitness
            print(f"seed {seed}: GA best {result.best_fitness!r}, relative gap {gap:.6%}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="floodga", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, multi_config=False):
        if multi_config:
            p.add_argument("--config", action="append", metavar="PATH", help="run config JSON (repeatable)")
        else:
            p.add_argument("--config", metavar="PATH", help="run config JSON")
        p.add_argument("--seed", type=int, action="append", metavar="N", help="seed (repeatable)")
        p.add_argument("--no-timestamp", action="store_true", help="omit generation timestamps")

    p = sub.add_parser("run", help="optimize a city with the GA and write reports")
    common(p)
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--scheme", metavar="NAME", help="override the config's weight scheme")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="compare optimized cities under two weight schemes")
    common(p, multi_config=True)
    p.add_argument("--saved", action="append", metavar="DIR", help="saved run output (give twice)")
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--margin", type=float, default=analysis.DEFAULT_MARGIN)
    p.add_argument("--keep-runs", action="store_true", help="also write the individual run reports")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("derive-weights", help="derive a weight scheme from a rating table")
    p.add_argument("table", nargs="?", metavar="TABLE_JSON")
    p.add_argument("--builtin", action="store_true", help="use the built-in aspect rating table")
    p.set_defaults(func=cmd_derive_weights)

    p = sub.add_parser("oracle", help="exact optimum by enumeration")
    common(p)
    p.add_argument("--scheme", metavar="NAME")
    p.add_argument("--mode", choices=("auto", "flat", "separable"), default="auto")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=float, help="override the cost trade-off")
    p.add_argument("--check-ga", action="store_true", help="also run the GA and print its gap")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (FloodGAError, OSError) as exc:
        print(f"floodga {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"floodga {args.command}: runtime error: {exc!r}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
