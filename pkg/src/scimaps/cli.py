"""Command-line interface.

``scimaps run --config demo.ini`` runs the whole pipeline; the other
subcommands run one stage on the previous stage's files.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import pipeline
from .citation import read_matrix_csv
from .config import RunConfig, load_config, override, parse_bool
from .errors import ConfigError, ScimapsError
from .factors import read_correlation_csv, read_loadings_csv

log = logging.getLogger("scimaps")


def _bool(text: str) -> bool:
    try:
        return parse_bool(text, "--merge-uk")
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _settings(args) -> RunConfig:
    """Config file settings (if any) overridden by command-line flags."""
    if getattr(args, "config", None):
        cfg = load_config(args.config)
    else:
        cfg = RunConfig(seed="-", years={0: ()})
    changes = {
        "seed": getattr(args, "seed", None),
        "env_threshold": getattr(args, "env_threshold", None),
        "cosine_cutoff": getattr(args, "cosine_cutoff", None),
        "merge_uk": getattr(args, "merge_uk", None),
        "n_factors": getattr(args, "n_factors", None),
        "load_threshold": getattr(args, "load_threshold", None),
    }
    return override(cfg, **changes)


def _add_common(p: argparse.ArgumentParser, *names: str) -> None:
    # SUPPRESS keeps a subcommand from resetting flags given before it
    opt = {"default": argparse.SUPPRESS}
    p.add_argument("-v", "--verbose", action="store_true", **opt)
    if "config" in names:
        p.add_argument("--config", help="INI config file", **opt)
    if "out" in names:
        p.add_argument("--out", help="output directory", **opt)
    if "year" in names:
        p.add_argument("--year", type=int, action="append", help="corpus year (repeatable for run)", **opt)
    if "seed" in names:
        p.add_argument("--seed", help="seed journal (normalized name)", **opt)
    if "env" in names:
        p.add_argument("--env-threshold", type=float, help="citation environment threshold (default 0.01)", **opt)
    if "cosine" in names:
        p.add_argument("--cosine-cutoff", type=float, help="keep cosine edges strictly above this (default 0.1)", **opt)
    if "merge" in names:
        p.add_argument("--merge-uk", type=_bool, help="merge England/Scotland/Wales/North Ireland into UK", **opt)
    if "factors" in names:
        p.add_argument("--n-factors", type=int, help="number of factors (default: Kaiser criterion)", **opt)
        p.add_argument("--load-threshold", type=float, help="cluster assignment threshold (default 0.5)", **opt)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scimaps", description=__doc__.splitlines()[0])
    _add_common(parser, "config", "out", "year", "seed", "env", "cosine", "merge")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("run", help="full pipeline from a config file")
    _add_common(p, "config", "out", "year", "seed", "env", "cosine", "merge", "factors")

    p = sub.add_parser("parse", help="tagged corpus -> records.json, parse_warnings.csv")
    p.add_argument("corpus", nargs="+")
    _add_common(p, "out")

    p = sub.add_parser("matrix", help="records.json -> citation_matrix.csv")
    p.add_argument("--records", required=True)
    _add_common(p, "config", "out", "year")

    p = sub.add_parser("env", help="citation_matrix.csv -> environment.json, correlation.csv")
    p.add_argument("--matrix", required=True)
    _add_common(p, "config", "out", "year", "seed", "env")

    p = sub.add_parser("factors", help="correlation.csv -> loadings.csv")
    p.add_argument("--correlation", required=True)
    _add_common(p, "config", "out", "factors")

    p = sub.add_parser("map", help="correlation.csv -> stimulus.csv, stimulus.svg")
    p.add_argument("--correlation", required=True)
    p.add_argument("--loadings", help="loadings.csv for legend grouping")
    p.add_argument("--title")
    _add_common(p, "config", "out")

    p = sub.add_parser("countries", help="records.json -> share/core tables, networks.json")
    p.add_argument("--records", required=True)
    p.add_argument("--loadings", help="loadings.csv; adds one field per cluster")
    _add_common(p, "config", "out", "year", "merge")

    p = sub.add_parser("export", help="networks.json -> .net and .dl files")
    p.add_argument("--networks", required=True)
    _add_common(p, "config", "out", "cosine")

    p = sub.add_parser("timeline", help="per-year loadings.csv -> timeline.csv")
    p.add_argument("loadings", nargs="+", metavar="YEAR=LOADINGS_CSV")
    _add_common(p, "config", "out", "seed")
    return parser


def _one_year(args) -> int:
    if not args.year or len(args.year) != 1:
        raise ConfigError("--year: exactly one year required for this stage")
    return args.year[0]


def _out(args, default: str = ".") -> Path:
    return Path(args.out or default)


def _read(path, reader, **kw):
    with open(path, encoding="utf-8", newline="") as fh:
        return reader(fh, **kw)


def dispatch(args) -> int:
    for name in ("config", "out", "year", "seed", "verbose"):
        if not hasattr(args, name):
            setattr(args, name, None)
    command = args.command or ("run" if args.config else None)
    if command is None:
        raise ConfigError("no subcommand given (try 'run --config FILE')")

    if command == "run":
        if not args.config:
            raise ConfigError("--config is required for run")
        cfg = _settings(args)
        out = Path(args.out) if args.out else Path(cfg.base_dir) / cfg.out
        manifest = pipeline.run(cfg, out, args.year)
        log.info("wrote %d files to %s", len(manifest["files"]) + 1, out)
        return 0

    if command == "parse":
        pipeline.stage_parse([Path(p) for p in args.corpus], _out(args))
        return 0

    cfg = _settings(args)
    out = _out(args)
    if command == "matrix":
        records = pipeline.records_from_json(pipeline.load_json(args.records, pipeline.RECORDS_SCHEMA))
        pipeline.stage_matrix(records, _one_year(args), cfg, out)
    elif command == "env":
        year = _one_year(args)
        matrix = _read(args.matrix, read_matrix_csv, year=year)
        pipeline.stage_env(matrix, pipeline.resolve_seed(cfg, matrix), cfg, out)
    elif command == "factors":
        pipeline.stage_factors(_read(args.correlation, read_correlation_csv), cfg, out)
    elif command == "map":
        model = _read(args.loadings, read_loadings_csv, load_threshold=cfg.load_threshold) if args.loadings else None
        pipeline.stage_map(_read(args.correlation, read_correlation_csv), model, cfg, out, title=args.title)
    elif command == "countries":
        records = pipeline.records_from_json(pipeline.load_json(args.records, pipeline.RECORDS_SCHEMA))
        model = _read(args.loadings, read_loadings_csv, load_threshold=cfg.load_threshold) if args.loadings else None
        pipeline.stage_countries(records, _one_year(args), model, cfg, out)
    elif command == "export":
        data = pipeline.load_json(args.networks, pipeline.NETWORKS_SCHEMA)
        pipeline.stage_export(pipeline.networks_from_json(data), cfg, out)
    elif command == "timeline":
        models = {}
        for item in args.loadings:
            year, _, path = item.partition("=")
            if not year.isdigit() or not path:
                raise ConfigError(f"expected YEAR=PATH, got {item!r}")
            models[int(year)] = _read(path, read_loadings_csv, load_threshold=cfg.load_threshold)
        if not args.seed and (cfg.seed in (None, "-")):
            raise ConfigError("--seed is required for timeline")
        pipeline.stage_timeline(models, args.seed or cfg.seed, cfg, out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return dispatch(args)
    except ScimapsError as exc:
        report = {"error": exc.kind, "exit_code": exc.exit_code, "message": str(exc)}
        print(json.dumps(report), file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(json.dumps({"error": "io", "exit_code": 3, "message": str(exc)}), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
