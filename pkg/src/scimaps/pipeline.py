"""Pipeline stages and their on-disk artifacts.

Each stage takes in-memory inputs, writes its artifacts into a directory and
returns its results. The CLI subcommands load a stage's inputs from the
previous stage's files; ``run`` chains the stages in memory. Both paths use
the same writers, so their outputs are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import __version__
from .citation import (
    CitationEnvironment,
    JournalCitationMatrix,
    build_matrix,
    citation_environment,
    find_seed_journals,
    pick_seed,
    write_matrix_csv,
)
from .config import RunConfig
from .errors import ConfigError, EmptyMatrixError, SchemaError
from .factors import (
    Correlation,
    FactorModel,
    compare_years,
    correlation_matrix,
    fit,
    write_correlation_csv,
    write_loadings_csv,
    write_timeline_csv,
)
from .formats import write_dl, write_net
from .network import (
    AffiliationMatrix,
    FieldSummary,
    cosine_normalize,
    project,
    summarize,
    threshold_network,
    write_core_csv,
    write_share_csv,
)
from .records import BiblioRecord, CitedRef, ParseWarning, parse_file, write_warnings_csv
from .stimulus import StimulusMap, embed, plot_map, write_map_csv

log = logging.getLogger(__name__)

RECORDS_SCHEMA = "scimaps.records/1"
ENVIRONMENT_SCHEMA = "scimaps.environment/1"
NETWORKS_SCHEMA = "scimaps.networks/1"


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _open(path: Path):
    path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", encoding="utf-8", newline="\n")


def _dump_json(path: Path, data) -> None:
    _write_text(path, json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def load_json(path: str | Path, schema: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    found = data.get("schema") if isinstance(data, dict) else None
    if found != schema:
        raise SchemaError(f"{path}: expected schema {schema}, found {found}")
    return data


# --- records -------------------------------------------------------------------


def records_to_json(records: Sequence[BiblioRecord]) -> dict:
    return {
        "schema": RECORDS_SCHEMA,
        "records": [
            {
                "record_id": r.record_id,
                "journal": r.journal,
                "pub_year": r.pub_year,
                "title": r.title,
                "authors": list(r.authors),
                "addresses": list(r.addresses),
                "cited_refs": [[c.cited_journal, c.cited_year] for c in r.cited_refs],
                "extra": [[tag, list(values)] for tag, values in r.extra],
            }
            for r in records
        ],
    }


def records_from_json(data: dict) -> list[BiblioRecord]:
    return [
        BiblioRecord(
            record_id=d["record_id"],
            journal=d["journal"],
            pub_year=d["pub_year"],
            title=d.get("title", ""),
            authors=tuple(d["authors"]),
            addresses=tuple(d["addresses"]),
            cited_refs=tuple(CitedRef(j, y) for j, y in d["cited_refs"]),
            extra=tuple((tag, tuple(v)) for tag, v in d.get("extra", [])),
        )
        for d in data["records"]
    ]


def stage_parse(corpus_paths: Sequence[Path], outdir: Path) -> list[BiblioRecord]:
    records: list[BiblioRecord] = []
    warnings: list[ParseWarning] = []
    seen = set()
    for path in corpus_paths:
        if not Path(path).is_file():
            raise ConfigError(f"corpus file {str(path)!r} not found")
        recs, warns = parse_file(path)
        for r in recs:
            if r.record_id in seen:
                warns.append(ParseWarning(0, r.record_id, f"duplicate record id across files ({Path(path).name})"))
                continue
            seen.add(r.record_id)
            records.append(r)
        warnings.extend(warns)
    _dump_json(outdir / "records.json", records_to_json(records))
    with _open(outdir / "parse_warnings.csv") as fh:
        write_warnings_csv(warnings, fh)
    log.info("parsed %d records (%d warnings)", len(records), len(warnings))
    return records


# --- journals ----------------------------------------------------------------


def stage_matrix(records: Sequence[BiblioRecord], year: int, cfg: RunConfig, outdir: Path) -> JournalCitationMatrix:
    matrix = build_matrix(records, year, binary=cfg.counting == "binary")
    with _open(outdir / "citation_matrix.csv") as fh:
        write_matrix_csv(matrix, fh)
    return matrix


def resolve_seed(cfg: RunConfig, matrix: JournalCitationMatrix) -> str:
    if cfg.seed:
        return cfg.seed
    candidates = find_seed_journals(matrix.journals, cfg.seed_keywords)
    return pick_seed(matrix, candidates)


def stage_env(
    matrix: JournalCitationMatrix, seed: str, cfg: RunConfig, outdir: Path
) -> tuple[CitationEnvironment, Correlation]:
    env = citation_environment(matrix, seed, cfg.env_threshold, cfg.env_direction)
    corr = correlation_matrix(env, pattern=cfg.pattern, scope=cfg.scope)
    _dump_json(
        outdir / "environment.json",
        {
            "schema": ENVIRONMENT_SCHEMA,
            "seed": env.seed,
            "year": env.year,
            "threshold": env.threshold,
            "direction": env.direction,
            "received": matrix.received(seed),
            "members": list(env.members),
        },
    )
    with _open(outdir / "correlation.csv") as fh:
        write_correlation_csv(corr, fh)
    return env, corr


def stage_factors(corr: Correlation, cfg: RunConfig, outdir: Path) -> FactorModel:
    model = fit(corr, n_factors=cfg.n_factors, rotation=cfg.rotation, load_threshold=cfg.load_threshold)
    with _open(outdir / "loadings.csv") as fh:
        write_loadings_csv(model, fh)
    return model


def stage_map(corr: Correlation, model: FactorModel | None, cfg: RunConfig, outdir: Path, title: str | None = None) -> StimulusMap:
    smap = embed(corr.values, corr.labels, strict=False, transform=cfg.dissimilarity)
    if smap.degenerate:
        log.warning("stimulus map is degenerate; wrote the 1-D fallback")
    with _open(outdir / "stimulus.csv") as fh:
        write_map_csv(smap, fh)
    outdir.mkdir(parents=True, exist_ok=True)
    plot_map(smap, outdir / "stimulus.svg", model.clusters if model else None, title=title)
    return smap


def stage_timeline(models: Mapping[int, FactorModel], seed: str, cfg: RunConfig, outdir: Path):
    timeline = compare_years(models, seed, min_jaccard=cfg.cluster_jaccard)
    with _open(outdir / "timeline.csv") as fh:
        write_timeline_csv(timeline, fh)
    return timeline


# --- countries -----------------------------------------------------------------


@dataclass
class FieldNetwork:
    field: str
    journals: tuple[str, ...]
    affiliation: AffiliationMatrix


def _fields(records: Sequence[BiblioRecord], model: FactorModel | None):
    yield "all", (), list(records)
    if model is None:
        return
    for f in sorted(model.clusters):
        journals = model.clusters[f]
        if journals:
            subset = [r for r in records if r.journal in journals]
            yield f"factor{f}", journals, subset


def stage_countries(
    records: Sequence[BiblioRecord], year: int, model: FactorModel | None, cfg: RunConfig, outdir: Path
) -> tuple[list[FieldSummary], list[FieldNetwork], list[str]]:
    """Share and core-group tables for the whole year and for each cluster.

    An empty affiliation matrix for the whole year is an error; for a single
    cluster the field is skipped and noted.
    """
    selected = [r for r in records if r.pub_year == year]
    if not selected:
        raise EmptyMatrixError(f"no records for year {year}")
    summaries, networks, skipped = [], [], []
    for name, journals, subset in _fields(selected, model):
        if not subset:
            skipped.append(f"{name}: no records")
            continue
        try:
            summary, aff, _, _ = summarize(subset, name, year, cfg.merge_uk)
        except EmptyMatrixError as exc:
            if name == "all":
                raise
            skipped.append(f"{name}: {exc}")
            continue
        summaries.append(summary)
        networks.append(FieldNetwork(name, tuple(journals), aff))
    with _open(outdir / "international_share.csv") as fh:
        write_share_csv(summaries, fh)
    with _open(outdir / "core_groups.csv") as fh:
        write_core_csv(summaries, fh)
    _dump_json(outdir / "networks.json", networks_to_json(networks, year, cfg.merge_uk, skipped))
    return summaries, networks, skipped


def networks_to_json(networks: Sequence[FieldNetwork], year: int, merge_uk: bool, skipped=()) -> dict:
    return {
        "schema": NETWORKS_SCHEMA,
        "year": year,
        "merge_uk": merge_uk,
        "skipped": list(skipped),
        "fields": [
            {
                "field": n.field,
                "journals": list(n.journals),
                "countries": list(n.affiliation.countries),
                "articles": list(n.affiliation.articles),
                "excluded": list(n.affiliation.excluded),
                "incidence": n.affiliation.incidence.tolist(),
            }
            for n in networks
        ],
    }


def networks_from_json(data: dict) -> list[FieldNetwork]:
    out = []
    for d in data["fields"]:
        inc = np.array(d["incidence"], dtype=np.int64).reshape(len(d["countries"]), len(d["articles"]))
        aff = AffiliationMatrix(tuple(d["countries"]), tuple(d["articles"]), inc, tuple(d["excluded"]))
        out.append(FieldNetwork(d["field"], tuple(d["journals"]), aff))
    return out


def stage_export(networks: Sequence[FieldNetwork], cfg: RunConfig, outdir: Path) -> list[Path]:
    written = []
    for n in networks:
        graph = project(n.affiliation)
        cos = threshold_network(cosine_normalize(graph), cfg.cosine_cutoff)
        base = outdir / n.field
        for name, text in (
            ("coauthorship.net", write_net(graph)),
            ("cosine.net", write_net(cos)),
            ("affiliation.dl", write_dl(n.affiliation)),
        ):
            _write_text(base / name, text)
            written.append(base / name)
    return written


# --- full run ------------------------------------------------------------------


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def run(cfg: RunConfig, out: Path, years: Sequence[int] | None = None) -> dict:
    """Run every stage for every configured year and write the manifest."""
    selected = sorted(cfg.years) if not years else sorted(years)
    for y in selected:
        if y not in cfg.years:
            raise ConfigError(f"year {y} not configured")
    out.mkdir(parents=True, exist_ok=True)

    parsed = {}
    matrices = {}
    for y in selected:
        ydir = out / str(y)
        parsed[y] = stage_parse(cfg.corpus_paths(y), ydir)
        matrices[y] = stage_matrix(parsed[y], y, cfg, ydir)
    seed = resolve_seed(cfg, matrices[selected[-1]])

    models: dict[int, FactorModel] = {}
    summary: dict = {}
    for y in selected:
        ydir = out / str(y)
        env, corr = stage_env(matrices[y], seed, cfg, ydir)
        model = stage_factors(corr, cfg, ydir)
        models[y] = model
        stage_map(corr, model, cfg, ydir, title=f"PLOT OF STIMULUS SPACE ({y})")
        _, networks, skipped = stage_countries(parsed[y], y, model, cfg, ydir)
        stage_export(networks, cfg, ydir)
        summary[str(y)] = {
            "records": len(parsed[y]),
            "environment": list(env.members),
            "n_factors": model.n_factors,
            "clusters": {str(f): list(m) for f, m in model.clusters.items()},
            "ctj": {str(f): j for f, j in model.ctj.items()},
            "skipped_fields": skipped,
        }

    if len(selected) >= 2:
        stage_timeline(models, seed, cfg, out)

    manifest = {
        "schema": "scimaps.manifest/1",
        "version": __version__,
        "seed": seed,
        "settings": cfg.manifest(),
        "years": selected,
        "summary": summary,
    }
    files = sorted(p for p in out.rglob("*") if p.is_file() and p.name != "manifest.json")
    manifest["files"] = {p.relative_to(out).as_posix(): _digest(p) for p in files}
    _dump_json(out / "manifest.json", manifest)
    return manifest
