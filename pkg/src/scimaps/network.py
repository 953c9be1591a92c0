"""Country co-authorship networks built from record addresses."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence, TextIO

import numpy as np

from .errors import EmptyMatrixError
from .records import BiblioRecord, record_countries


@dataclass(frozen=True)
class ShareReport:
    total: int
    international: int
    percent: float


def percent_one_decimal(part: int, total: int) -> float:
    """``100 * part / total`` rounded half-up to one decimal."""
    if total <= 0:
        raise ValueError("total must be positive")
    value = (Decimal(100) * Decimal(part) / Decimal(total)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)
    return float(value)


def international_share(records: Sequence[BiblioRecord], merge_uk: bool = False) -> ShareReport:
    """Share of articles whose addresses resolve to two or more countries."""
    if not records:
        raise ValueError("records must be non-empty")
    international = sum(1 for r in records if len(record_countries(r, merge_uk)) >= 2)
    return ShareReport(len(records), international, percent_one_decimal(international, len(records)))


@dataclass(frozen=True)
class AffiliationMatrix:
    countries: tuple[str, ...]
    articles: tuple[str, ...]
    incidence: np.ndarray
    excluded: tuple[str, ...] = ()


@dataclass(frozen=True)
class CountryGraph:
    countries: tuple[str, ...]
    weights: np.ndarray

    def __post_init__(self):
        n = len(self.countries)
        if self.weights.shape != (n, n):
            raise ValueError("weights shape does not match countries")

    @property
    def isolated(self) -> tuple[str, ...]:
        return tuple(c for c, row in zip(self.countries, self.weights) if not np.any(row > 0))

    @property
    def degenerate(self) -> bool:
        return not np.any(self.weights > 0)

    def edges(self) -> list[tuple[int, int, float]]:
        """Undirected edges ``(i, j, w)`` with ``i < j`` and ``w > 0``."""
        n = len(self.countries)
        return [(i, j, self.weights[i, j]) for i in range(n) for j in range(i + 1, n) if self.weights[i, j] > 0]


@dataclass(frozen=True)
class CoreDecomposition:
    countries: tuple[str, ...]
    coreness: dict[str, int]
    max_k: int
    max_core: frozenset[str]
    degenerate: bool = False


@dataclass(frozen=True)
class CosineMatrix:
    countries: tuple[str, ...]
    values: np.ndarray
    isolated: tuple[str, ...] = ()


def build_affiliation(records: Sequence[BiblioRecord], merge_uk: bool = False) -> AffiliationMatrix:
    """Binary country x article incidence.

    Articles without any resolvable country are left out and listed in
    ``excluded``.
    """
    if not records:
        raise ValueError("records must be non-empty")
    kept: list[tuple[str, frozenset[str]]] = []
    excluded = []
    for r in records:
        cs = record_countries(r, merge_uk)
        if cs:
            kept.append((r.record_id, cs))
        else:
            excluded.append(r.record_id)
    if not kept:
        raise EmptyMatrixError(f"no article has a resolvable country ({len(excluded)} excluded)")
    countries = tuple(sorted(set().union(*(cs for _, cs in kept))))
    pos = {c: i for i, c in enumerate(countries)}
    inc = np.zeros((len(countries), len(kept)), dtype=np.int64)
    for j, (_, cs) in enumerate(kept):
        for c in cs:
            inc[pos[c], j] = 1
    return AffiliationMatrix(countries, tuple(rid for rid, _ in kept), inc, tuple(excluded))


def project(aff: AffiliationMatrix, fractional: bool = False) -> CountryGraph:
    """One-mode country x country projection with a zero diagonal.

    Whole counting by default: each shared article adds 1 to a pair.
    ``fractional`` weights an article with c countries by ``1 / (c - 1)``.
    """
    a = aff.incidence
    if fractional:
        per_article = a.sum(axis=0).astype(float)
        scale = np.where(per_article > 1, 1.0 / np.maximum(per_article - 1, 1), 0.0)
        w = (a * scale) @ a.T
    else:
        w = a @ a.T
    w = w.copy()
    np.fill_diagonal(w, 0)
    return CountryGraph(aff.countries, w)


def k_core(graph: CountryGraph) -> CoreDecomposition:
    """Binary k-core decomposition by min-degree peeling (weights ignored)."""
    n = len(graph.countries)
    if n == 0:
        raise ValueError("graph has no nodes")
    adj = [set(np.nonzero(graph.weights[i] > 0)[0].tolist()) - {i} for i in range(n)]
    degree = [len(s) for s in adj]
    max_deg = max(degree)
    buckets: list[set[int]] = [set() for _ in range(max_deg + 1)]
    for i, d in enumerate(degree):
        buckets[d].add(i)
    core = [0] * n
    removed = [False] * n
    k = 0
    for _ in range(n):
        d = next(b for b in range(max_deg + 1) if buckets[b])
        k = max(k, d)
        v = min(buckets[d])
        buckets[d].discard(v)
        removed[v] = True
        core[v] = k
        for u in adj[v]:
            if not removed[u] and degree[u] > d:
                buckets[degree[u]].discard(u)
                degree[u] -= 1
                buckets[degree[u]].add(u)
    coreness = {graph.countries[i]: core[i] for i in range(n)}
    max_k = max(core)
    max_core = frozenset(c for c, v in coreness.items() if v == max_k)
    return CoreDecomposition(graph.countries, coreness, max_k, max_core, degenerate=graph.degenerate)


def salton_cosine(rows) -> np.ndarray:
    """Cosine between every pair of rows; all-zero rows give 0 everywhere."""
    x = np.asarray(rows, dtype=float)
    norms = np.sqrt(np.sum(x * x, axis=1))
    nz = norms > 0
    out = np.zeros((x.shape[0], x.shape[0]))
    xn = x[nz] / norms[nz, None]
    sub = np.clip(xn @ xn.T, 0.0, 1.0) if np.all(x >= 0) else np.clip(xn @ xn.T, -1.0, 1.0)
    out[np.ix_(nz, nz)] = sub
    idx = np.nonzero(nz)[0]
    out[idx, idx] = 1.0
    return out


def cosine_normalize(graph: CountryGraph) -> CosineMatrix:
    """Salton's cosine between the zero-diagonal weight rows of the graph."""
    values = salton_cosine(graph.weights)
    return CosineMatrix(graph.countries, values, graph.isolated)


def threshold_network(cos: CosineMatrix, cutoff: float = 0.1) -> CountryGraph:
    """Keep pairs whose cosine is strictly greater than ``cutoff``."""
    w = np.where(cos.values > cutoff, cos.values, 0.0)
    np.fill_diagonal(w, 0.0)
    return CountryGraph(cos.countries, w)


# --- reports -----------------------------------------------------------------


@dataclass
class FieldSummary:
    """One row of the share table and one of the core-group table."""

    field: str
    year: int
    share: ShareReport
    countries: int = 0
    connected: int = 0
    core_k: int = 0
    core_size: int = 0
    core_members: tuple[str, ...] = ()
    excluded: int = 0
    notes: list[str] = field(default_factory=list)


def summarize(records: Sequence[BiblioRecord], field_name: str, year: int, merge_uk: bool = False):
    """Share, affiliation, projection and core analysis for one journal set."""
    summary = FieldSummary(field_name, year, international_share(records, merge_uk))
    aff = build_affiliation(records, merge_uk)
    graph = project(aff)
    cores = k_core(graph)
    summary.countries = len(graph.countries)
    summary.connected = len(graph.countries) - len(graph.isolated)
    summary.core_k = cores.max_k
    summary.core_size = len(cores.max_core)
    summary.core_members = tuple(sorted(cores.max_core))
    summary.excluded = len(aff.excluded)
    if cores.degenerate:
        summary.notes.append("no co-authorship edges")
    return summary, aff, graph, cores


def write_share_csv(rows: Sequence[FieldSummary], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["field", "year", "articles", "international", "percent"])
    for s in rows:
        writer.writerow([s.field, s.year, s.share.total, s.share.international, f"{s.share.percent:.1f}"])


def write_core_csv(rows: Sequence[FieldSummary], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["field", "year", "countries", "countries_in_network", "core_k", "core_size", "core_members"])
    for s in rows:
        writer.writerow([s.field, s.year, s.countries, s.connected, s.core_k, s.core_size, ";".join(s.core_members)])
