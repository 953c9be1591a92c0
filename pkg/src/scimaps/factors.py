"""Factor analysis of citing patterns.

Principal components are extracted from the Pearson correlation matrix of
the journals' citing patterns, rotated with normalized varimax, and the
rotated loadings are used to group journals into clusters. The member of a
cluster that loads highest on its factor is the cluster's central tendency
journal (CTJ).

Factors are numbered from 1, as in a printed loading table.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence, TextIO

import numpy as np

from .citation import CitationEnvironment
from .errors import DegenerateVariableError, InvalidCorrelationError, SchemaError
from .linalg import jacobi_eigh

KAISER_TOL = 1e-10
SYMMETRY_TOL = 1e-9
PSD_TOL = 1e-8
EMERGE_JACCARD = 0.3

EVENT_KINDS = ("EMERGED", "MERGED", "RECEDED", "CTJ_GAINED", "CTJ_LOST")


@dataclass(frozen=True)
class Correlation:
    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        n = len(self.labels)
        if self.values.shape != (n, n):
            raise InvalidCorrelationError(f"correlation shape {self.values.shape} does not match {n} labels")


def pearson_matrix(data, labels: Sequence[str]) -> Correlation:
    """Pearson correlations between the columns of ``data`` (cases x variables)."""
    x = np.asarray(data, dtype=float)
    z = x - x.mean(axis=0)
    ss = np.sum(z * z, axis=0)
    for j, s in enumerate(ss):
        if s == 0.0:
            raise DegenerateVariableError(labels[j])
    r = (z.T @ z) / np.sqrt(np.outer(ss, ss))
    r = np.clip((r + r.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(r, 1.0)
    return Correlation(tuple(labels), r)


def correlation_matrix(env: CitationEnvironment, pattern: str = "citing", scope: str = "full") -> Correlation:
    """Correlate the citing patterns of the environment's member journals.

    A member's citing pattern is its row of the citation matrix (``pattern=
    "cited"`` uses its column instead). ``scope="full"`` takes the vector over
    every journal of the full matrix; ``scope="environment"`` restricts it to
    the members.
    """
    if len(env.members) < 3:
        raise InvalidCorrelationError(f"environment of {env.seed!r} has {len(env.members)} members; need at least 3")
    if pattern not in ("citing", "cited"):
        raise ValueError("pattern must be 'citing' or 'cited'")
    if scope == "full":
        counts = env.matrix.counts
        idx = [env.matrix.journals.index(m) for m in env.members]
        data = counts[idx, :].T if pattern == "citing" else counts[:, idx]
    elif scope == "environment":
        data = env.submatrix.T if pattern == "citing" else env.submatrix
    else:
        raise ValueError("scope must be 'full' or 'environment'")
    return pearson_matrix(data, env.members)


def validate_correlation(r: np.ndarray) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1] or r.shape[0] == 0:
        raise InvalidCorrelationError("correlation matrix must be square and non-empty")
    if not np.all(np.isfinite(r)):
        raise InvalidCorrelationError("correlation matrix has non-finite entries")
    if np.abs(r - r.T).max() > SYMMETRY_TOL:
        raise InvalidCorrelationError("correlation matrix is not symmetric")
    if np.abs(np.diag(r) - 1.0).max() > SYMMETRY_TOL:
        raise InvalidCorrelationError("correlation matrix diagonal is not 1")
    if np.abs(r).max() > 1.0 + SYMMETRY_TOL:
        raise InvalidCorrelationError("correlation entries outside [-1, 1]")
    return (r + r.T) / 2.0


def varimax_criterion(loadings: np.ndarray) -> float:
    sq = loadings**2
    p = sq.shape[0]
    return float(np.sum(p * np.sum(sq**2, axis=0) - np.sum(sq, axis=0) ** 2) / p**2)


def varimax(loadings, normalize: bool = True, tol: float = 1e-10, max_sweeps: int = 500):
    """Orthogonal varimax rotation by successive planar rotations.

    Returns ``(rotated, rotation)`` with ``rotated = loadings @ rotation``.
    Stops once no pairwise rotation angle in a sweep exceeds ``tol``.
    """
    a = np.array(loadings, dtype=float)
    p, k = a.shape
    rot = np.eye(k)
    if k < 2:
        return a.copy(), rot
    if normalize:
        h = np.sqrt(np.sum(a * a, axis=1))
        h[h == 0.0] = 1.0
    else:
        h = np.ones(p)
    b = a / h[:, None]
    for _ in range(max_sweeps):
        largest = 0.0
        for i in range(k - 1):
            for j in range(i + 1, k):
                x, y = b[:, i], b[:, j]
                u = x * x - y * y
                v = 2.0 * x * y
                num = 2.0 * (p * np.dot(u, v) - u.sum() * v.sum())
                den = p * (np.dot(u, u) - np.dot(v, v)) - (u.sum() ** 2 - v.sum() ** 2)
                phi = math.atan2(num, den) / 4.0
                largest = max(largest, abs(phi))
                if phi == 0.0:
                    continue
                c, s = math.cos(phi), math.sin(phi)
                bi, bj = b[:, i].copy(), b[:, j].copy()
                b[:, i] = c * bi + s * bj
                b[:, j] = -s * bi + c * bj
                ri, rj = rot[:, i].copy(), rot[:, j].copy()
                rot[:, i] = c * ri + s * rj
                rot[:, j] = -s * ri + c * rj
        if largest < tol:
            break
    return a @ rot, rot


@dataclass(frozen=True)
class ClusterAssignment:
    clusters: dict[int, tuple[str, ...]]
    unclustered: tuple[str, ...]
    complex: tuple[str, ...]
    assigned: dict[str, int]


@dataclass(frozen=True)
class FactorModel:
    variables: tuple[str, ...]
    loadings: np.ndarray
    correlation: np.ndarray | None = None
    eigenvalues: np.ndarray | None = None
    unrotated: np.ndarray | None = None
    rotation: np.ndarray | None = None
    load_threshold: float = 0.5
    clusters: dict[int, tuple[str, ...]] = field(default_factory=dict)
    ctj: dict[int, str | None] = field(default_factory=dict)
    unclustered: tuple[str, ...] = ()
    complex: tuple[str, ...] = ()

    @property
    def n_factors(self) -> int:
        return self.loadings.shape[1]

    @property
    def communalities(self) -> np.ndarray:
        return np.sum(self.loadings**2, axis=1)

    @property
    def explained_variance(self) -> np.ndarray:
        return np.sum(self.loadings**2, axis=0)

    @classmethod
    def from_loadings(cls, variables: Sequence[str], loadings, load_threshold: float = 0.5) -> "FactorModel":
        """Wrap an existing loading table (e.g. a published one)."""
        lo = np.array(loadings, dtype=float)
        if lo.ndim != 2 or lo.shape[0] != len(variables) or lo.shape[1] < 1:
            raise ValueError("loadings must be variables x factors")
        return cls(tuple(variables), lo).with_threshold(load_threshold)

    def with_threshold(self, load_threshold: float) -> "FactorModel":
        a = assign_clusters(self, load_threshold)
        model = replace(
            self,
            load_threshold=load_threshold,
            clusters=a.clusters,
            unclustered=a.unclustered,
            complex=a.complex,
            ctj={},
        )
        ctj = {f: central_tendency_journal(model, f) for f in range(1, model.n_factors + 1)}
        return replace(model, ctj=ctj)

    def factor_of(self, journal: str) -> int | None:
        for f, members in self.clusters.items():
            if journal in members:
                return f
        return None


def kaiser_count(eigenvalues) -> int:
    return max(1, int(np.sum(np.asarray(eigenvalues) >= 1.0 - KAISER_TOL)))


def fit(
    correlation,
    n_factors: int | None = None,
    labels: Sequence[str] | None = None,
    rotation: str = "varimax",
    load_threshold: float = 0.5,
) -> FactorModel:
    """Principal-component factor model of a correlation matrix.

    Without ``n_factors`` the Kaiser criterion (eigenvalue >= 1) decides how
    many components to keep. Loadings are rotated (``rotation="varimax"`` or
    ``"none"``), each factor is signed so its largest-magnitude loading is
    positive, and factors are ordered by explained variance.
    """
    if isinstance(correlation, Correlation):
        labels = correlation.labels if labels is None else labels
        correlation = correlation.values
    r = validate_correlation(correlation)
    n = r.shape[0]
    labels = tuple(labels) if labels is not None else tuple(f"V{i + 1}" for i in range(n))
    if len(labels) != n:
        raise ValueError("labels do not match correlation size")
    if rotation not in ("varimax", "none"):
        raise ValueError("rotation must be 'varimax' or 'none'")

    eigenvalues, vectors = jacobi_eigh(r)
    if eigenvalues[-1] < -PSD_TOL * n:
        raise InvalidCorrelationError(f"correlation matrix is not positive semidefinite (eigenvalue {eigenvalues[-1]:.3g})")
    k = kaiser_count(eigenvalues) if n_factors is None else int(n_factors)
    if not 1 <= k <= n:
        raise ValueError(f"n_factors must lie in [1, {n}]")

    unrotated = vectors[:, :k] * np.sqrt(np.clip(eigenvalues[:k], 0.0, None))
    if rotation == "varimax":
        loadings, rot = varimax(unrotated)
    else:
        loadings, rot = unrotated.copy(), np.eye(k)

    for j in range(k):
        i = int(np.argmax(np.abs(loadings[:, j])))
        if loadings[i, j] < 0:
            loadings[:, j] *= -1.0
            rot[:, j] *= -1.0
    order = np.argsort(-np.sum(loadings**2, axis=0), kind="stable")
    loadings = loadings[:, order]
    rot = rot[:, order]

    model = FactorModel(
        variables=labels,
        loadings=loadings,
        correlation=r,
        eigenvalues=eigenvalues,
        unrotated=unrotated,
        rotation=rot,
    )
    return model.with_threshold(load_threshold)


def assign_clusters(model: FactorModel, load_threshold: float = 0.5) -> ClusterAssignment:
    """Assign each journal to the factor of its largest absolute loading.

    A journal whose largest absolute loading is below ``load_threshold``
    stays unclustered. A clustered journal with a second loading at or above
    the threshold is reported as complex.
    """
    lo = np.abs(model.loadings)
    clusters: dict[int, list[str]] = {f: [] for f in range(1, lo.shape[1] + 1)}
    unclustered, complex_, assigned = [], [], {}
    for name, row in zip(model.variables, lo):
        f = int(np.argmax(row))
        if row[f] >= load_threshold:
            clusters[f + 1].append(name)
            assigned[name] = f + 1
            if int(np.sum(row >= load_threshold)) >= 2:
                complex_.append(name)
        else:
            unclustered.append(name)
    return ClusterAssignment(
        clusters={f: tuple(sorted(m)) for f, m in clusters.items()},
        unclustered=tuple(sorted(unclustered)),
        complex=tuple(sorted(complex_)),
        assigned=assigned,
    )


def central_tendency_journal(model: FactorModel, factor: int) -> str | None:
    """Cluster member loading highest on ``factor``; lexicographic on ties."""
    if not 1 <= factor <= model.n_factors:
        raise IndexError(f"factor {factor} out of range 1..{model.n_factors}")
    members = model.clusters.get(factor, ())
    if not members:
        return None
    col = factor - 1
    pos = {v: i for i, v in enumerate(model.variables)}
    return min(members, key=lambda m: (-abs(model.loadings[pos[m], col]), m))


# --- longitudinal comparison -------------------------------------------------


@dataclass(frozen=True)
class TimelineEvent:
    year: int
    kind: str
    detail: str


@dataclass(frozen=True)
class ClusterTimeline:
    years: tuple[int, ...]
    snapshots: dict[int, dict[int, tuple[str, ...]]]
    events: tuple[TimelineEvent, ...]


def jaccard(a, b) -> float:
    a, b = set(a), set(b)
    union = a | b
    return len(a & b) / len(union) if union else 0.0


def _best(target, candidates: Mapping[int, tuple[str, ...]]):
    best_f, best_j = None, 0.0
    for f in sorted(candidates):
        j = jaccard(target, candidates[f])
        if j > best_j:
            best_f, best_j = f, j
    return best_f, best_j


def _label(f, members):
    return f"factor {f} [{';'.join(members)}]"


def compare_years(snapshots: Mapping[int, FactorModel], seed: str, min_jaccard: float = EMERGE_JACCARD) -> ClusterTimeline:
    """Match clusters of adjacent years and report structural events.

    Clusters are matched by maximum Jaccard overlap of their member sets.
    A cluster without a predecessor overlapping at least ``min_jaccard`` has
    EMERGED; one without such a successor has RECEDED; two or more
    predecessors whose best match is the same successor have MERGED. Gains
    and losses of CTJ status by ``seed`` are reported as well.
    """
    years = tuple(sorted(snapshots))
    if len(years) < 2:
        raise ValueError("need at least two years to compare")
    clusters = {y: {f: m for f, m in snapshots[y].clusters.items() if m} for y in years}
    events: list[TimelineEvent] = []
    for y0, y1 in zip(years, years[1:]):
        prev, succ = clusters[y0], clusters[y1]
        for f in sorted(succ):
            _, j = _best(succ[f], prev)
            if j < min_jaccard:
                events.append(TimelineEvent(y1, "EMERGED", _label(f, succ[f])))
        merged: dict[int, list[int]] = {}
        for f in sorted(prev):
            g, j = _best(prev[f], succ)
            if g is None or j < min_jaccard:
                events.append(TimelineEvent(y1, "RECEDED", _label(f, prev[f])))
            else:
                merged.setdefault(g, []).append(f)
        for g, sources in sorted(merged.items()):
            if len(sources) >= 2:
                src = " + ".join(_label(f, prev[f]) for f in sources)
                events.append(TimelineEvent(y1, "MERGED", f"{src} -> {_label(g, succ[g])}"))
        was = seed in snapshots[y0].ctj.values()
        now = seed in snapshots[y1].ctj.values()
        if now and not was:
            events.append(TimelineEvent(y1, "CTJ_GAINED", seed))
        elif was and not now:
            events.append(TimelineEvent(y1, "CTJ_LOST", seed))
    events.sort(key=lambda e: (e.year, EVENT_KINDS.index(e.kind), e.detail))
    return ClusterTimeline(years, clusters, tuple(events))


# --- CSV interchange ---------------------------------------------------------


def _num(x: float) -> str:
    return repr(float(x))


def write_correlation_csv(corr: Correlation, fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow([""] + list(corr.labels))
    for name, row in zip(corr.labels, corr.values):
        writer.writerow([name] + [_num(v) for v in row])


def read_correlation_csv(fh: TextIO) -> Correlation:
    rows = [r for r in csv.reader(fh) if r]
    if not rows or rows[0][:1] != [""]:
        raise SchemaError("correlation CSV must start with an empty corner cell")
    labels = tuple(rows[0][1:])
    if tuple(r[0] for r in rows[1:]) != labels:
        raise SchemaError("correlation CSV must be square with matching row and column labels")
    try:
        values = np.array([[float(v) for v in r[1:]] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise SchemaError(f"correlation CSV has non-numeric cells: {exc}") from None
    if values.shape != (len(labels), len(labels)):
        raise SchemaError("correlation CSV is not square")
    return Correlation(labels, values)


def write_loadings_csv(model: FactorModel, fh: TextIO) -> None:
    """Loading table: journal, factor1..factorK, cluster, ctj, complex."""
    writer = csv.writer(fh, lineterminator="\n")
    k = model.n_factors
    writer.writerow(["journal"] + [f"factor{f}" for f in range(1, k + 1)] + ["cluster", "ctj", "complex"])
    ctjs = set(v for v in model.ctj.values() if v)
    order = sorted(
        range(len(model.variables)),
        key=lambda i: (model.factor_of(model.variables[i]) or k + 1, -np.abs(model.loadings[i]).max(), model.variables[i]),
    )
    for i in order:
        name = model.variables[i]
        f = model.factor_of(name)
        writer.writerow(
            [name]
            + [_num(v) for v in model.loadings[i]]
            + [f if f else "", int(name in ctjs), int(name in model.complex)]
        )


def read_loadings_csv(fh: TextIO, load_threshold: float = 0.5) -> FactorModel:
    rows = [r for r in csv.reader(fh) if r]
    if not rows or rows[0][:1] != ["journal"]:
        raise SchemaError("loadings CSV must start with a 'journal' column")
    factor_cols = [i for i, h in enumerate(rows[0]) if h.startswith("factor")]
    names = [r[0] for r in rows[1:]]
    loadings = [[float(r[i]) for i in factor_cols] for r in rows[1:]]
    return FactorModel.from_loadings(names, loadings, load_threshold)


def write_timeline_csv(timeline: ClusterTimeline, fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["year", "event", "detail"])
    for e in timeline.events:
        writer.writerow([e.year, e.kind, e.detail])
