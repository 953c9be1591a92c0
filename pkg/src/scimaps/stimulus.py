"""Two-dimensional stimulus-space maps by classical (Torgerson) scaling."""

from __future__ import annotations

import csv
import string
from dataclasses import dataclass
from typing import Mapping, Sequence, TextIO

import numpy as np

from .errors import DegenerateEmbeddingError, InvalidCorrelationError
from .linalg import jacobi_eigh

EIGEN_TOL = 1e-10
ORIENT_TOL = 1e-12


def letter_keys(n: int) -> list[str]:
    """A, B, ..., Z, AA, AB, ... (spreadsheet-style)."""
    keys = []
    for i in range(n):
        key = ""
        i += 1
        while i:
            i, rem = divmod(i - 1, 26)
            key = string.ascii_uppercase[rem] + key
        keys.append(key)
    return keys


@dataclass(frozen=True)
class StimulusMap:
    labels: tuple[str, ...]
    keys: tuple[str, ...]
    coords: np.ndarray
    stress: float
    eigenvalues: np.ndarray
    degenerate: bool = False

    def distances(self) -> np.ndarray:
        diff = self.coords[:, None, :] - self.coords[None, :, :]
        return np.sqrt(np.sum(diff**2, axis=-1))


def dissimilarity(correlation, transform: str = "linear") -> np.ndarray:
    """``1 - r`` (linear) or ``sqrt(2 (1 - r))`` (chord)."""
    r = np.asarray(correlation, dtype=float)
    if transform == "linear":
        d = 1.0 - r
    elif transform == "chord":
        d = np.sqrt(np.clip(2.0 * (1.0 - r), 0.0, None))
    else:
        raise ValueError("transform must be 'linear' or 'chord'")
    d = (d + d.T) / 2.0
    np.fill_diagonal(d, 0.0)
    return d


def stress1(dissim: np.ndarray, coords: np.ndarray) -> float:
    """Kruskal stress-1 of a configuration against the input dissimilarities."""
    diff = coords[:, None, :] - coords[None, :, :]
    dist = np.sqrt(np.sum(diff**2, axis=-1))
    iu = np.triu_indices(len(dissim), 1)
    denom = float(np.sum(dissim[iu] ** 2))
    if denom == 0.0:
        return 0.0
    return float(np.sqrt(np.sum((dissim[iu] - dist[iu]) ** 2) / denom))


def _orient(coords: np.ndarray) -> np.ndarray:
    # reflect each axis so the first point not on it sits on the positive side
    coords = coords.copy()
    for axis in range(coords.shape[1]):
        for value in coords[:, axis]:
            if abs(value) > ORIENT_TOL:
                if value < 0:
                    coords[:, axis] *= -1.0
                break
    return coords


def embed_dissimilarities(dissim, labels: Sequence[str], strict: bool = True) -> StimulusMap:
    """Classical scaling of a dissimilarity matrix into two dimensions.

    With fewer than two positive eigenvalues the configuration is degenerate:
    ``strict`` raises :class:`DegenerateEmbeddingError` carrying the 1-D
    fallback map; otherwise the fallback is returned with ``degenerate`` set.
    """
    d = np.asarray(dissim, dtype=float)
    n = d.shape[0]
    if d.shape != (n, n) or n != len(labels):
        raise ValueError("dissimilarity matrix must be square and match labels")
    if n < 2:
        raise DegenerateEmbeddingError("need at least two journals to embed")
    centering = np.eye(n) - np.full((n, n), 1.0 / n)
    b = -0.5 * centering @ (d**2) @ centering
    eigenvalues, vectors = jacobi_eigh(b)
    scale = max(float(np.abs(eigenvalues).max()), 1.0)
    positive = eigenvalues[:2] > EIGEN_TOL * scale
    lam = np.where(positive, eigenvalues[:2], 0.0)
    coords = _orient(vectors[:, :2] * np.sqrt(lam))
    coords = coords - coords.mean(axis=0)
    degenerate = not bool(np.all(positive))
    result = StimulusMap(
        labels=tuple(labels),
        keys=tuple(letter_keys(n)),
        coords=coords,
        stress=stress1(d, coords),
        eigenvalues=eigenvalues,
        degenerate=degenerate,
    )
    if degenerate and strict:
        raise DegenerateEmbeddingError(
            f"only {int(np.sum(positive))} positive eigenvalue(s); 1-D fallback available", fallback=result
        )
    return result


def embed(correlation, labels: Sequence[str], strict: bool = True, transform: str = "linear") -> StimulusMap:
    """Map journals into two dimensions from their correlation matrix.

    Dissimilarities are ``1 - r``; points keep the input order and take letter
    keys A, B, C, ... in that order.
    """
    r = np.asarray(correlation, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise InvalidCorrelationError("correlation matrix must be square")
    if np.abs(r - r.T).max() > 1e-9:
        raise InvalidCorrelationError("correlation matrix is not symmetric")
    return embed_dissimilarities(dissimilarity(r, transform), labels, strict=strict)


def write_map_csv(smap: StimulusMap, fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["label", "journal", "x", "y"])
    for key, name, (x, y) in zip(smap.keys, smap.labels, smap.coords):
        writer.writerow([key, name, f"{x:.6f}", f"{y:.6f}"])


def legend_groups(smap: StimulusMap, clusters: Mapping[int, Sequence[str]] | None = None) -> list[tuple[str, list[tuple[str, str]]]]:
    """Legend sections: one per cluster, then the unclustered journals."""
    keyed = dict(zip(smap.labels, smap.keys))
    groups = []
    placed = set()
    for f in sorted(clusters or {}):
        members = [m for m in sorted(clusters[f]) if m in keyed]
        if members:
            groups.append((f"Factor {f} cluster", [(keyed[m], m) for m in members]))
            placed.update(members)
    rest = [m for m in smap.labels if m not in placed]
    if rest:
        title = "Related but not clustered" if groups else "Journals"
        groups.append((title, sorted(((keyed[m], m) for m in rest), key=lambda kv: kv[1])))
    return groups


def plot_map(smap: StimulusMap, path, clusters: Mapping[int, Sequence[str]] | None = None, title: str | None = None) -> None:
    """Render the map as SVG: letter keys at the points, legend table beside.

    Output bytes are deterministic for identical inputs.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    groups = legend_groups(smap, clusters)
    with plt.rc_context({"svg.hashsalt": "scimaps", "svg.fonttype": "none", "font.size": 9}):
        fig, (ax, lax) = plt.subplots(1, 2, figsize=(10, 6), gridspec_kw={"width_ratios": [3, 2]})
        x, y = smap.coords[:, 0], smap.coords[:, 1]
        ax.scatter(x, y, s=0)
        for key, xi, yi in zip(smap.keys, x, y):
            ax.text(xi, yi, key, ha="center", va="center", fontsize=10, fontweight="bold")
        span = max(float(np.abs(smap.coords).max()), 1e-6) * 1.15
        ax.set_xlim(-span, span)
        ax.set_ylim(-span, span)
        ax.axhline(0.0, color="0.8", lw=0.5)
        ax.axvline(0.0, color="0.8", lw=0.5)
        ax.set_xlabel("DIMENSION 1")
        ax.set_ylabel("DIMENSION 2")
        ax.set_title(title or "PLOT OF STIMULUS SPACE")
        ax.set_aspect("equal")

        lax.axis("off")
        lines = []
        for heading, entries in groups:
            lines.append((heading, True))
            lines.extend((f"{k}  {name}", False) for k, name in entries)
            lines.append(("", False))
        step = 1.0 / max(len(lines), 1)
        for i, (text, bold) in enumerate(lines):
            lax.text(0.0, 1.0 - i * step, text, fontsize=8, fontweight="bold" if bold else "normal", va="top",
                     transform=lax.transAxes)
        lax.text(0.0, -0.05, f"stress-1 = {smap.stress:.4f}", fontsize=8, transform=lax.transAxes)
        fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
        plt.close(fig)
