"""Aggregated journal-journal citation matrices and citation environments."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import EmptyMatrixError, NoEnvironmentError, SchemaError, SeedNotFoundError
from .records import BiblioRecord, normalize_journal

DIRECTIONS = ("citing", "cited", "union")


@dataclass(frozen=True)
class JournalCitationMatrix:
    """counts[i, j] = citations from journal i's articles to journal j."""

    journals: tuple[str, ...]
    counts: np.ndarray
    year: int | None = None

    def __post_init__(self):
        n = len(self.journals)
        if self.counts.shape != (n, n):
            raise ValueError(f"counts shape {self.counts.shape} does not match {n} journals")
        self.counts.setflags(write=False)

    def index(self, journal: str) -> int:
        try:
            return self.journals.index(journal)
        except ValueError:
            raise SeedNotFoundError(f"journal {journal!r} not in citation matrix") from None

    def received(self, journal: str) -> int:
        return int(self.counts[:, self.index(journal)].sum())


@dataclass(frozen=True)
class CitationEnvironment:
    seed: str
    year: int | None
    members: tuple[str, ...]
    submatrix: np.ndarray
    threshold: float
    direction: str
    matrix: JournalCitationMatrix


def build_matrix(records: Sequence[BiblioRecord], year: int, binary: bool = False) -> JournalCitationMatrix:
    """Count citations among journals for records published in ``year``.

    Cited references are counted as a multiset unless ``binary`` is set, in
    which case each cited journal counts at most once per article.
    """
    selected = [r for r in records if r.pub_year == year]
    if not selected:
        raise EmptyMatrixError(f"no records for year {year}")
    names = set()
    for r in selected:
        names.add(r.journal)
        names.update(ref.cited_journal for ref in r.cited_refs)
    journals = tuple(sorted(names))
    pos = {j: i for i, j in enumerate(journals)}
    counts = np.zeros((len(journals), len(journals)), dtype=np.int64)
    for r in selected:
        cited = [ref.cited_journal for ref in r.cited_refs]
        if binary:
            cited = set(cited)
        i = pos[r.journal]
        for c in cited:
            counts[i, pos[c]] += 1
    return JournalCitationMatrix(journals, counts, year)


def find_seed_journals(journals: Iterable[str], keywords: Sequence[str]) -> list[str]:
    """Journals whose name contains any keyword, case-insensitively, sorted."""
    if not keywords:
        raise ValueError("keywords must be non-empty")
    keys = [k.upper() for k in keywords]
    return sorted({j for j in journals if any(k in j.upper() for k in keys)})


def pick_seed(matrix: JournalCitationMatrix, candidates: Sequence[str]) -> str:
    """Most-cited candidate; ties go to the lexicographically first name."""
    present = [c for c in candidates if c in matrix.journals]
    if not present:
        raise SeedNotFoundError(f"none of {list(candidates)!r} found in citation matrix")
    return min(present, key=lambda j: (-matrix.received(j), j))


def _meets(count: int, threshold: Fraction, total: int) -> bool:
    return count * threshold.denominator >= threshold.numerator * total


def citation_environment(
    matrix: JournalCitationMatrix,
    seed: str,
    threshold: float = 0.01,
    direction: str = "citing",
) -> CitationEnvironment:
    """Journals exchanging at least ``threshold`` of the seed's citations.

    ``citing``: journal j qualifies when counts[j, seed] >= threshold times the
    seed's column sum. ``cited``: when counts[seed, j] >= threshold times the
    seed's row sum. ``union``: either.
    """
    if not 0 < threshold < 1:
        raise ValueError("threshold must lie in (0, 1)")
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    s = matrix.index(seed)
    frac = Fraction(repr(threshold))
    counts = matrix.counts
    col = counts[:, s]
    row = counts[s, :]
    received, given = int(col.sum()), int(row.sum())
    if received == 0 and direction != "cited":
        raise NoEnvironmentError(f"seed {seed!r} receives no citations")
    if given == 0 and direction == "cited":
        raise NoEnvironmentError(f"seed {seed!r} cites nothing")

    keep = set()
    for j in range(len(matrix.journals)):
        citing = received > 0 and col[j] > 0 and _meets(int(col[j]), frac, received)
        cited = given > 0 and row[j] > 0 and _meets(int(row[j]), frac, given)
        if (direction == "citing" and citing) or (direction == "cited" and cited) or (
            direction == "union" and (citing or cited)
        ):
            keep.add(j)
    keep.add(s)
    idx = sorted(keep)
    members = tuple(matrix.journals[i] for i in idx)
    sub = counts[np.ix_(idx, idx)].copy()
    sub.setflags(write=False)
    return CitationEnvironment(seed, matrix.year, members, sub, threshold, direction, matrix)


def write_matrix_csv(matrix: JournalCitationMatrix, fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow([""] + list(matrix.journals))
    for name, row in zip(matrix.journals, matrix.counts):
        writer.writerow([name] + [int(v) for v in row])


def read_matrix_csv(fh: TextIO, year: int | None = None) -> JournalCitationMatrix:
    rows = list(csv.reader(fh))
    if not rows or rows[0][:1] != [""]:
        raise SchemaError("citation matrix CSV must start with an empty corner cell")
    header = rows[0][1:]
    body = rows[1:]
    if [r[0] for r in body] != header:
        raise SchemaError("citation matrix CSV must be square with matching row and column labels")
    try:
        counts = np.array([[int(v) for v in r[1:]] for r in body], dtype=np.int64).reshape(len(header), len(header))
    except ValueError as exc:
        raise SchemaError(f"citation matrix CSV has non-integer cells: {exc}") from None
    if (counts < 0).any():
        raise SchemaError("citation matrix CSV has negative cells")
    return JournalCitationMatrix(tuple(normalize_journal(h) for h in header), counts, year)
