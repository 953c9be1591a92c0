"""Field-tagged bibliographic records: parsing and normalization.

The accepted dialect (see ``docs/formats.md``)::

    PT J
    AU Aki, K
       Richards, PG
    SO BULL SEISMOL SOC AM
    PY 2000
    C1 Stanford Univ, Dept Geophys, Stanford, CA 94305 USA
    CR AKI K, 1980, QUANTITATIVE SEISMOLOG, V1, P1
    UT WOS:000001
    ER

A record opens with a ``PT`` line and closes with an ``ER`` line. Each field
starts with a two-letter tag in columns 1-2, a space, and a value; indented
lines continue the previous field with one further value.
"""

from __future__ import annotations

import csv
import hashlib
import io
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, TextIO

from .countries_table import ALIASES, COUNTRIES, UK_CONSTITUENTS
from .errors import EmptyCorpusError

UNKNOWN = "UNKNOWN"

KNOWN_TAGS = frozenset({"PT", "AU", "TI", "SO", "PY", "C1", "CR", "UT"})
FILE_TAGS = frozenset({"FN", "VR", "EF"})
YEAR_RANGE = (1800, 2100)

_TAG_LINE = re.compile(r"^([A-Z][A-Z0-9])(?: (.*))?$")
_YEAR = re.compile(r"^\d{4}$")
_STATE_ZIP = re.compile(r"^[A-Z]{2} \d{5}(?:-\d{4})?(?: USA)?$")
_AUTHOR_PREFIX = re.compile(r"^\[[^\]]*\]\s*")
_TRAILING_PUNCT = re.compile(r"[\s.,;:]+$")


def normalize_journal(name: str) -> str:
    """Uppercase, collapse whitespace, strip trailing punctuation."""
    return _TRAILING_PUNCT.sub("", " ".join(name.upper().split()))


@dataclass(frozen=True)
class CitedRef:
    cited_journal: str
    cited_year: int | None = None

    def __post_init__(self):
        if not self.cited_journal:
            raise ValueError("cited_journal must be non-empty")


@dataclass(frozen=True)
class BiblioRecord:
    record_id: str
    journal: str
    pub_year: int
    authors: tuple[str, ...] = ()
    addresses: tuple[str, ...] = ()
    cited_refs: tuple[CitedRef, ...] = ()
    title: str = ""
    extra: tuple[tuple[str, tuple[str, ...]], ...] = ()

    def __post_init__(self):
        if not self.journal:
            raise ValueError("journal must be non-empty")
        if not YEAR_RANGE[0] <= self.pub_year <= YEAR_RANGE[1]:
            raise ValueError(f"pub_year {self.pub_year} out of range")
        if any(not a for a in self.authors):
            raise ValueError("empty author name")


@dataclass(frozen=True)
class ParseWarning:
    line: int
    record_id: str
    reason: str


@dataclass
class _Block:
    start: int
    fields: list[tuple[str, int, list[str]]] = field(default_factory=list)
    raw: list[str] = field(default_factory=list)


class _Malformed(Exception):
    def __init__(self, line, reason, record_id=""):
        super().__init__(reason)
        self.line = line
        self.reason = reason
        self.record_id = record_id


def parse_cited_ref(value: str) -> CitedRef | None:
    """Parse ``AUTHOR, YEAR, SOURCE[, ...]``; returns None if no source is found."""
    parts = [p.strip() for p in value.split(",")]
    for i, part in enumerate(parts):
        if _YEAR.match(part):
            source = normalize_journal(parts[i + 1]) if i + 1 < len(parts) else ""
            return CitedRef(source, int(part)) if source else None
    # no year: AUTHOR, SOURCE
    if len(parts) >= 2:
        source = normalize_journal(parts[1])
        if source:
            return CitedRef(source, None)
    return None


def _build_record(block: _Block, warnings: list[ParseWarning]) -> BiblioRecord:
    values: dict[str, list[str]] = {}
    lines: dict[str, int] = {}
    extra: list[tuple[str, tuple[str, ...]]] = []
    for tag, lineno, vals in block.fields:
        if tag in KNOWN_TAGS:
            values.setdefault(tag, []).extend(vals)
            lines.setdefault(tag, lineno)
        else:
            extra.append((tag, tuple(vals)))

    ut = values.get("UT", [""])[0].strip()
    if ut:
        record_id = ut
    else:
        digest = hashlib.sha1("\n".join(block.raw).encode("utf-8")).hexdigest()
        record_id = f"REC:{digest[:16]}"

    so = normalize_journal(" ".join(values.get("SO", [])))
    if not so:
        raise _Malformed(block.start, "missing journal", record_id)
    py = values.get("PY")
    if not py:
        raise _Malformed(block.start, "missing year", record_id)
    py_text = py[0].strip()
    if not _YEAR.match(py_text):
        raise _Malformed(lines["PY"], "invalid year", record_id)
    year = int(py_text)
    if not YEAR_RANGE[0] <= year <= YEAR_RANGE[1]:
        raise _Malformed(lines["PY"], "year out of range", record_id)

    authors = tuple(a.strip() for a in values.get("AU", []) if a.strip())
    addresses = tuple(
        _AUTHOR_PREFIX.sub("", a).strip()
        for a in values.get("C1", [])
        if _AUTHOR_PREFIX.sub("", a).strip()
    )
    refs = []
    for tag, lineno, vals in block.fields:
        if tag != "CR":
            continue
        for offset, v in enumerate(vals):
            ref = parse_cited_ref(v)
            if ref is None:
                warnings.append(ParseWarning(lineno + offset, record_id, "unparseable cited reference"))
            else:
                refs.append(ref)
    return BiblioRecord(
        record_id=record_id,
        journal=so,
        pub_year=year,
        authors=authors,
        addresses=addresses,
        cited_refs=tuple(refs),
        title=" ".join(values.get("TI", [])).strip(),
        extra=tuple(extra),
    )


def _blocks(lines: Iterable[str], warnings: list[ParseWarning]):
    block: _Block | None = None
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if block is None:
            if not line.strip():
                continue
            m = _TAG_LINE.match(line)
            if m and m.group(1) == "PT":
                block = _Block(lineno)
                block.fields.append(("PT", lineno, [m.group(2) or ""]))
                block.raw.append(line)
            elif m and m.group(1) in FILE_TAGS:
                continue
            else:
                warnings.append(ParseWarning(lineno, "", "line outside record"))
            continue

        if line.startswith("ER") and line[2:].strip() == "":
            yield block, None
            block = None
            continue
        block.raw.append(line)
        if line[:1] in (" ", "\t"):
            value = line.strip()
            if not block.fields:
                yield block, _Malformed(lineno, "continuation without field")
                block = None
                continue
            if value:
                block.fields[-1][2].append(value)
            continue
        if not line.strip():
            continue
        m = _TAG_LINE.match(line)
        if m is None or m.group(1) == "PT":
            reason = "record not terminated" if m else "malformed field line"
            yield block, _Malformed(lineno, reason)
            block = None
            if m is not None:
                # the PT line starts the next record
                block = _Block(lineno)
                block.fields.append(("PT", lineno, [m.group(2) or ""]))
                block.raw.append(line)
            continue
        block.fields.append((m.group(1), lineno, [(m.group(2) or "").strip()]))
    if block is not None:
        yield block, _Malformed(block.start, "record not terminated")


def parse_corpus(stream: TextIO | Iterable[str]) -> tuple[list[BiblioRecord], list[ParseWarning]]:
    """Parse a field-tagged export into records, in file order.

    Malformed records are skipped and reported as warnings. Raises
    :class:`EmptyCorpusError` when no record survives.
    """
    records: list[BiblioRecord] = []
    warnings: list[ParseWarning] = []
    seen: set[str] = set()
    for block, problem in _blocks(stream, warnings):
        if problem is None:
            try:
                record = _build_record(block, warnings)
            except _Malformed as exc:
                problem = exc
            else:
                if record.record_id in seen:
                    warnings.append(ParseWarning(block.start, record.record_id, "duplicate record id"))
                    continue
                seen.add(record.record_id)
                records.append(record)
                continue
        warnings.append(ParseWarning(problem.line, problem.record_id, problem.reason))
    if not records:
        raise EmptyCorpusError("no well-formed records in corpus")
    return records, warnings


def parse_file(path: str | Path) -> tuple[list[BiblioRecord], list[ParseWarning]]:
    # newline="" keeps CR so CRLF is stripped uniformly by the parser
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_corpus(fh)


def parse_text(text: str) -> tuple[list[BiblioRecord], list[ParseWarning]]:
    return parse_corpus(io.StringIO(text, newline=""))


def write_warnings_csv(warnings: Iterable[ParseWarning], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["line", "record_id", "reason"])
    for w in warnings:
        writer.writerow([w.line, w.record_id, w.reason])


def _canonical(segment: str) -> str | None:
    name = " ".join(segment.upper().replace(".", " ").split())
    if not name:
        return None
    if name in ALIASES:
        return ALIASES[name]
    token = name.replace(" ", "-")
    if token in COUNTRIES:
        return token
    return None


@lru_cache(maxsize=65536)
def extract_country(address: str, merge_uk: bool = False) -> str:
    """Resolve the country of a raw address string.

    Uses the last comma-separated segment. US addresses written as
    ``ST 12345`` (optionally followed by ``USA``) resolve to USA. Anything
    unrecognised yields ``UNKNOWN``.
    """
    segment = " ".join(address.rsplit(",", 1)[-1].upper().split()).rstrip(".")
    token = _canonical(segment)
    if token is None and _STATE_ZIP.match(segment):
        token = "USA"
    if token is None:
        # postal codes or city names may precede the country in the last segment
        words = segment.split()
        for i in range(1, len(words)):
            token = _canonical(" ".join(words[i:]))
            if token is not None:
                break
    if token is None:
        return UNKNOWN
    if merge_uk and token in UK_CONSTITUENTS:
        return "UK"
    return token


def record_countries(record: BiblioRecord, merge_uk: bool = False) -> frozenset[str]:
    """Distinct resolvable country tokens of a record's addresses."""
    return _countries(record.addresses, merge_uk)


@lru_cache(maxsize=65536)
def _countries(addresses: tuple[str, ...], merge_uk: bool) -> frozenset[str]:
    tokens = {extract_country(a, merge_uk) for a in addresses}
    tokens.discard(UNKNOWN)
    return frozenset(tokens)


def format_record(record: BiblioRecord) -> str:
    """Render a record back into the tagged dialect."""
    out = ["PT J"]

    def emit(tag, values):
        for i, v in enumerate(values):
            out.append(f"{tag} {v}" if i == 0 else f"   {v}")

    emit("AU", record.authors)
    if record.title:
        emit("TI", [record.title])
    emit("SO", [record.journal])
    emit("PY", [str(record.pub_year)])
    emit("C1", record.addresses)
    emit("CR", [
        f"ANON, {r.cited_year}, {r.cited_journal}" if r.cited_year is not None else f"ANON, {r.cited_journal}"
        for r in record.cited_refs
    ])
    for tag, values in record.extra:
        emit(tag, values)
    emit("UT", [record.record_id])
    out.append("ER")
    return "\n".join(out) + "\n"
