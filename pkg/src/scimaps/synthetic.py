"""Synthetic corpora with planted citing blocks.

Journals in one block share a citing profile over the block's own journals
and a pool of block-specific cited-only sources. Every journal also cites
the seed journal, so all planted journals enter the seed's citation
environment. Addresses are drawn from per-block country pools.

``python -m scimaps.synthetic OUTDIR`` regenerates the bundled fixture.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .records import BiblioRecord, CitedRef, format_record

_US_STATES = ("CA 94305", "MA 02139", "CO 80309", "WA 98195", "NY 10027")


def _address(rng: np.random.Generator, country: str) -> str:
    inst = f"Inst {int(rng.integers(1, 40))}"
    if country == "USA":
        return f"{inst}, Dept Earth Sci, Springfield, {_US_STATES[int(rng.integers(len(_US_STATES)))]} USA"
    return f"{inst}, Dept Geophys, City {int(rng.integers(1, 9))}, {country.replace('-', ' ').title()}"


def planted_records(
    rng: np.random.Generator,
    year: int,
    blocks: Mapping[str, Sequence[str]],
    seed_journal: str,
    records_per_journal: int | Mapping[str, int] = 8,
    refs_per_record: int = 15,
    background_per_block: int = 6,
    seed_share: float = 0.1,
    countries: Mapping[str, Sequence[str]] | None = None,
    international_rate: float = 0.35,
    unrelated_sources: int = 60,
) -> list[BiblioRecord]:
    """Records for one year whose citing patterns follow the planted blocks.

    ``unrelated_sources`` adds a journal outside the seed's environment that
    cites its own pool of sources; this widens the citing-pattern space the
    way the rest of a citation index does, so that unrelated blocks end up
    close to uncorrelated rather than anticorrelated.
    """
    records = []
    if unrelated_sources:
        sources = [f"UNRELATED SOURCE {k + 1:03d}" for k in range(unrelated_sources)]
        for k in range(0, unrelated_sources, 10):
            records.append(
                BiblioRecord(
                    record_id=f"SYN:{year}:U{k:03d}",
                    journal="UNRELATED J",
                    pub_year=year,
                    authors=("Other, O",),
                    addresses=(_address(rng, "USA"),),
                    cited_refs=tuple(CitedRef(t, year - 1) for t in sources[k : k + 10]),
                )
            )
    for b, (block, journals) in enumerate(sorted(blocks.items())):
        targets = list(journals) + [f"{block} SOURCE {k + 1:02d}" for k in range(background_per_block)]
        weights = rng.uniform(1.0, 3.0, size=len(targets))
        if seed_journal in targets:
            weights[targets.index(seed_journal)] = 0.0
        weights = (1.0 - seed_share) * weights / weights.sum()
        targets.append(seed_journal)
        probs = np.append(weights, seed_share)
        probs = probs / probs.sum()
        pool = list((countries or {}).get(block, ("USA", "JAPAN", "FRANCE", "GERMANY")))
        for jn, journal in enumerate(journals):
            n_records = (
                records_per_journal[journal] if isinstance(records_per_journal, Mapping) else records_per_journal
            )
            for k in range(n_records):
                draws = rng.multinomial(refs_per_record, probs)
                refs = []
                for t, c in zip(targets, draws):
                    refs.extend([CitedRef(t, year - int(rng.integers(1, 10)))] * int(c))
                n_countries = 2 if rng.random() < international_rate and len(pool) > 1 else 1
                chosen = rng.choice(len(pool), size=n_countries, replace=False)
                addresses = tuple(_address(rng, pool[int(i)]) for i in chosen)
                if rng.random() < 0.3:
                    addresses = addresses + (_address(rng, pool[int(chosen[0])]),)
                records.append(
                    BiblioRecord(
                        record_id=f"SYN:{year}:{b}{jn:02d}{k:03d}",
                        journal=journal,
                        pub_year=year,
                        authors=tuple(f"Author{j}, A" for j in range(1 + int(rng.integers(3)))),
                        addresses=addresses,
                        cited_refs=tuple(refs),
                        title=f"Synthetic article {k + 1} in {journal.title()}",
                    )
                )
    return records


SEED = "BULL SEISMOL SOC AM"
GEOPHYSICS = ["EARTH PLANETS SPACE", "GEOPHYS J INT", "GEOPHYS RES LETT", "J GEOPHYS RES", "PHYS EARTH PLANET IN"]
SEISMOLOGY = ["J SEISMOL", "NAT HAZARDS", "SOIL DYN EARTHQ ENG"]
GENERAL = ["CURR SCI INDIA", "NATURE", "SCIENCE"]
COUNTRY_POOLS = {
    "geophysics": ["USA", "GERMANY", "ENGLAND", "FRANCE", "JAPAN", "NETHERLANDS", "RUSSIA"],
    "seismology": ["ITALY", "GERMANY", "SWITZERLAND", "RUSSIA", "BULGARIA", "ROMANIA", "GREECE"],
    "general": ["USA", "ENGLAND", "INDIA", "JAPAN"],
}


def fixture_records(year: int, rng_seed: int = 2003) -> list[BiblioRecord]:
    """The bundled fixture: the seed sits in geophysics until a seismology
    block appears in 2000."""
    rng = np.random.default_rng(rng_seed + year)
    if year >= 2000:
        blocks = {"geophysics": GEOPHYSICS, "seismology": [SEED] + SEISMOLOGY, "general": GENERAL}
    else:
        blocks = {"geophysics": GEOPHYSICS + [SEED], "general": GENERAL}
    return planted_records(rng, year, blocks, SEED, countries=COUNTRY_POOLS)


FIXTURE_YEARS = (1996, 1998, 2000)

FIXTURE_CONFIG = """\
# Bundled synthetic fixture: a seismology cluster emerges in 2000.
[run]
seed = BULL SEISMOL SOC AM
out = out
env_threshold = 0.01
load_threshold = 0.5
cosine_cutoff = 0.1
merge_uk = false
"""


def write_fixture(outdir: str | Path) -> Path:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    config = [FIXTURE_CONFIG]
    for year in FIXTURE_YEARS:
        name = f"corpus_{year}.txt"
        text = "FN Synthetic Export\nVR 1.0\n" + "\n".join(format_record(r) for r in fixture_records(year)) + "EF\n"
        (outdir / name).write_text(text, encoding="utf-8", newline="\n")
        config.append(f"\n[year {year}]\ncorpus = {name}\n")
    path = outdir / "demo.ini"
    path.write_text("".join(config), encoding="utf-8", newline="\n")
    return path


if __name__ == "__main__":
    print(write_fixture(sys.argv[1] if len(sys.argv) > 1 else "fixtures"))
