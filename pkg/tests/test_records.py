import io

import pytest
from hypothesis import given, strategies as st

from scimaps.errors import EmptyCorpusError
from scimaps.records import (
    UNKNOWN,
    BiblioRecord,
    CitedRef,
    extract_country,
    format_record,
    normalize_journal,
    parse_cited_ref,
    parse_file,
    parse_text,
    write_warnings_csv,
)

MINIMAL = """PT J
AU Aki, K
AU Richards, PG
SO BULL SEISMOL SOC AM
PY 2000
C1 Stanford Univ, Dept Geophys, Stanford, CA 94305 USA
CR KANAMORI H, 1977, J GEOPHYS RES, V82, P2981
CR BOORE DM, 1983, BULL SEISMOL SOC AM, V73, P1865
ER
"""


def record(body, ut):
    return f"PT J\n{body}UT {ut}\nER\n"


def test_minimal_record():
    records, warnings = parse_text(MINIMAL)
    assert warnings == []
    (r,) = records
    assert r.journal == "BULL SEISMOL SOC AM"
    assert r.pub_year == 2000
    assert r.authors == ("Aki, K", "Richards, PG")
    assert len(r.addresses) == 1
    assert r.cited_refs == (CitedRef("J GEOPHYS RES", 1977), CitedRef("BULL SEISMOL SOC AM", 1983))


def test_golden_file_with_continuation_lines(golden):
    records, warnings = parse_file(golden / "minimal_record.txt")
    assert warnings == []
    (r,) = records
    assert r.record_id == "WOS:000000000000001"
    assert r.authors == ("Aki, K", "Richards, PG")
    assert r.title == "Quantitative seismology"
    assert [c.cited_journal for c in r.cited_refs] == ["J GEOPHYS RES", "BULL SEISMOL SOC AM"]


def test_missing_addresses_is_legal():
    text = MINIMAL.replace("C1 Stanford Univ, Dept Geophys, Stanford, CA 94305 USA\n", "")
    records, warnings = parse_text(text)
    assert records[0].addresses == ()
    assert warnings == []


def test_invalid_year_skips_only_that_record():
    bad = record("SO J SEISMOL\nPY 20x0\n", "B")
    good = record("SO J SEISMOL\nPY 1999\n", "C")
    records, warnings = parse_text(record("SO NATURE\nPY 2000\n", "A") + bad + good)
    assert [r.record_id for r in records] == ["A", "C"]
    assert len(warnings) == 1
    assert warnings[0].reason == "invalid year"
    assert warnings[0].line == 8  # the PY line of the second record
    assert warnings[0].record_id == "B"


@pytest.mark.parametrize(
    "body, reason",
    [
        ("PY 2000\n", "missing journal"),
        ("SO NATURE\n", "missing year"),
        ("SO NATURE\nPY 1700\n", "year out of range"),
    ],
)
def test_malformed_records(body, reason):
    records, warnings = parse_text(record(body, "X") + record("SO NATURE\nPY 2000\n", "Y"))
    assert [r.record_id for r in records] == ["Y"]
    assert [w.reason for w in warnings] == [reason]


def test_unterminated_record_is_reported():
    text = "PT J\nSO NATURE\nPY 2000\nUT A\n" + record("SO SCIENCE\nPY 2000\n", "B")
    records, warnings = parse_text(text)
    assert [r.record_id for r in records] == ["B"]
    assert warnings[0].reason == "record not terminated"


def test_crlf_and_unknown_tags():
    text = record("SO nature.\nPY 2000\nZZ something\n   more\n", "A").replace("\n", "\r\n")
    (r,), _ = parse_text(text)
    assert r.journal == "NATURE"
    assert r.extra == (("ZZ", ("something", "more")),)


def test_duplicate_ids_are_skipped():
    one = record("SO NATURE\nPY 2000\n", "A")
    records, warnings = parse_text(one + one)
    assert len(records) == 1
    assert warnings[0].reason == "duplicate record id"


def test_empty_corpus_is_fatal():
    with pytest.raises(EmptyCorpusError):
        parse_text("FN x\nEF\n")
    with pytest.raises(EmptyCorpusError):
        parse_text(record("PY 2000\n", "A"))


def test_unreadable_stream_is_io_error(tmp_path):
    with pytest.raises(OSError):
        parse_file(tmp_path / "missing.txt")


def test_fallback_id_depends_only_on_record_content():
    a = "PT J\nSO NATURE\nPY 2000\nER\n"
    b = "PT J\nSO SCIENCE\nPY 2000\nER\n"
    (ra,), _ = parse_text(a)
    (rb0, ra2), _ = parse_text(b + a)
    (rb,), _ = parse_text(b)
    assert ra.record_id.startswith("REC:")
    assert ra.record_id == ra2.record_id
    assert rb.record_id == rb0.record_id != ra.record_id


def test_warnings_csv():
    _, warnings = parse_text(record("SO A\nPY 20x0\n", "A") + record("SO B\nPY 2000\n", "B"))
    fh = io.StringIO()
    write_warnings_csv(warnings, fh)
    assert fh.getvalue() == "line,record_id,reason\n3,A,invalid year\n"


def test_format_record_round_trip():
    (r,), _ = parse_text(MINIMAL)
    (again,), _ = parse_text(format_record(r))
    assert again.journal == r.journal and again.cited_refs == r.cited_refs
    assert again.authors == r.authors and again.addresses == r.addresses


def test_record_invariants():
    with pytest.raises(ValueError):
        BiblioRecord("x", "", 2000)
    with pytest.raises(ValueError):
        BiblioRecord("x", "A", 1799)
    with pytest.raises(ValueError):
        BiblioRecord("x", "A", 2000, authors=("",))
    with pytest.raises(ValueError):
        CitedRef("")


def test_normalize_journal():
    assert normalize_journal("  Bull.  Seismol Soc  Am. ") == "BULL. SEISMOL SOC AM"


@pytest.mark.parametrize(
    "value, expected",
    [
        ("AKI K, 1980, QUANTITATIVE SEISMOLOG, V1, P1", CitedRef("QUANTITATIVE SEISMOLOG", 1980)),
        ("ANON, NATURE", CitedRef("NATURE", None)),
        ("AKI K, 1980", None),
        ("AKI K", None),
    ],
)
def test_parse_cited_ref(value, expected):
    assert parse_cited_ref(value) == expected


@pytest.mark.parametrize(
    "address, token",
    [
        ("Univ Amsterdam, Kloveniersburgwal 48, NL-1012 DX Amsterdam, Netherlands", "NETHERLANDS"),
        ("Stanford Univ, Dept Geophys, Stanford, CA 94305 USA", "USA"),
        ("Stanford Univ, Dept Geophys, Stanford, CA 94305", "USA"),
        ("Acme Inst, Atlantis", UNKNOWN),
        ("Chinese Acad Sci, Beijing 100029, Peoples R China", "PEOPLES-R-CHINA"),
        ("Univ Bonn, D-53115 Bonn, Fed Rep Ger", "GERMANY"),
        ("Queens Univ, Belfast, North Ireland", "NORTH-IRELAND"),
        ("Univ Tokyo, Tokyo 113, Japan.", "JAPAN"),
        ("Some Inst, 1012 DX Amsterdam Netherlands", "NETHERLANDS"),
        ("Univ Cambridge, Cambridge CB2 3EQ, England", "ENGLAND"),
    ],
)
def test_extract_country(address, token):
    assert extract_country(address) == token


def test_merge_uk_flag():
    assert extract_country("Univ Edinburgh, Edinburgh, Scotland") == "SCOTLAND"
    assert extract_country("Univ Edinburgh, Edinburgh, Scotland", merge_uk=True) == "UK"
    assert extract_country("Univ Tokyo, Japan", merge_uk=True) == "JAPAN"


@given(st.text(min_size=1))
def test_extract_country_is_total(address):
    token = extract_country(address)
    assert isinstance(token, str) and token


RECORDS = [record(f"SO J{i}\nPY 2000\nCR X, 1999, J{i + 1}\n", f"ID{i}") for i in range(5)]
BAD = [record("SO BAD\nPY 20x0\n", "BADID"), "PT J\nSO BAD\n###\nER\n"]


@given(st.permutations(range(7)))
def test_malformed_records_do_not_affect_neighbours(order):
    blocks = RECORDS + BAD
    text = "".join(blocks[i] for i in order)
    clean = "".join(blocks[i] for i in order if i < 5)
    with_bad, _ = parse_text(text)
    without_bad, w = parse_text(clean)
    assert with_bad == without_bad
    assert w == []


def test_parse_is_deterministic(fixture_config):
    path = fixture_config.parent / "corpus_2000.txt"
    assert parse_file(path) == parse_file(path)
