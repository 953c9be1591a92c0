import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scimaps.errors import NetFormatError
from scimaps.formats import NetFile, format_weight, read_net, to_netfile, write_dl, write_net
from scimaps.network import AffiliationMatrix, CosineMatrix, CountryGraph, threshold_network


def read_golden(golden, name):
    return (golden / name).read_bytes().decode("utf-8")


def test_two_countries_golden(golden):
    g = CountryGraph(("USA", "JAPAN"), np.array([[0, 3], [3, 0]]))
    assert write_net(g) == read_golden(golden, "two_countries.net")


def test_single_node_golden(golden):
    assert write_net(CountryGraph(("USA",), np.zeros((1, 1)))) == read_golden(golden, "single_node.net")


def test_cosine_golden(golden):
    values = np.array([[1.0, 0.8, 0.05], [0.8, 1.0, 0.100001], [0.05, 0.100001, 1.0]])
    net = threshold_network(CosineMatrix(("FRANCE", "JAPAN", "USA"), values), 0.1)
    assert write_net(net) == read_golden(golden, "cosine.net")


def test_dl_goldens(golden):
    aff = AffiliationMatrix(("JAPAN", "USA"), ("WOS:000001",), np.array([[1], [1]]))
    assert write_dl(aff) == read_golden(golden, "two_by_one.dl")
    aff = AffiliationMatrix(
        ("JAPAN", "NORTH-IRELAND", "USA"),
        ("A1", "A2", "A 3", "A4"),
        np.array([[1, 0, 0, 1], [0, 1, 1, 0], [1, 0, 1, 0]]),
    )
    assert write_dl(aff) == read_golden(golden, "three_by_four.dl")


def test_format_weight():
    assert format_weight(3) == "3"
    assert format_weight(np.int64(7)) == "7"
    assert format_weight(2.0) == "2"
    assert format_weight(0.1) == "0.1"
    assert format_weight(1 / 3) == repr(1 / 3)
    assert format_weight(1e-20) == "0.00000000000000000001"


def test_rejects_bad_labels_and_empty():
    with pytest.raises(NetFormatError):
        write_net(CountryGraph(('A"B',), np.zeros((1, 1))))
    with pytest.raises(NetFormatError):
        write_net(CountryGraph((), np.zeros((0, 0))))


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ('*Vertices 2\n1 "A"\n', 3),
        ('*Vertices 1\n2 "A"\n*Edges\n', 2),
        ('*Vertices 1\n1 "A"\n*Arcs\n', 3),
        ('*Vertices 2\n1 "A"\n2 "B"\n*Edges\n1 3 1\n', 5),
        ('*Vertices 2\n1 "A"\n2 "B"\n*Edges\n1 2\n', 5),
    ],
)
def test_reader_reports_line(text, line):
    with pytest.raises(NetFormatError) as exc:
        read_net(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}: ")


def test_netfile_renumbers():
    net = NetFile(((1, "B"), (2, "A")), ((1, 2, 5),))
    assert to_netfile(net) == NetFile(((1, "A"), (2, "B")), ((1, 2, 5),))


graphs = st.integers(1, 8).flatmap(
    lambda n: st.tuples(
        st.lists(st.text("ABCDEFGHIJKLMNOPQRSTUVWXYZ- ", min_size=1, max_size=12), min_size=n, max_size=n, unique=True),
        st.lists(
            st.lists(st.one_of(st.integers(0, 5), st.floats(0, 1, allow_nan=False, exclude_min=True)), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        ),
    )
)


@settings(max_examples=50)
@given(graphs)
def test_round_trip(case):
    labels, raw = case
    n = len(labels)
    w = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            w[i, j] = w[j, i] = float(raw[i][j])
    g = CountryGraph(tuple(labels), w)
    text = write_net(g)
    back = read_net(text)
    assert back == to_netfile(g)
    assert write_net(back) == text
    assert all(i < j for i, j, _ in back.edges)
