import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scimaps.errors import DegenerateEmbeddingError, InvalidCorrelationError
from scimaps.stimulus import (
    dissimilarity,
    embed,
    embed_dissimilarities,
    legend_groups,
    letter_keys,
    plot_map,
    stress1,
    write_map_csv,
)


def pairwise(points):
    return np.sqrt(((points[:, None, :] - points[None, :, :]) ** 2).sum(axis=-1))


def test_letter_keys():
    keys = letter_keys(28)
    assert keys[:3] == ["A", "B", "C"]
    assert keys[25:] == ["Z", "AA", "AB"]


def test_dissimilarity_transforms():
    r = np.array([[1.0, 0.5], [0.5, 1.0]])
    assert dissimilarity(r)[0, 1] == 0.5
    assert dissimilarity(r, "chord")[0, 1] == pytest.approx(1.0)
    with pytest.raises(ValueError):
        dissimilarity(r, "log")


def test_equilateral_triangle():
    d = np.ones((3, 3)) - np.eye(3)
    smap = embed_dissimilarities(d, ["a", "b", "c"])
    assert np.abs(smap.distances() - d).max() < 1e-12
    assert smap.stress < 1e-12
    assert smap.keys == ("A", "B", "C")
    assert np.allclose(smap.coords.mean(axis=0), 0.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 10), st.integers(0, 2**32 - 1))
def test_planar_configuration_recovered(n, seed):
    points = np.random.default_rng(seed).uniform(-1, 1, size=(n, 2))
    d = pairwise(points)
    try:
        smap = embed_dissimilarities(d, [str(i) for i in range(n)])
    except DegenerateEmbeddingError:
        # near-collinear draws
        return
    assert np.abs(smap.distances() - d).max() < 1e-6
    assert smap.stress < 1e-9


def test_collinear_is_degenerate():
    d = pairwise(np.array([[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]]))
    with pytest.raises(DegenerateEmbeddingError) as exc:
        embed_dissimilarities(d, ["a", "b", "c"])
    fallback = exc.value.fallback
    assert fallback.degenerate
    assert np.abs(fallback.distances() - d).max() < 1e-9
    assert embed_dissimilarities(d, ["a", "b", "c"], strict=False).degenerate


def test_two_points_and_one():
    smap = embed([[1.0, 0.5], [0.5, 1.0]], ["a", "b"], strict=False)
    assert smap.degenerate
    assert smap.distances()[0, 1] == pytest.approx(0.5)
    with pytest.raises(DegenerateEmbeddingError):
        embed([[1.0]], ["a"])


def test_embed_rejects_asymmetric():
    with pytest.raises(InvalidCorrelationError):
        embed([[1.0, 0.2, 0.1], [0.3, 1.0, 0.1], [0.1, 0.1, 1.0]], ["a", "b", "c"])


def test_orientation_is_deterministic():
    rng = np.random.default_rng(1)
    d = pairwise(rng.normal(size=(6, 2)))
    a = embed_dissimilarities(d, list("abcdef")).coords
    b = embed_dissimilarities(d.copy(), list("abcdef")).coords
    assert np.array_equal(a, b)
    assert a[0, 0] > 0 and a[0, 1] > 0


def test_stress_formula():
    d = np.array([[0.0, 2.0], [2.0, 0.0]])
    coords = np.array([[0.0, 0.0], [1.0, 0.0]])
    assert stress1(d, coords) == pytest.approx(0.5)


def test_map_csv_and_legend():
    smap = embed_dissimilarities(np.ones((3, 3)) - np.eye(3), ["X J", "Y J", "Z J"])
    fh = io.StringIO()
    write_map_csv(smap, fh)
    lines = fh.getvalue().splitlines()
    assert lines[0] == "label,journal,x,y"
    assert lines[1].startswith("A,X J,")
    groups = legend_groups(smap, {1: ["Z J", "X J"], 2: []})
    assert groups == [("Factor 1 cluster", [("A", "X J"), ("C", "Z J")]), ("Related but not clustered", [("B", "Y J")])]
    assert legend_groups(smap)[0][0] == "Journals"


def test_svg_deterministic(tmp_path):
    smap = embed_dissimilarities(np.ones((3, 3)) - np.eye(3), ["X J", "Y J", "Z J"])
    plot_map(smap, tmp_path / "a.svg", {1: ["X J"]})
    plot_map(smap, tmp_path / "b.svg", {1: ["X J"]})
    a = (tmp_path / "a.svg").read_bytes()
    assert a == (tmp_path / "b.svg").read_bytes()
    assert b"PLOT OF STIMULUS SPACE" in a and b"Factor 1 cluster" in a
