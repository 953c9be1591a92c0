import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scimaps.linalg import jacobi_eigh


def random_psd(rng, n, rank=None):
    x = rng.normal(size=(n, rank or n))
    return x @ x.T


@pytest.mark.parametrize("n", [1, 2, 5, 12, 20])
def test_matches_numpy(n):
    rng = np.random.default_rng(n)
    a = random_psd(rng, n)
    values, vectors = jacobi_eigh(a)
    ref = np.linalg.eigvalsh(a)[::-1]
    assert np.allclose(values, ref, atol=1e-10 * max(1.0, ref[0]))
    assert np.abs(a @ vectors - vectors * values).max() < 1e-9
    assert np.abs(vectors.T @ vectors - np.eye(n)).max() < 1e-12


def test_descending_and_signed():
    rng = np.random.default_rng(7)
    values, vectors = jacobi_eigh(random_psd(rng, 8, rank=3))
    assert np.all(np.diff(values) <= 1e-12)
    for j in range(8):
        col = vectors[:, j]
        assert col[np.argmax(np.abs(col))] > 0


def test_diagonal_and_zero():
    values, vectors = jacobi_eigh(np.diag([1.0, 3.0, 2.0]))
    assert values.tolist() == [3.0, 2.0, 1.0]
    assert np.array_equal(np.abs(vectors), np.eye(3)[:, [1, 2, 0]])
    values, vectors = jacobi_eigh(np.zeros((3, 3)))
    assert values.tolist() == [0.0, 0.0, 0.0]


def test_two_by_two_closed_form():
    values, vectors = jacobi_eigh([[2.0, 1.0], [1.0, 2.0]])
    assert np.allclose(values, [3.0, 1.0], atol=1e-15)
    assert np.allclose(vectors[:, 0], [2**-0.5, 2**-0.5])


def test_rejects_non_square():
    with pytest.raises(ValueError):
        jacobi_eigh(np.zeros((2, 3)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_trace_and_reconstruction(n, seed):
    a = random_psd(np.random.default_rng(seed), n)
    values, vectors = jacobi_eigh(a)
    assert abs(values.sum() - np.trace(a)) < 1e-9 * max(1.0, np.trace(a))
    assert np.abs(vectors @ np.diag(values) @ vectors.T - a).max() < 1e-9 * max(1.0, np.abs(a).max())
