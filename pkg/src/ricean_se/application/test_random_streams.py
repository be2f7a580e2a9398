#ricean_se/src/ricean_se/application/test_random_streams.py

import numpy as np
import pytest

from src.ricean_se.application.random_streams import DROP, SMALL_SCALE, chunk_bounds, split_stream


def test_same_index_same_stream():
    a = split_stream(42, SMALL_SCALE, 3, 7).standard_normal(16)
    b = split_stream(42, SMALL_SCALE, 3, 7).standard_normal(16)
    np.testing.assert_array_equal(a, b)


def test_streams_differ_by_tag_index_and_seed():
    base = split_stream(42, DROP, 0).standard_normal(8)
    for outro in (split_stream(42, SMALL_SCALE, 0), split_stream(42, DROP, 1), split_stream(43, DROP, 0)):
        assert not np.allclose(base, outro.standard_normal(8))


def test_stream_does_not_depend_on_creation_order():
    primeiro = [split_stream(1, DROP, d).random() for d in range(5)]
    invertido = [split_stream(1, DROP, d).random() for d in reversed(range(5))][::-1]
    assert primeiro == invertido


def test_negative_seed_or_index_rejected():
    with pytest.raises(ValueError):
        split_stream(-1, DROP)
    with pytest.raises(ValueError):
        split_stream(0, DROP, -2)


def test_chunk_bounds():
    assert chunk_bounds(10, 4) == [(0, 4), (4, 8), (8, 10)]
    assert chunk_bounds(8, 4) == [(0, 4), (4, 8)]
    assert chunk_bounds(0, 4) == []
    with pytest.raises(ValueError):
        chunk_bounds(10, 0)


def test_sibling_streams_are_uncorrelated():
    amostras = [split_stream(42, SMALL_SCALE, 0, c).standard_normal(100_000) for c in range(4)]
    amostras.append(split_stream(42, DROP, 0).standard_normal(100_000))
    corr = np.corrcoef(np.vstack(amostras))
    fora = corr[~np.eye(len(amostras), dtype=bool)]
    assert np.max(np.abs(fora)) < 0.01
