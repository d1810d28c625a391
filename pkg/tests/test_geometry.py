import numpy as np
import pytest
from hypothesis import given, strategies as st

from swmimo.geometry import FrequencyGrid, UlaConfig, build_frequency_grid, distance_matrix, element_positions


def test_default_band_count():
    g = build_frequency_grid(1e8, 3e10, 1e7)
    assert g.count == 2991
    assert g.centers[0] == 1e8
    assert g.centers[-1] == pytest.approx(3e10, rel=1e-15)


def test_small_grid():
    g = build_frequency_grid(1e8, 1.5e8, 1e7)
    assert g.count == 6
    np.testing.assert_allclose(g.centers, [1.0e8, 1.1e8, 1.2e8, 1.3e8, 1.4e8, 1.5e8], rtol=0, atol=1e-6)


@pytest.mark.parametrize("args", [(1e9, 1e9, 1e7), (1e9, 5e8, 1e7), (0, 1e9, 1e7), (1e8, 1e9, 0), (-1, 1e9, 1e6)])
def test_grid_rejects_bad_input(args):
    with pytest.raises(ValueError):
        build_frequency_grid(*args)


@given(st.floats(1e6, 1e10), st.floats(1e3, 1e8), st.integers(1, 5000))
def test_centers_are_index_exact(f0, df, count):
    g = FrequencyGrid(f0, df, count)
    c = g.centers
    assert np.all(np.diff(c) > 0) or count == 1
    k = count // 2
    assert c[k] == f0 + k * df
    assert g.center(count - 1) == c[-1]


def test_positions():
    np.testing.assert_array_equal(element_positions(UlaConfig(4, 0.005, 0.0025)), [0, 0.005, 0.010, 0.015])
    np.testing.assert_array_equal(element_positions(UlaConfig(1, 0.005, 0.0025)), [0.0])


def test_distance_matrix():
    d = distance_matrix(UlaConfig(3, 1.0, 0.5))
    np.testing.assert_array_equal(d, [[0, 1, 2], [1, 0, 1], [2, 1, 0]])


@given(st.integers(1, 40), st.floats(1e-4, 1.0))
def test_distance_matrix_properties(n, spacing):
    d = distance_matrix(UlaConfig(n, spacing, spacing / 2))
    assert np.array_equal(d, d.T)
    assert np.all(np.diag(d) == 0)
    i, j = np.indices(d.shape)
    assert np.array_equal(d, np.abs(i - j) * spacing)


def test_ula_radius_invariant():
    UlaConfig(4, 0.005, 0.0025)  # touching spheres allowed
    with pytest.raises(ValueError):
        UlaConfig(4, 0.005, 0.003)
    with pytest.raises(ValueError):
        UlaConfig(0, 0.005, 0.001)
    # a single element has no neighbour, so a large radius is fine
    assert UlaConfig(1, 0.005, 0.5).element_radius == 0.5
