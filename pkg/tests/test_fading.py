import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.constants import c

from recursion_oracle import composed_covariance
from swmimo.fading import (
    KFactorModel,
    SpatialCorrModel,
    asd_schedule,
    build_block_factors,
    draw_k,
    draw_standardized_k,
    generate_scattered_field,
    generate_streams,
    jakes_entry,
    jakes_matrix,
    k_mean_dB,
    k_var_dB,
    laplacian_mc_correlation,
    next_block,
    spatial_correlation_entry,
    spatial_correlation_matrix,
    unit_fading_field,
)
from swmimo.geometry import build_frequency_grid
from swmimo.numerics import NotPositiveDefiniteError, hermitian_sqrt

GRID = build_frequency_grid(1e8, 3e10, 1e7)


def test_jakes_entry():
    assert jakes_entry(1, 1e7, 2e-9) == pytest.approx(1 / (1 + 2 * math.pi * 1e7 * 2e-9), abs=1e-15)
    assert jakes_entry(1, 1e7, 2e-9) == pytest.approx(0.88836, abs=1e-5)
    assert jakes_entry(0, 1e7, 2e-9) == 1.0
    assert jakes_entry(-3, 1e7, 2e-9) == jakes_entry(3, 1e7, 2e-9)
    with pytest.raises(ValueError):
        jakes_entry(1, 1e7, -1.0)


def test_jakes_matrix_toeplitz_pd():
    r = jakes_matrix(8, 1e7, 2e-9)
    assert np.array_equal(r, r.T)
    assert r[2, 5] == jakes_entry(3, 1e7, 2e-9)
    assert np.linalg.eigvalsh(r).min() > 0


def test_k_factor_values():
    assert k_mean_dB(1.0) == 0.246
    assert k_var_dB(1.0) == 2.863
    assert k_mean_dB(10.0) == pytest.approx(4.388, abs=1e-12)
    assert k_var_dB(10.0) == pytest.approx(3.318, abs=1e-12)
    with pytest.raises(ValueError):
        k_mean_dB(0.0)
    with pytest.raises(ValueError):
        k_var_dB(1e-10)  # variance fit goes negative far below the band


def test_draw_k_shared_z():
    m = KFactorModel()
    assert draw_k(m, 0.0, 1e9) == pytest.approx(10 ** 0.0246)
    k1 = draw_k(m, 1.3, 1e9)
    assert 10 * math.log10(k1) == pytest.approx(0.246 + 1.3 * math.sqrt(2.863))
    zs = [draw_standardized_k(m, 1e8, np.random.default_rng(s)) for s in range(4000)]
    assert abs(np.mean(zs)) < 0.06 and abs(np.std(zs) - 1) < 0.05


def test_asd_schedule_endpoints():
    assert math.degrees(asd_schedule(GRID.f_start, GRID)) == pytest.approx(10.0)
    assert math.degrees(asd_schedule(GRID.f_stop, GRID)) == pytest.approx(5.0)
    mid = 0.5 * (GRID.f_start + GRID.f_stop)
    assert math.degrees(asd_schedule(mid, GRID)) == pytest.approx(7.5)
    with pytest.raises(ValueError):
        asd_schedule(4e10, GRID)


def test_spatial_entry_trivial_cases():
    m = SpatialCorrModel(0.3, math.radians(8), 0.005)
    assert spatial_correlation_entry(2, 2, 5e9, m) == 1
    m0 = SpatialCorrModel(0.3, 0.0, 0.005)
    val = spatial_correlation_entry(0, 1, 5e9, m0)
    assert abs(val) == pytest.approx(1.0, abs=1e-15)
    kappa = 2 * math.pi * 0.005 * 5e9 / c
    assert val == pytest.approx(np.exp(1j * kappa * math.sin(0.3)), abs=1e-15)


@pytest.mark.parametrize("lag", [1, 2, 4])
def test_spatial_quadrature_vs_monte_carlo(lag):
    m = SpatialCorrModel(0.0, asd_schedule(5e9, GRID), 0.005)
    q = spatial_correlation_entry(0, lag, 5e9, m)
    mc = laplacian_mc_correlation(lag, 5e9, m, 1_000_000, np.random.default_rng(lag))
    assert abs(q - mc) <= 3e-3


def test_spatial_quadrature_vs_monte_carlo_off_broadside():
    m = SpatialCorrModel(0.7, math.radians(10), 0.005)
    q = spatial_correlation_entry(0, 3, 2e10, m)
    mc = laplacian_mc_correlation(3, 2e10, m, 1_000_000, np.random.default_rng(11))
    assert abs(q - mc) <= 3e-3


@settings(max_examples=20, deadline=None)
@given(st.floats(-1.5, 1.5), st.floats(0.5, 30.0), st.floats(1e8, 3e10))
def test_spatial_matrix_properties(phi, asd_deg, f):
    r = spatial_correlation_matrix(6, f, SpatialCorrModel(phi, math.radians(asd_deg), 0.005))
    assert np.array_equal(r, r.conj().T)
    assert np.all(np.diag(r) == 1)
    for k in range(6):
        assert np.allclose(np.diag(r, k), r[0, k], atol=0)
    assert np.linalg.eigvalsh(r).min() >= -1e-9


def test_spatial_correlation_decreases_with_spread():
    mags = [abs(spatial_correlation_entry(0, 1, 3e10, SpatialCorrModel(0.0, math.radians(s), 0.005)))
            for s in (1, 3, 6, 10, 20)]
    assert all(a > b for a, b in zip(mags, mags[1:]))


def test_recursion_n1_is_ar1():
    g = build_block_factors(1, 1e7, 2e-9)
    rho = jakes_entry(1, 1e7, 2e-9)
    assert g.u1[0, 0] == pytest.approx(1.0)
    assert g.u2[0, 0] == pytest.approx(rho, abs=1e-15)
    assert g.u3[0, 0] == pytest.approx(math.sqrt(1 - rho**2), abs=1e-15)
    assert g.transition[0, 0] == pytest.approx(rho, abs=1e-15)
    h1 = next_block(g, np.array([0.7 + 0.1j]))
    h2 = next_block(g, np.array([-0.2j]))
    assert h2[0] == pytest.approx(rho * h1[0] + math.sqrt(1 - rho**2) * (-0.2j), abs=1e-15)


@pytest.mark.parametrize("n", [1, 4, 8])
def test_recursion_two_block_covariance_exact(n):
    g = build_block_factors(n, 1e7, 2e-9)
    cov = composed_covariance(g, 2)
    assert np.max(np.abs(cov - jakes_matrix(2 * n, 1e7, 2e-9))) <= 1e-12


@pytest.mark.parametrize("n", [1, 4, 8])
def test_recursion_stationary(n):
    g = build_block_factors(n, 1e7, 2e-9)
    cov = composed_covariance(g, 8)
    blk = jakes_matrix(2 * n, 1e7, 2e-9)
    for k in range(7):
        s = slice(k * n, (k + 2) * n)
        assert np.max(np.abs(cov[s, s] - blk)) <= 1e-12
    a = g.transition
    # A R A^H + L3 L3^H = R keeps the marginal fixed
    r = blk[:n, :n]
    np.testing.assert_allclose(a @ r @ a.conj().T + g.lower3 @ g.lower3.conj().T, r, atol=1e-12)


def test_recursion_zero_delay_spread_raises():
    with pytest.raises(NotPositiveDefiniteError):
        build_block_factors(2, 1e7, 0.0)
    with pytest.raises(ValueError):
        build_block_factors(0, 1e7, 2e-9)


def test_next_block_impulse_and_decay():
    g = build_block_factors(4, 1e7, 2e-9)
    e1 = np.zeros(4)
    e1[0] = 1.0
    h = next_block(g, e1)
    np.testing.assert_allclose(h, g.lower1[:, 0])
    norms = [np.linalg.norm(h)]
    for _ in range(30):
        norms.append(np.linalg.norm(next_block(g, np.zeros(4))))
    assert max(abs(np.linalg.eigvals(g.transition))) < 1
    assert norms[-1] < 0.5 * norms[0]
    g.reset()
    assert g.state is None


def test_streams_deterministic_and_block_matrix_input():
    g = build_block_factors(4, 1e7, 2e-9)
    a = generate_streams(g, 10, 3, np.random.default_rng(5))
    b = generate_streams(g, 10, 3, np.random.default_rng(5))
    assert a.shape == (10, 3) and np.array_equal(a, b)


def test_unit_field_subset_matches_full():
    g = build_block_factors(4, 1e7, 2e-9)
    full = unit_fading_field(2, 3, 20, g, seed=9, trial=2)
    part = unit_fading_field(2, 3, 20, g, seed=9, trial=2, indices=[3, 17])
    np.testing.assert_array_equal(part, full[[3, 17]])
    other = unit_fading_field(2, 3, 20, g, seed=9, trial=3)
    assert not np.allclose(full, other)
    with pytest.raises(IndexError):
        unit_fading_field(2, 3, 20, g, seed=9, indices=[20])


def test_siso_field_is_jakes_stream():
    g = build_block_factors(4, 1e7, 2e-9)
    trials = 4000
    x = np.stack([unit_fading_field(1, 1, 8, g, seed=1, trial=t)[:, 0, 0] for t in range(trials)])
    emp = x.T @ x.conj() / trials
    assert np.max(np.abs(emp - jakes_matrix(8, 1e7, 2e-9))) < 5 / math.sqrt(trials)


def test_kronecker_covariance_monte_carlo():
    rng = np.random.default_rng(3)
    n_r, n_t = 3, 2

    def rand_corr(n):
        b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        r = b @ b.conj().T
        d = np.sqrt(np.diag(r).real)
        return r / np.outer(d, d)

    r_r, r_t = rand_corr(n_r), rand_corr(n_t)
    sr, st_ = hermitian_sqrt(r_r), hermitian_sqrt(r_t)
    g = build_block_factors(2, 1e7, 2e-9)
    m = 20_000
    v = np.empty((m, n_r * n_t), dtype=complex)
    for t in range(m):
        h = generate_scattered_field(n_r, n_t, 4, [sr], [st_], g, seed=4, trial=t, indices=[2])[0]
        v[t] = h.reshape(-1, order="F")
    emp = v.T @ v.conj() / m
    true = np.kron(r_t.T, r_r)
    assert np.max(np.abs(emp - true)) <= 5 / math.sqrt(m)


def test_scattered_field_shape_check():
    g = build_block_factors(2, 1e7, 2e-9)
    with pytest.raises(ValueError):
        generate_scattered_field(2, 1, 4, [np.eye(3)], [np.eye(1)], g, seed=0, indices=[0])
