import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swmimo.circuit import array_impedance_matrix, coupling_matrix_rx, regime_model
from swmimo.geometry import UlaConfig
from swmimo.noise import (
    BOLTZMANN,
    antenna_noise_cov,
    build_noise_model,
    db_to_linear,
    lna_noise_cov,
    sample_noise,
    total_noise_cov,
)

KT4 = 4 * 1.380649e-23 * 290 * 1e7


def tight_pz(n, f):
    m = regime_model("tight", 0.005)
    z = array_impedance_matrix(UlaConfig(n, 0.005, m.radius), f, m)
    return coupling_matrix_rx(z, 1.0), z


def test_antenna_noise_identity():
    r = antenna_noise_cov(np.eye(3, dtype=complex))
    np.testing.assert_allclose(r, KT4 * np.eye(3), rtol=1e-15)
    assert KT4 == pytest.approx(1.60155e-13, rel=1e-5)


def test_lna_noise_scalar():
    r = lna_noise_cov(1.0, db_to_linear(5.0), n_r=2)
    assert db_to_linear(5.0) == pytest.approx(3.16228, rel=1e-5)
    assert r[0, 0] == pytest.approx(KT4 * (10**0.5 - 1), rel=1e-14)
    assert r[0, 0] == pytest.approx(3.4630e-13, rel=1e-4)
    assert r[0, 1] == 0
    assert np.all(lna_noise_cov(1.0, 1.0, n_r=2) == 0)
    with pytest.raises(ValueError):
        lna_noise_cov(1.0, 0.9)


def test_thermal_inputs_validated():
    with pytest.raises(ValueError):
        antenna_noise_cov(np.eye(2), temperature=0)
    with pytest.raises(ValueError):
        lna_noise_cov(1.0, 2.0, delta_f=-1)


def test_decoupled_hand_oracle():
    z = np.eye(3, dtype=complex)
    p = coupling_matrix_rx(z, 1.0)
    np.testing.assert_allclose(p, 0.5 * np.eye(3), rtol=1e-15)
    nf = db_to_linear(5.0)
    r = total_noise_cov(p, z, lna_gain=10.0, noise_factor_linear=nf)
    np.testing.assert_allclose(r, KT4 * ((nf - 1) + 100 / 4) * np.eye(3), rtol=1e-13)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        total_noise_cov(np.eye(2), np.eye(3))


@pytest.mark.parametrize("f", [1e8, 1e9, 1e10])
def test_total_noise_hermitian_and_pd(f):
    p, z = tight_pz(8, f)
    r = total_noise_cov(p, z)
    assert np.array_equal(r, r.conj().T)
    assert np.linalg.eigvalsh(r).min() > 0


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 10.0), st.floats(0.01, 5.0))
def test_noise_monotone_in_noise_figure(nf_db, extra):
    p, z = tight_pz(4, 2e9)
    lo = total_noise_cov(p, z, noise_factor_linear=db_to_linear(nf_db))
    hi = total_noise_cov(p, z, noise_factor_linear=db_to_linear(nf_db + extra))
    assert np.linalg.eigvalsh(hi - lo).min() > 0


def test_total_dominates_lna_term():
    p, z = tight_pz(4, 3e9)
    nf = db_to_linear(5.0)
    diff = total_noise_cov(p, z, noise_factor_linear=nf) - lna_noise_cov(1.0, nf, n_r=4)
    assert np.linalg.eigvalsh(diff).min() >= -1e-12 * np.abs(diff).max()


@pytest.mark.parametrize("n", [2, 4, 32])
def test_whitener_identity(n):
    p, z = tight_pz(n, 1e9)
    nm = build_noise_model(p, z)
    w = nm.whitener
    assert np.linalg.norm(w @ nm.r_n @ w.conj().T - np.eye(n)) <= 1e-10
    assert nm.k_b == BOLTZMANN


def test_whitened_noise_covariance_monte_carlo():
    p, z = tight_pz(4, 1e9)
    nm = build_noise_model(p, z)
    m = 100_000
    v = nm.whitener @ sample_noise(nm.r_n, m, np.random.default_rng(7))
    cov = v @ v.conj().T / m
    assert np.max(np.abs(cov - np.eye(4))) <= 3 / np.sqrt(m)
