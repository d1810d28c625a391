"""Receiver noise covariance and whitening."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.constants import k as BOLTZMANN

from .numerics import hermitian_inv_sqrt, hermitian_sqrt

__all__ = [
    "BOLTZMANN",
    "NoiseModel",
    "db_to_linear",
    "antenna_noise_cov",
    "lna_noise_cov",
    "total_noise_cov",
    "build_whitener",
    "build_noise_model",
    "sample_noise",
]


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _check_thermal(temperature: float, delta_f: float) -> None:
    if not temperature > 0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    if not delta_f > 0:
        raise ValueError(f"delta_f must be positive, got {delta_f}")


def antenna_noise_cov(z_r, k_b: float = BOLTZMANN, temperature: float = 290.0, delta_f: float = 1e7) -> np.ndarray:
    """Thermal open-circuit noise covariance ``4 k T df Re{Z_R}`` (V^2)."""
    _check_thermal(temperature, delta_f)
    re = np.real(np.asarray(z_r))
    return 4.0 * k_b * temperature * delta_f * 0.5 * (re + re.T)


def lna_noise_cov(
    r_in: float,
    noise_factor_linear: float,
    k_b: float = BOLTZMANN,
    temperature: float = 290.0,
    delta_f: float = 1e7,
    n_r: int = 1,
) -> np.ndarray:
    """LNA noise ``4 k T df R_in (N_f - 1) I``."""
    _check_thermal(temperature, delta_f)
    if noise_factor_linear < 1:
        raise ValueError(f"noise factor must be >= 1 (0 dB), got {noise_factor_linear}")
    return 4.0 * k_b * temperature * delta_f * r_in * (noise_factor_linear - 1.0) * np.eye(n_r)


def total_noise_cov(
    p,
    z_r,
    *,
    r_in: float = 1.0,
    lna_gain: float = 10.0,
    noise_factor_linear: float = db_to_linear(5.0),
    temperature: float = 290.0,
    delta_f: float = 1e7,
    k_b: float = BOLTZMANN,
) -> np.ndarray:
    """Covariance of ``n = v_N + beta R_in P v_NR`` at the LNA outputs."""
    p = np.asarray(p)
    z_r = np.asarray(z_r)
    if p.shape != z_r.shape or p.shape[0] != p.shape[1]:
        raise ValueError(f"P {p.shape} and Z_R {z_r.shape} must be square and equal in size")
    n_r = p.shape[0]
    coupled = p @ np.real(z_r) @ p.conj().T
    coupled = 0.5 * (coupled + coupled.conj().T)
    scale = 4.0 * k_b * temperature * delta_f * r_in
    return lna_noise_cov(r_in, noise_factor_linear, k_b, temperature, delta_f, n_r) + scale * lna_gain**2 * r_in * coupled


def build_whitener(r_n) -> np.ndarray:
    """``R_n^{-1/2}`` (Hermitian root)."""
    return hermitian_inv_sqrt(r_n)


@dataclass(frozen=True)
class NoiseModel:
    temperature: float
    delta_f: float
    r_in: float
    noise_factor_linear: float
    lna_gain: float
    r_n: np.ndarray
    whitener: np.ndarray
    k_b: float = BOLTZMANN


def build_noise_model(
    p,
    z_r,
    *,
    r_in: float = 1.0,
    lna_gain: float = 10.0,
    noise_figure_db: float = 5.0,
    temperature: float = 290.0,
    delta_f: float = 1e7,
    k_b: float = BOLTZMANN,
) -> NoiseModel:
    nf = db_to_linear(noise_figure_db)
    r_n = total_noise_cov(
        p, z_r, r_in=r_in, lna_gain=lna_gain, noise_factor_linear=nf,
        temperature=temperature, delta_f=delta_f, k_b=k_b,
    )
    return NoiseModel(temperature, delta_f, r_in, nf, lna_gain, r_n, build_whitener(r_n), k_b)


def sample_noise(r_n, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` noise vectors with covariance ``r_n``; shape ``(n_r, size)``."""
    n_r = np.asarray(r_n).shape[0]
    w = (rng.standard_normal((n_r, size)) + 1j * rng.standard_normal((n_r, size))) / np.sqrt(2)
    return hermitian_sqrt(r_n) @ w
