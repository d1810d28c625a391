"""Rician MIMO channel assembly in raw circuit form and in whitened equivalent form.

The raw path builds ``H = beta R_in P Z_RT Q`` from the trans-impedance and
whitens it with ``R_n^{-1/2}``. The equivalent path writes the same channel
as ``alpha sqrt(beta) [ sqrt(K/(K+1)) w_R w_T^H + sqrt(1/(K+1)) C_R^{1/2} U C_T^{1/2} ]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .numerics import hermitian_sqrt

__all__ = [
    "K_MIN",
    "K_MAX",
    "ChannelRealization",
    "steering_vector",
    "path_gain",
    "rician_weights",
    "assemble_h_mimo",
    "trans_impedance",
    "raw_channel",
    "equivalent_steering_rx",
    "equivalent_steering_tx",
    "equivalent_spatial_corr_rx",
    "equivalent_spatial_corr_tx",
    "equivalent_corr_factors",
    "equivalent_los",
    "equivalent_scattered",
    "whitened_channel",
    "simulate_output",
]

# outside [K_MIN, K_MAX] the Rician mixture collapses to its limit form
K_MIN = 1e-8
K_MAX = 1e8


def steering_vector(n: int, spacing: float, f: float, theta: float) -> np.ndarray:
    """ULA response ``exp(j 2 pi spacing f/c m sin(theta))``, first element as reference."""
    m = np.arange(n)
    return np.exp(1j * 2 * np.pi * spacing * f / SPEED_OF_LIGHT * m * math.sin(theta))


def path_gain(f: float, k_linear: float, g_t: float = 1.0, g_r: float = 1.0, distance: float = 90.0, gamma: float = 3.5):
    """Return ``(beta_los, beta)`` with ``beta = beta_los (1 + 1/K)``.

    ``K = inf`` (or above ``K_MAX``) returns ``beta = beta_los``. ``K = 0``
    is rejected: the pure Rayleigh case has no finite total gain in this form.
    """
    if not (f > 0 and distance > 0):
        raise ValueError("frequency and distance must be positive")
    if not k_linear > 0:
        raise ValueError("K must be positive; request Rayleigh fading through the rayleigh K mode")
    beta_los = g_t * g_r * (SPEED_OF_LIGHT / (2 * math.pi * f * distance ** (gamma / 2))) ** 2
    if k_linear > K_MAX:
        return beta_los, beta_los
    return beta_los, beta_los * (1.0 + 1.0 / k_linear)


def rician_weights(k_linear: float) -> tuple[float, float]:
    """Amplitude weights ``(sqrt(K/(K+1)), sqrt(1/(K+1)))`` with limit branches."""
    if k_linear < 0:
        raise ValueError("K must be non-negative")
    if k_linear > K_MAX:
        return 1.0, 0.0
    if k_linear < K_MIN:
        return 0.0, 1.0
    return math.sqrt(k_linear / (k_linear + 1.0)), math.sqrt(1.0 / (k_linear + 1.0))


def _outer(a, b):
    return np.outer(a, np.conj(b))


def assemble_h_mimo(k_linear, a_r, a_t, r_r_sqrt, r_t_sqrt, u_field, beta) -> np.ndarray:
    """Conventional correlated Rician channel ``H_MIMO``."""
    a_r, a_t, u = np.asarray(a_r), np.asarray(a_t), np.asarray(u_field)
    if u.shape != (a_r.size, a_t.size):
        raise ValueError(f"fading field shape {u.shape} does not match ({a_r.size}, {a_t.size})")
    w_los, w_sc = rician_weights(k_linear)
    h = w_los * _outer(a_r, a_t)
    if w_sc:
        h = h + w_sc * (np.asarray(r_r_sqrt) @ u @ np.asarray(r_t_sqrt))
    return math.sqrt(beta) * h


def trans_impedance(z_r, z_t, h_mimo, phi: float) -> np.ndarray:
    """``Z_RT = diag(Re Z_R)^{1/2} H_MIMO diag(Re Z_T)^{1/2} e^{j phi}``."""
    dr = np.sqrt(np.real(np.diag(z_r)))
    dt = np.sqrt(np.real(np.diag(z_t)))
    return (dr[:, None] * np.asarray(h_mimo) * dt[None, :]) * np.exp(1j * phi)


def raw_channel(p, z_rt, q, lna_gain: float, r_in: float) -> np.ndarray:
    """Unwhitened voltage-to-voltage channel ``beta R_in P Z_RT Q``."""
    return lna_gain * r_in * (np.asarray(p) @ np.asarray(z_rt) @ np.asarray(q))


def equivalent_steering_rx(whitener, p, a_r) -> np.ndarray:
    return np.asarray(whitener) @ (np.asarray(p) @ np.asarray(a_r))


def equivalent_steering_tx(q, a_t) -> np.ndarray:
    return np.asarray(q).conj().T @ np.asarray(a_t)


def equivalent_spatial_corr_rx(whitener, p, r_r) -> np.ndarray:
    """``C_R = W P R_R P^H W`` (Hermitian by symmetrization)."""
    m = np.asarray(whitener) @ np.asarray(p)
    c = m @ np.asarray(r_r) @ m.conj().T
    return 0.5 * (c + c.conj().T)


def equivalent_spatial_corr_tx(q, r_t) -> np.ndarray:
    """``C_T = Q^H R_T Q``."""
    q = np.asarray(q)
    c = q.conj().T @ np.asarray(r_t) @ q
    return 0.5 * (c + c.conj().T)


def equivalent_corr_factors(whitener, p, r_r_sqrt, q, r_t_sqrt, *, hermitian: bool = False):
    """Square-root factors ``(F_R, F_T)`` with ``F_R F_R^H = C_R`` and ``F_T^H F_T = C_T``.

    By default these are the coupling-consistent factors ``W P R_R^{1/2}`` and
    ``R_T^{1/2} Q``, which make the equivalent channel agree draw-by-draw with
    the raw circuit path. ``hermitian=True`` returns the PSD roots of
    ``C_R``/``C_T`` instead; the resulting channel has the same distribution.
    """
    f_r = np.asarray(whitener) @ np.asarray(p) @ np.asarray(r_r_sqrt)
    f_t = np.asarray(r_t_sqrt) @ np.asarray(q)
    if hermitian:
        return hermitian_sqrt(f_r @ f_r.conj().T), hermitian_sqrt(f_t.conj().T @ f_t)
    return f_r, f_t


def equivalent_los(alpha, beta_los, w_r, w_t) -> np.ndarray:
    return alpha * math.sqrt(beta_los) * _outer(w_r, w_t)


def equivalent_scattered(alpha, beta, k_linear, c_r_sqrt, u_field, c_t_sqrt) -> np.ndarray:
    _, w_sc = rician_weights(k_linear)
    return alpha * math.sqrt(beta) * w_sc * (np.asarray(c_r_sqrt) @ np.asarray(u_field) @ np.asarray(c_t_sqrt))


def whitened_channel(alpha, beta, k_linear, w_r, w_t, c_r_sqrt, u_field, c_t_sqrt) -> np.ndarray:
    """Final whitened channel ``H~`` from equivalent steering and correlation factors."""
    w_los, w_sc = rician_weights(k_linear)
    h = w_los * _outer(w_r, w_t)
    if w_sc:
        h = h + w_sc * (np.asarray(c_r_sqrt) @ np.asarray(u_field) @ np.asarray(c_t_sqrt))
    return alpha * math.sqrt(beta) * h


def simulate_output(h_tilde, v_g, seed=None, *, noiseless: bool = False, rng=None) -> np.ndarray:
    """One whitened output ``H~ v_G + n``, ``n ~ CN(0, I)``."""
    h = np.asarray(h_tilde)
    y = h @ np.asarray(v_g)
    if noiseless:
        return y
    rng = np.random.default_rng(seed) if rng is None else rng
    n_r = h.shape[0]
    return y + (rng.standard_normal(n_r) + 1j * rng.standard_normal(n_r)) * math.sqrt(0.5)


@dataclass(frozen=True)
class ChannelRealization:
    """Channel quantities for one trial; arrays carry a leading frequency axis."""

    freqs: np.ndarray
    h_mimo: np.ndarray
    h_eq_los: np.ndarray
    h_eq_sc: np.ndarray
    h_tilde: np.ndarray
    w_r: np.ndarray
    w_t: np.ndarray
    c_r: np.ndarray
    c_t: np.ndarray
    alpha: np.ndarray
    path_gain: np.ndarray
    path_gain_los: np.ndarray
    k_linear: np.ndarray
    u_field: np.ndarray

    def __len__(self) -> int:
        return self.freqs.size
