"""Eigenchannel SNRs, scattered power, CDFs and coupling-distortion profiles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "POWER_POLICIES",
    "SnrProfile",
    "mode_power",
    "eigen_snrs",
    "scattered_power",
    "empirical_cdf",
    "steering_magnitude_profile",
    "effective_corr_row",
    "to_db",
]

POWER_POLICIES = ("total", "per_subchannel")


def to_db(x):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(x)


def mode_power(p_total: float, n_subchannels: int, n_modes: int, policy: str = "total") -> float:
    """Equal power per eigenmode.

    ``total`` spreads ``p_total`` over every sub-channel and mode;
    ``per_subchannel`` gives each sub-channel the full ``p_total``.
    """
    if policy == "total":
        return p_total / (n_subchannels * n_modes)
    if policy == "per_subchannel":
        return p_total / n_modes
    raise ValueError(f"unknown power policy {policy!r}; expected one of {POWER_POLICIES}")


@dataclass(frozen=True)
class SnrProfile:
    """Per-frequency eigenvalues, allocated powers and SNRs.

    ``eigenvalues``, ``power`` and ``snr`` have shape ``(L, n_modes)`` with
    modes sorted by descending eigenvalue.
    """

    freqs: np.ndarray
    eigenvalues: np.ndarray
    power: np.ndarray
    snr: np.ndarray

    @property
    def snr_db(self) -> np.ndarray:
        return to_db(self.snr)


def eigen_snrs(h_tilde, p_total: float = 2.0, *, policy: str = "total", freqs=None, n_subchannels=None) -> SnrProfile:
    """SNR of each eigenmode, ``P_i * lambda_i(H~^H H~)``, under equal power.

    ``h_tilde`` is ``(L, N_r, N_t)`` (a single matrix is promoted). Active
    modes are the ``min(N_r, N_t)`` largest; ``n_subchannels`` defaults to ``L``.
    """
    h = np.asarray(h_tilde)
    if h.ndim == 2:
        h = h[None]
    n_l, n_r, n_t = h.shape
    n_modes = min(n_r, n_t)
    gram = np.conj(np.swapaxes(h, 1, 2)) @ h
    lam = np.linalg.eigvalsh(gram)[:, ::-1][:, :n_modes]
    lam = np.clip(lam, 0.0, None)
    p = mode_power(p_total, n_subchannels or n_l, n_modes, policy)
    power = np.full(lam.shape, p)
    f = np.arange(n_l, dtype=float) if freqs is None else np.asarray(freqs, dtype=float)
    return SnrProfile(f, lam, power, power * lam)


def scattered_power(h_eq_sc, p_t: float) -> float:
    """Isotropic-input received scattered power ``p_t ||H_sc||_F^2 / N_t``."""
    h = np.asarray(h_eq_sc)
    return float(p_t * np.sum(np.abs(h) ** 2) / h.shape[-1])


def empirical_cdf(samples):
    """Step CDF as ``(values, probabilities)``; ``probabilities[k] = (k+1)/n``."""
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    if x.size == 0:
        raise ValueError("empirical_cdf needs at least one sample")
    return x, np.arange(1, x.size + 1) / x.size


def steering_magnitude_profile(w) -> np.ndarray:
    """``|w_m| / ||w||`` sorted in descending order."""
    mag = np.abs(np.asarray(w)).ravel()
    norm = np.linalg.norm(mag)
    if norm == 0:
        raise ValueError("steering vector is identically zero")
    return np.sort(mag / norm)[::-1]


def effective_corr_row(c) -> np.ndarray:
    """Magnitudes of the first row of ``c`` normalized by ``c[0, 0]``."""
    c = np.asarray(c)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError("expected a square matrix")
    d = abs(c[0, 0])
    if d == 0:
        raise ValueError("first diagonal entry is zero")
    return np.abs(c[0]) / d
