"""Per-frequency link state and channel realizations for a scenario."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import channel as ch
from .circuit import ImpedanceSet, build_impedance_set, regime_model
from .config import ScenarioConfig
from .fading import (
    KFactorModel,
    SpatialCorrModel,
    asd_schedule,
    build_block_factors,
    draw_k,
    draw_standardized_k,
    spatial_correlation_matrix,
    stream_rng,
    unit_fading_field,
)
from .geometry import FrequencyGrid, UlaConfig
from .noise import NoiseModel, build_noise_model
from .numerics import hermitian_sqrt

__all__ = ["LinkState", "Simulator"]

# spawn-key namespace for the K-factor environment draw (fading streams use 3-tuples)
_K_STREAM = 0x4B


@dataclass(frozen=True)
class LinkState:
    """Everything at one sub-channel that does not depend on the fading draw."""

    f: float
    circuit: ImpedanceSet
    noise: NoiseModel
    r_r: np.ndarray
    r_t: np.ndarray
    r_r_sqrt: np.ndarray
    r_t_sqrt: np.ndarray
    a_r: np.ndarray
    a_t: np.ndarray
    w_r: np.ndarray
    w_t: np.ndarray
    c_r: np.ndarray
    c_t: np.ndarray
    f_r: np.ndarray
    f_t: np.ndarray
    beta_los: float


class Simulator:
    """Channel generator for one scenario and coupling regime.

    Parameters
    ----------
    config : ScenarioConfig
    regime : str, optional
        Overrides ``config.array.regime`` for both arrays.
    n_r, n_t : int, optional
        Override array sizes.
    radius_r, radius_t : float, optional
        Override element radii (``a_R``, ``a_T``); otherwise the regime default.
    """

    def __init__(self, config: ScenarioConfig, *, regime=None, n_r=None, n_t=None, radius_r=None, radius_t=None):
        self.config = config
        a = config.array
        self.regime = regime or a.regime
        self.grid: FrequencyGrid = config.frequency_grid()
        self.rx_model = regime_model(
            self.regime, a.spacing_m, r_rad=config.circuit.r_rad_ohm,
            radius=radius_r if radius_r is not None else a.radius_r_m, kernel=config.circuit.kernel,
        )
        self.tx_model = regime_model(
            self.regime, a.spacing_m, r_rad=config.circuit.r_rad_ohm,
            radius=radius_t if radius_t is not None else a.radius_t_m, kernel=config.circuit.kernel,
        )
        self.rx = UlaConfig(n_r or a.n_r, a.spacing_m, self.rx_model.radius)
        self.tx = UlaConfig(n_t or a.n_t, a.spacing_m, self.tx_model.radius)
        fd = config.fading
        self.k_model = KFactorModel(fd.k_mu_slope, fd.k_mu_intercept, fd.k_var_slope, fd.k_var_intercept)
        self._gen = None
        self._states: dict[int, LinkState] = {}

    @property
    def generator(self):
        if self._gen is None:
            fd = self.config.fading
            n = min(fd.block_len, self.grid.count)
            self._gen = build_block_factors(n, self.grid.delta_f, fd.tau_rms_ns * 1e-9)
        return self._gen

    # ------------------------------------------------------------------
    def spatial_models(self, f: float) -> tuple[SpatialCorrModel, SpatialCorrModel]:
        fd = self.config.fading
        asd = asd_schedule(f, self.grid, fd.asd_low_deg, fd.asd_high_deg)
        m = SpatialCorrModel(fd.cluster_angle_rad, asd, self.config.array.spacing_m)
        return m, m

    def state(self, index: int) -> LinkState:
        st = self._states.get(index)
        if st is None:
            st = self._states[index] = self._build_state(index)
        return st

    def _build_state(self, index: int) -> LinkState:
        cfg = self.config
        f = self.grid.center(index)
        link = cfg.link
        imp = build_impedance_set(
            f, self.tx, self.rx, self.tx_model, self.rx_model,
            r=link.r_ohm, r_in=link.r_in_ohm, lna_gain=link.lna_gain,
        )
        noise = build_noise_model(
            imp.p, imp.z_r, r_in=link.r_in_ohm, lna_gain=link.lna_gain,
            noise_figure_db=cfg.noise.noise_figure_dB, temperature=cfg.noise.temperature_K,
            delta_f=self.grid.delta_f,
        )
        m_r, m_t = self.spatial_models(f)
        r_r = spatial_correlation_matrix(self.rx.n_elements, f, m_r)
        r_t = spatial_correlation_matrix(self.tx.n_elements, f, m_t)
        r_r_sqrt, r_t_sqrt = hermitian_sqrt(r_r), hermitian_sqrt(r_t)
        a_r = ch.steering_vector(self.rx.n_elements, self.rx.spacing, f, link.theta_r_rad)
        a_t = ch.steering_vector(self.tx.n_elements, self.tx.spacing, f, link.theta_t_rad)
        w = noise.whitener
        f_r, f_t = ch.equivalent_corr_factors(w, imp.p, r_r_sqrt, imp.q, r_t_sqrt)
        beta_los, _ = ch.path_gain(f, math.inf, link.g_t, link.g_r, link.distance_m, link.gamma)
        return LinkState(
            f, imp, noise, r_r, r_t, r_r_sqrt, r_t_sqrt, a_r, a_t,
            ch.equivalent_steering_rx(w, imp.p, a_r), ch.equivalent_steering_tx(imp.q, a_t),
            ch.equivalent_spatial_corr_rx(w, imp.p, r_r), ch.equivalent_spatial_corr_tx(imp.q, r_t),
            f_r, f_t, beta_los,
        )

    # ------------------------------------------------------------------
    def k_environment(self, trial: int) -> float:
        """Standardized K draw shared by every frequency of one environment."""
        seed = self.config.fading.seed
        key = (_K_STREAM,) if self.config.fading.k_draw == "per_run" else (_K_STREAM, trial)
        return draw_standardized_k(self.k_model, self.grid.f_start, stream_rng(seed, *key))

    def gains(self, f: float, z: float) -> tuple[float, float, float]:
        """``(K, beta_los, beta)`` at ``f`` for environment ``z``."""
        link = self.config.link
        if self.config.fading.k_mode == "rayleigh":
            beta_los, _ = ch.path_gain(f, math.inf, link.g_t, link.g_r, link.distance_m, link.gamma)
            return 0.0, beta_los, beta_los
        k = draw_k(self.k_model, z, f)
        beta_los, beta = ch.path_gain(f, k, link.g_t, link.g_r, link.distance_m, link.gamma)
        return k, beta_los, beta

    def fading_field(self, trial: int, indices) -> np.ndarray:
        return unit_fading_field(
            self.rx.n_elements, self.tx.n_elements, self.grid.count, self.generator,
            self.config.fading.seed, trial, indices,
        )

    def realize(self, trial: int = 0, indices=None) -> ch.ChannelRealization:
        """Channel realization of one trial at the requested sub-channel indices."""
        idx = np.arange(self.grid.count) if indices is None else np.atleast_1d(np.asarray(indices, dtype=int))
        u = self.fading_field(trial, idx)
        z = self.k_environment(trial)
        n_l, n_r, n_t = idx.size, self.rx.n_elements, self.tx.n_elements
        mats = {k: np.empty((n_l, n_r, n_t), complex) for k in ("h_mimo", "h_eq_los", "h_eq_sc", "h_tilde")}
        w_r = np.empty((n_l, n_r), complex)
        w_t = np.empty((n_l, n_t), complex)
        c_r = np.empty((n_l, n_r, n_r), complex)
        c_t = np.empty((n_l, n_t, n_t), complex)
        alpha = np.empty(n_l, complex)
        beta = np.empty(n_l)
        beta_los = np.empty(n_l)
        k_lin = np.empty(n_l)
        for pos, index in enumerate(idx):
            st = self.state(int(index))
            k, b_los, b = self.gains(st.f, z)
            al = st.circuit.alpha
            mats["h_mimo"][pos] = ch.assemble_h_mimo(k, st.a_r, st.a_t, st.r_r_sqrt, st.r_t_sqrt, u[pos], b)
            w_los, _ = ch.rician_weights(k)
            mats["h_eq_los"][pos] = ch.equivalent_los(al, b_los, st.w_r, st.w_t) if w_los else 0.0
            mats["h_eq_sc"][pos] = ch.equivalent_scattered(al, b, k, st.f_r, u[pos], st.f_t)
            mats["h_tilde"][pos] = ch.whitened_channel(al, b, k, st.w_r, st.w_t, st.f_r, u[pos], st.f_t)
            w_r[pos], w_t[pos], c_r[pos], c_t[pos] = st.w_r, st.w_t, st.c_r, st.c_t
            alpha[pos], beta[pos], beta_los[pos], k_lin[pos] = al, b, b_los, k
        return ch.ChannelRealization(
            self.grid.centers[idx], mats["h_mimo"], mats["h_eq_los"], mats["h_eq_sc"], mats["h_tilde"],
            w_r, w_t, c_r, c_t, alpha, beta, beta_los, k_lin, u,
        )

    def raw_whitened(self, index: int, h_mimo) -> np.ndarray:
        """Whitened channel via the trans-impedance circuit path, for cross-checking."""
        st = self.state(index)
        imp = st.circuit
        link = self.config.link
        z_rt = ch.trans_impedance(imp.z_r, imp.z_t, h_mimo, imp.phi)
        return st.noise.whitener @ ch.raw_channel(imp.p, z_rt, imp.q, link.lna_gain, link.r_in_ohm)
