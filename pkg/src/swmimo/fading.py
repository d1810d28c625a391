"""Spatial and frequency correlation of the scattered field, and the K-factor law.

Spatial correlation follows the local scattering model with a Laplacian
angular spread. Frequency correlation is the Jakes-type profile
``1 / (1 + 2 pi df |m| tau)``, generated with a constant-memory blockwise
Cholesky recursion along the frequency axis.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.integrate import quad
from scipy.linalg import solve_triangular, toeplitz

from .geometry import FrequencyGrid
from .numerics import cholesky_upper

__all__ = [
    "QuadratureError",
    "SpatialCorrModel",
    "FreqCorrGenerator",
    "KFactorModel",
    "spatial_correlation_entry",
    "spatial_correlation_matrix",
    "laplacian_mc_correlation",
    "asd_schedule",
    "jakes_entry",
    "jakes_matrix",
    "build_block_factors",
    "next_block",
    "generate_streams",
    "stream_rng",
    "unit_fading_field",
    "generate_scattered_field",
    "k_mean_dB",
    "k_var_dB",
    "draw_k",
    "draw_standardized_k",
]

QUAD_TARGET = 1e-9
QUAD_FAIL = 1e-8
# e^-40 ~ 4e-18: Laplacian tail beyond 40 scale lengths is below quadrature noise
_TAIL_CUTOFF = 40.0


class QuadratureError(RuntimeError):
    pass


# --------------------------------------------------------------------------
# spatial correlation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpatialCorrModel:
    """Scattering cluster seen by a ULA.

    ``asd`` is the angular standard deviation; the deviation from
    ``central_angle`` is Laplacian with scale ``asd / sqrt(2)``, truncated to
    ``[-pi, pi]`` and renormalized.
    """

    central_angle: float
    asd: float
    spacing: float

    def __post_init__(self):
        if self.asd < 0:
            raise ValueError("asd must be non-negative")
        if not self.spacing > 0:
            raise ValueError("spacing must be positive")

    @property
    def laplace_scale(self) -> float:
        return self.asd / math.sqrt(2.0)


@functools.lru_cache(maxsize=200_000)
def _lag_correlation(kappa: float, b: float, phi: float) -> complex:
    """E[exp(j kappa sin(phi + w))] for w ~ Laplace(0, b) truncated to [-pi, pi]."""
    if kappa == 0.0:
        return 1.0 + 0j
    if b == 0.0:
        return complex(math.cos(kappa * math.sin(phi)), math.sin(kappa * math.sin(phi)))
    # w = +/- b t, density e^{-t}/2 in t, mass 1 - e^{-pi/b} on the truncated support
    upper = min(math.pi / b, _TAIL_CUTOFF)
    mass = -math.expm1(-math.pi / b)
    total = 0j
    err = 0.0
    for sign in (1.0, -1.0):
        for part, fn in ((1.0, math.cos), (1j, math.sin)):
            val, e = quad(
                lambda t: fn(kappa * math.sin(phi + sign * b * t)) * math.exp(-t),
                0.0, upper, epsabs=QUAD_TARGET / 8, epsrel=0.0, limit=500,
            )
            total += part * val
            err += e
    if err / (2 * mass) > QUAD_FAIL:
        raise QuadratureError(f"estimated error {err:.2e}")
    return total / (2 * mass)


def spatial_correlation_entry(i: int, j: int, f: float, model: SpatialCorrModel) -> complex:
    """``[R_s]_ij``: average of ``exp(j 2 pi delta f/c (j-i) sin(angle))``."""
    if i == j:
        return 1.0 + 0j
    kappa = 2 * math.pi * model.spacing * f / SPEED_OF_LIGHT * (j - i)
    try:
        val = _lag_correlation(kappa, model.laplace_scale, model.central_angle)
    except QuadratureError as exc:
        raise QuadratureError(f"quadrature did not converge for (i={i}, j={j}, f={f:.6g} Hz): {exc}") from None
    return val


def spatial_correlation_matrix(n: int, f: float, model: SpatialCorrModel) -> np.ndarray:
    """Hermitian Toeplitz ``n x n`` correlation matrix with unit diagonal."""
    row = np.array([spatial_correlation_entry(0, m, f, model) for m in range(n)])
    return toeplitz(row.conj(), row)


def laplacian_mc_correlation(lag: int, f: float, model: SpatialCorrModel, draws: int, rng) -> complex:
    """Monte Carlo estimate of one spatial-correlation lag (truncated Laplacian)."""
    b = model.laplace_scale
    out = np.empty(0)
    while out.size < draws:
        w = rng.laplace(0.0, b, size=draws) if b > 0 else np.zeros(draws)
        out = np.concatenate([out, w[np.abs(w) <= math.pi]])
    w = out[:draws]
    kappa = 2 * math.pi * model.spacing * f / SPEED_OF_LIGHT * lag
    return complex(np.mean(np.exp(1j * kappa * np.sin(model.central_angle + w))))


def asd_schedule(f: float, grid: FrequencyGrid, low_deg: float = 10.0, high_deg: float = 5.0) -> float:
    """ASD in radians, linear in frequency from ``low_deg`` to ``high_deg`` over the grid."""
    lo, hi = grid.f_start, grid.f_stop
    span = hi - lo
    tol = 1e-9 * max(hi, 1.0)
    if f < lo - tol or f > hi + tol:
        raise ValueError(f"frequency {f:.6g} Hz outside grid span [{lo:.6g}, {hi:.6g}]")
    frac = 0.0 if span == 0 else min(max((f - lo) / span, 0.0), 1.0)
    return math.radians(low_deg + (high_deg - low_deg) * frac)


# --------------------------------------------------------------------------
# frequency correlation
# --------------------------------------------------------------------------

def jakes_entry(lag: int, delta_f: float, tau_rms: float) -> float:
    if tau_rms < 0:
        raise ValueError("tau_rms must be non-negative")
    return 1.0 / (1.0 + 2 * math.pi * delta_f * abs(lag) * tau_rms)


def jakes_matrix(size: int, delta_f: float, tau_rms: float) -> np.ndarray:
    if tau_rms < 0:
        raise ValueError("tau_rms must be non-negative")
    col = 1.0 / (1.0 + 2 * math.pi * delta_f * np.arange(size) * tau_rms)
    return toeplitz(col)


@dataclass
class FreqCorrGenerator:
    """Blockwise recursion ``h_k = A h_{k-1} + U3^H u_k`` with ``h_1 = U1^H u_1``.

    ``U1, U2, U3`` are the blocks of the upper Cholesky factor of the
    ``2n x 2n`` Jakes matrix; ``A = U2^H (U1^H)^{-1}``.
    """

    block_len: int
    delta_f: float
    tau_rms: float
    u1: np.ndarray
    u2: np.ndarray
    u3: np.ndarray
    transition: np.ndarray
    state: np.ndarray | None = field(default=None, repr=False)

    @property
    def lower1(self) -> np.ndarray:
        return self.u1.conj().T

    @property
    def lower3(self) -> np.ndarray:
        return self.u3.conj().T

    def reset(self) -> None:
        self.state = None

    def truncation(self) -> float:
        """Correlation dropped beyond the modelled window (lag ``2n``)."""
        return jakes_entry(2 * self.block_len, self.delta_f, self.tau_rms)


def build_block_factors(n: int, delta_f: float, tau_rms: float) -> FreqCorrGenerator:
    if int(n) != n or n < 1:
        raise ValueError(f"block length must be a positive integer, got {n}")
    r_f = jakes_matrix(2 * n, delta_f, tau_rms)
    u = cholesky_upper(r_f)
    u1, u2, u3 = u[:n, :n], u[:n, n:], u[n:, n:]
    # A U1^H = U2^H  <=>  U1 A^H = U2
    a = solve_triangular(u1, u2, lower=False).conj().T
    return FreqCorrGenerator(n, delta_f, tau_rms, u1, u2, u3, a)


def next_block(gen: FreqCorrGenerator, u_k: np.ndarray) -> np.ndarray:
    """Advance the recursion by one block. ``u_k`` is ``(n,)`` or ``(n, streams)``."""
    u_k = np.asarray(u_k)
    if gen.state is None:
        h = gen.lower1 @ u_k
    else:
        h = gen.transition @ gen.state + gen.lower3 @ u_k
    gen.state = h
    return h


def _cn(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * math.sqrt(0.5)


def generate_streams(gen: FreqCorrGenerator, length: int, n_streams: int, rng: np.random.Generator) -> np.ndarray:
    """``(length, n_streams)`` unit-power frequency-correlated samples from one RNG."""
    gen.reset()
    n = gen.block_len
    out = np.empty((length, n_streams), dtype=complex)
    for start in range(0, length, n):
        h = next_block(gen, _cn(rng, (n, n_streams)))
        stop = min(start + n, length)
        out[start:stop] = h[: stop - start]
    gen.reset()
    return out


def stream_rng(seed: int, *key: int) -> np.random.Generator:
    """Counter-based generator for one (seed, key...) stream; independent of draw order."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=tuple(key))))


def unit_fading_field(
    n_r: int,
    n_t: int,
    length: int,
    gen: FreqCorrGenerator,
    seed: int,
    trial: int = 0,
    indices=None,
) -> np.ndarray:
    """i.i.d.-across-entries, Jakes-correlated ``U(f)`` fields.

    Entry ``(i, j)`` runs its own recursion seeded from ``(seed, trial, i, j)``.
    Returns ``(len(indices), n_r, n_t)``; only the requested sub-channels are
    kept, so memory does not grow with ``length``.
    """
    idx = np.arange(length) if indices is None else np.asarray(indices, dtype=int)
    if idx.size and (idx.min() < 0 or idx.max() >= length):
        raise IndexError("frequency index outside the grid")
    last = int(idx.max()) + 1 if idx.size else 0
    n = gen.block_len
    out = np.empty((idx.size, n_r, n_t), dtype=complex)
    rngs = [[stream_rng(seed, trial, i, j) for j in range(n_t)] for i in range(n_r)]
    gen.reset()
    for start in range(0, last, n):
        u = np.empty((n, n_r * n_t), dtype=complex)
        for i in range(n_r):
            for j in range(n_t):
                u[:, i * n_t + j] = _cn(rngs[i][j], n)
        if start + n >= last:
            # final block: rows past the last requested index are never used
            m = last - start
            if gen.state is None:
                h = gen.lower1[:m, :m] @ u[:m]
            else:
                h = gen.transition[:m] @ gen.state + gen.lower3[:m, :m] @ u[:m]
        else:
            h = next_block(gen, u)
        sel = (idx >= start) & (idx < start + n)
        if np.any(sel):
            out[sel] = h[idx[sel] - start].reshape(-1, n_r, n_t)
    gen.reset()
    return out


def generate_scattered_field(
    n_r: int,
    n_t: int,
    length: int,
    spatial_r_sqrt,
    spatial_t_sqrt,
    gen: FreqCorrGenerator,
    seed: int,
    trial: int = 0,
    indices=None,
) -> np.ndarray:
    """Colored fields ``R_R^{1/2}(f) U(f) R_T^{1/2}(f)``, one per requested sub-channel.

    ``spatial_r_sqrt`` / ``spatial_t_sqrt`` are sequences of square-root
    factors aligned with ``indices`` (or with the whole grid).
    """
    u = unit_fading_field(n_r, n_t, length, gen, seed, trial, indices)
    rr = np.asarray(spatial_r_sqrt)
    rt = np.asarray(spatial_t_sqrt)
    if rr.shape != (u.shape[0], n_r, n_r) or rt.shape != (u.shape[0], n_t, n_t):
        raise ValueError("spatial factors do not match the requested sub-channels")
    return rr @ u @ rt


# --------------------------------------------------------------------------
# Rician K-factor
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class KFactorModel:
    """Log-normal K-factor whose dB mean and variance are linear in log10(f_GHz)."""

    mu_slope: float = 4.142
    mu_intercept: float = 0.246
    var_slope: float = 0.455
    var_intercept: float = 2.863


def _check_ghz(f_ghz: float) -> None:
    if not f_ghz > 0:
        raise ValueError(f"frequency must be positive, got {f_ghz} GHz")


def k_mean_dB(f_ghz: float, model: KFactorModel = KFactorModel()) -> float:
    _check_ghz(f_ghz)
    return model.mu_slope * math.log10(f_ghz) + model.mu_intercept


def k_var_dB(f_ghz: float, model: KFactorModel = KFactorModel()) -> float:
    _check_ghz(f_ghz)
    var = model.var_slope * math.log10(f_ghz) + model.var_intercept
    if var <= 0:
        raise ValueError(f"K-factor variance model is non-positive at {f_ghz} GHz")
    return var


def draw_k(model: KFactorModel, z: float, f: float) -> float:
    """Linear K at ``f`` (Hz) for a fixed standardized environment draw ``z``."""
    f_ghz = f / 1e9
    k_db = k_mean_dB(f_ghz, model) + z * math.sqrt(k_var_dB(f_ghz, model))
    return 10.0 ** (k_db / 10.0)


def draw_standardized_k(model: KFactorModel, f_low: float, rng: np.random.Generator) -> float:
    """Draw K (dB) at the lowest frequency and return its standardized value."""
    f_ghz = f_low / 1e9
    mu, sd = k_mean_dB(f_ghz, model), math.sqrt(k_var_dB(f_ghz, model))
    return (rng.normal(mu, sd) - mu) / sd
