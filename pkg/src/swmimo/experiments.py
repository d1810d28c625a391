"""Figure-data experiments and the invariant self-check.

Each ``run_*`` function writes one CSV into ``out_dir`` and returns its path.
Rows are keyed and written in sorted order, and floats use a fixed
round-trip format, so identical configuration and seed give identical bytes.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import (
    effective_corr_row,
    eigen_snrs,
    empirical_cdf,
    mode_power,
    scattered_power,
    steering_magnitude_profile,
    to_db,
)
from .circuit import passivity_margin
from .config import ScenarioConfig
from .fading import build_block_factors, jakes_matrix
from .simulator import Simulator

__all__ = [
    "SCHEMAS",
    "SCHEMA_VERSION",
    "CheckResult",
    "schema_text",
    "snr_table",
    "run_snr",
    "run_power_cdf",
    "run_steering",
    "run_corr_row",
    "validate",
    "freq_label",
    "read_csv",
]

SCHEMA_VERSION = 1
SCHEMAS = {
    "snr_vs_freq": ("freq_Hz", "trial", "snr_dB"),
    "power_cdf": ("freq_label", "value", "prob"),
    "steering_profile": ("rank", "magnitude", "regime", "end"),
    "corr_row": ("element_index", "magnitude", "regime", "freq_label"),
}
SIMO_TX_RADIUS_FACTOR = 100.0


def schema_text() -> str:
    lines = [f"swmimo CSV schema v{SCHEMA_VERSION}"]
    for name, cols in SCHEMAS.items():
        lines.append(f"{name}.csv: {','.join(cols)}")
    return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".12e")
    return str(v)


def _write(out_dir, name: str, rows) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{name}.csv"
    buf = io.StringIO()
    buf.write(f"# swmimo {name} v{SCHEMA_VERSION}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCHEMAS[name])
    for row in sorted(rows, key=lambda r: tuple(str(x) if isinstance(x, str) else x for x in r)):
        w.writerow([_fmt(x) for x in row])
    path.write_text(buf.getvalue())
    return path


def read_csv(path) -> list[dict]:
    with open(path) as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def freq_label(f: float) -> str:
    if f >= 1e9:
        return f"{f / 1e9:g}GHz"
    return f"{f / 1e6:g}MHz"


def _grid_index(grid, f: float) -> int:
    """Nearest sub-channel to ``f``; frequencies outside the band are an error."""
    half = 0.5 * grid.delta_f
    if not grid.f_start - half <= f <= grid.f_stop + half:
        raise ValueError(f"frequency {f:.6g} Hz lies outside the band [{grid.f_start:.6g}, {grid.f_stop:.6g}] Hz")
    return grid.nearest_index(f)


def _default_freqs(grid) -> tuple:
    return tuple(f for f in (5e9, grid.f_stop) if grid.f_start <= f <= grid.f_stop)


def _simo_tx_radius(config: ScenarioConfig):
    a = config.array
    return a.radius_t_m if a.radius_t_m is not None else SIMO_TX_RADIUS_FACTOR * a.spacing_m


# ----------------------------------------------------------------------
# SIMO SNR versus frequency
# ----------------------------------------------------------------------

def snr_table(config: ScenarioConfig, *, regime=None, indices=None, trials=None, tx_radius=None) -> np.ndarray:
    """Largest-eigenmode SNR (dB), shape ``(trials, len(indices))``.

    The transmitter is a single element of radius ``100 * spacing`` unless
    ``array.radius_t_m`` or ``tx_radius`` says otherwise.
    """
    sim = Simulator(config, regime=regime, n_t=1, radius_t=tx_radius or _simo_tx_radius(config))
    grid = sim.grid
    idx = np.arange(grid.count) if indices is None else np.asarray(indices, dtype=int)
    n_trials = trials or config.run.trials
    out = np.empty((n_trials, idx.size))
    for t in range(n_trials):
        r = sim.realize(t, idx)
        prof = eigen_snrs(r.h_tilde, config.link.p_total_W, policy=config.link.power_policy, n_subchannels=grid.count)
        out[t] = prof.snr_db[:, 0]
    return out


def run_snr(config: ScenarioConfig, out_dir, *, regime=None, svg: bool = False) -> Path:
    grid = config.frequency_grid()
    table = snr_table(config, regime=regime)
    freqs = grid.centers
    rows = [(float(freqs[l]), t, float(table[t, l])) for t in range(table.shape[0]) for l in range(freqs.size)]
    path = _write(out_dir, "snr_vs_freq", rows)
    if svg:
        from .plotting import plot_snr

        plot_snr(freqs, table, Path(out_dir) / "snr_vs_freq.svg", regime or config.array.regime)
    return path


# ----------------------------------------------------------------------
# scattered power CDFs
# ----------------------------------------------------------------------

def scattered_power_samples(config: ScenarioConfig, f: float, *, regime=None, trials=None, tx_radius=None) -> np.ndarray:
    """Received scattered power at the sub-channel nearest ``f``, one value per trial."""
    sim = Simulator(config, regime=regime, n_t=1, radius_t=tx_radius or _simo_tx_radius(config))
    grid = sim.grid
    i = _grid_index(grid, f)
    p_t = mode_power(config.link.p_total_W, grid.count, 1, config.link.power_policy)
    n_trials = trials or config.run.trials
    return np.array([scattered_power(sim.realize(t, [i]).h_eq_sc[0], p_t) for t in range(n_trials)])


def run_power_cdf(config: ScenarioConfig, out_dir, freqs=None, *, regime=None, svg: bool = False) -> Path:
    grid = config.frequency_grid()
    freqs = freqs or _default_freqs(grid)
    rows, curves = [], {}
    for f in freqs:
        f_act = grid.center(_grid_index(grid, f))
        x, p = empirical_cdf(scattered_power_samples(config, f, regime=regime))
        label = freq_label(f_act)
        curves[label] = (x, p)
        rows.extend((label, float(v), float(q)) for v, q in zip(x, p))
    path = _write(out_dir, "power_cdf", rows)
    if svg:
        from .plotting import plot_cdfs

        plot_cdfs(curves, Path(out_dir) / "power_cdf.svg")
    return path


# ----------------------------------------------------------------------
# LoS steering-vector distortion
# ----------------------------------------------------------------------

def steering_profiles(config: ScenarioConfig, f: float = 1e8, n: int = 32, regimes=("tight", "weak")) -> dict:
    """``{(regime, end): profile}``; ``conventional`` is the uncoupled array."""
    out = {}
    for reg in ("decoupled",) + tuple(r for r in regimes if r != "decoupled"):
        sim = Simulator(config, regime=reg, n_r=n, n_t=n)
        st = sim.state(_grid_index(sim.grid, f))
        name = "conventional" if reg == "decoupled" else reg
        out[(name, "rx")] = steering_magnitude_profile(st.w_r)
        out[(name, "tx")] = steering_magnitude_profile(st.w_t)
    return out


def run_steering(config: ScenarioConfig, out_dir, freq: float = 1e8, *, n: int = 32, regime=None, svg: bool = False) -> Path:
    regimes = (regime,) if regime else ("tight", "weak")
    profiles = steering_profiles(config, freq, n, regimes)
    rows = [(k + 1, float(v), reg, end) for (reg, end), prof in profiles.items() for k, v in enumerate(prof)]
    path = _write(out_dir, "steering_profile", rows)
    if svg:
        from .plotting import plot_profiles

        plot_profiles(profiles, Path(out_dir) / "steering_profile.svg")
    return path


# ----------------------------------------------------------------------
# effective spatial correlation
# ----------------------------------------------------------------------

def corr_rows(config: ScenarioConfig, f: float, n: int = 32, regimes=("tight", "weak")) -> dict:
    """``{regime: first-row magnitudes}`` of ``C_R``; ``uncoupled`` is ``R_R`` itself."""
    out = {}
    for reg in regimes:
        sim = Simulator(config, regime=reg, n_r=n, n_t=1)
        st = sim.state(_grid_index(sim.grid, f))
        out.setdefault("uncoupled", effective_corr_row(st.r_r))
        out[reg] = effective_corr_row(st.c_r)
    return out


def run_corr_row(config: ScenarioConfig, out_dir, freqs=None, *, n: int = 32, regime=None, svg: bool = False) -> Path:
    grid = config.frequency_grid()
    freqs = freqs or _default_freqs(grid)
    regimes = (regime,) if regime else ("tight", "weak")
    rows, curves = [], {}
    for f in freqs:
        label = freq_label(grid.center(_grid_index(grid, f)))
        for reg, row in corr_rows(config, f, n, regimes).items():
            curves[(reg, label)] = row
            rows.extend((m + 1, float(v), reg, label) for m, v in enumerate(row))
    path = _write(out_dir, "corr_row", rows)
    if svg:
        from .plotting import plot_corr_rows

        plot_corr_rows(curves, Path(out_dir) / "corr_row.svg")
    return path


# ----------------------------------------------------------------------
# invariant suite
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.name:<28} measured={self.measured:.3e}  tol={self.tolerance:.1e}"


def _check(name, measured, tol, *, lower=False) -> CheckResult:
    ok = measured >= tol if lower else measured <= tol
    return CheckResult(name, bool(ok), float(measured), float(tol))


def validate(config: ScenarioConfig, *, regime=None, n: int = 4, mc_trials: int = 20000, stride: int = 50) -> list[CheckResult]:
    """Run the physical and numerical invariants on a thinned grid."""
    grid = config.frequency_grid()
    idx = np.unique(np.r_[np.arange(0, grid.count, stride), grid.count - 1])
    sim = Simulator(config, regime=regime, n_r=n, n_t=n)
    results = []

    worst_pass = min(min(passivity_margin(sim.state(i).circuit.z_r), passivity_margin(sim.state(i).circuit.z_t)) for i in idx)
    results.append(_check("passivity (min eig Re Z)", worst_pass, -1e-10, lower=True))

    white = max(
        np.linalg.norm(sim.state(i).noise.whitener @ sim.state(i).noise.r_n @ sim.state(i).noise.whitener.conj().T - np.eye(n))
        for i in idx
    )
    results.append(_check("whitening W Rn W^H = I", white, 1e-9))

    gen = build_block_factors(min(config.fading.block_len, 64), grid.delta_f, config.fading.tau_rms_ns * 1e-9)
    r1 = jakes_matrix(gen.block_len, gen.delta_f, gen.tau_rms)
    stat = gen.transition @ r1 @ gen.transition.conj().T + gen.lower3 @ gen.u3
    results.append(_check("recursion stationarity", np.max(np.abs(stat - r1)), 1e-12))

    worst_eq = 0.0
    for t in range(5):
        r = sim.realize(t, idx)
        for pos, i in enumerate(idx):
            raw = sim.raw_whitened(int(i), r.h_mimo[pos])
            worst_eq = max(worst_eq, np.linalg.norm(raw - r.h_tilde[pos]) / np.linalg.norm(raw))
    results.append(_check("pipeline equivalence", worst_eq, 1e-9))

    i_mid = grid.nearest_index(5e9)
    st = sim.state(i_mid)
    k = np.kron(st.c_t.T, st.c_r)
    scale = np.sqrt(np.real(np.diag(k)))
    rng = np.random.default_rng(config.fading.seed)
    u = (rng.standard_normal((mc_trials, n, n)) + 1j * rng.standard_normal((mc_trials, n, n))) * math.sqrt(0.5)
    x = st.f_r @ u @ st.f_t
    vec = np.swapaxes(x, 1, 2).reshape(mc_trials, -1)
    emp = vec.T @ vec.conj() / mc_trials
    err = np.max(np.abs(emp - k) / np.outer(scale, scale))
    results.append(_check("Kronecker covariance (norm.)", err, 5 / math.sqrt(mc_trials)))
    return results
