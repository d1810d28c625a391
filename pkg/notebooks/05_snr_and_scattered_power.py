"""
Eigen-SNR across the band and scattered power
=============================================

A single-antenna transmitter talks to a 32-element receiver. Tight coupling
keeps the SNR usable at the bottom of the band.
"""

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from swmimo import parse_config
from swmimo.analysis import empirical_cdf
from swmimo.experiments import scattered_power_samples, snr_table

cfg = parse_config("", {"grid.delta_f_Hz": "1e8", "run.trials": "20"})
f = cfg.frequency_grid().centers

# %%
for regime in ("tight", "weak"):
    table = snr_table(cfg, regime=regime)
    plt.semilogx(f, np.median(table, axis=0), label=regime)
plt.xlabel("frequency (Hz)")
plt.ylabel("median SNR (dB)")
plt.legend()
plt.savefig("snr_vs_freq.png", dpi=100)
plt.close()

# %%
for regime in ("tight", "weak"):
    x, p = empirical_cdf(10 * np.log10(scattered_power_samples(cfg, 5e9, regime=regime, trials=200)))
    plt.plot(x, p, label=regime)
    print(f"{regime}: median scattered power at 5 GHz {np.median(x):.1f} dB")
plt.xlabel("scattered power (dB)")
plt.ylabel("CDF")
plt.legend()
plt.savefig("power_cdf.png", dpi=100)
plt.close()
