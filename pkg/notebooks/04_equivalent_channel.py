"""
Whitened channel from circuit parameters
========================================

The whitened channel folds coupling, matching and noise into equivalent
steering vectors and correlation matrices. Both routes give the same matrix.
"""

# %%
import numpy as np

from swmimo import Simulator, parse_config

cfg = parse_config("", {"array.n_r": "4", "array.n_t": "4", "grid.delta_f_Hz": "1e8", "fading.block_len": "64"})
sim = Simulator(cfg, regime="tight")

# %%
r = sim.realize(trial=0, indices=[0, 49, 299])
for pos, f in enumerate(r.freqs):
    raw = sim.raw_whitened(sim.grid.nearest_index(f), r.h_mimo[pos])
    err = np.linalg.norm(raw - r.h_tilde[pos]) / np.linalg.norm(raw)
    print(f"{f / 1e9:6.2f} GHz  K = {r.k_linear[pos]:7.3f}  relative mismatch {err:.1e}")

# %%
# Equivalent receive steering vector magnitudes at the low end of the band.
print(np.round(np.abs(r.w_r[0]) / np.linalg.norm(r.w_r[0]), 4))
