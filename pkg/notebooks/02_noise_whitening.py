"""
Receiver noise and whitening
============================

Noise at the LNA outputs mixes amplifier noise with coupled antenna noise.
The whitener turns it into unit white noise.
"""

# %%
import numpy as np

from swmimo import build_noise_model, coupling_matrix_rx, array_impedance_matrix, regime_model
from swmimo.geometry import UlaConfig
from swmimo.noise import sample_noise

m = regime_model("tight", 0.005)
arr = UlaConfig(4, 0.005, m.radius)
z = array_impedance_matrix(arr, 1e9, m)
p = coupling_matrix_rx(z, 1.0)

# %%
nm = build_noise_model(p, z, noise_figure_db=5.0)
print("noise covariance (V^2):")
print(np.array2string(nm.r_n, precision=3))

# %%
# Residual of the whitening identity.
w = nm.whitener
print("||W Rn W^H - I||_F =", np.linalg.norm(w @ nm.r_n @ w.conj().T - np.eye(4)))

# %%
# The same identity checked on sampled noise.
rng = np.random.default_rng(0)
v = w @ sample_noise(nm.r_n, 50_000, rng)
print(np.round(v @ v.conj().T / v.shape[1], 3))

# %%
# Raising the noise figure only adds a multiple of the identity.
for nf in (0.0, 5.0, 10.0):
    r = build_noise_model(p, z, noise_figure_db=nf).r_n
    print(f"NF {nf:4.1f} dB: trace {np.trace(r).real:.3e}")
