"""
Element impedance and array coupling
====================================

Self impedance of an electrically small element, the mutual terms of a
tightly packed ULA, and the coupling matrices that the channel is built from.
"""

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from swmimo import array_impedance_matrix, coupling_matrix_rx, passivity_margin, regime_model
from swmimo.geometry import UlaConfig, build_frequency_grid

spacing = 0.005
grid = build_frequency_grid(1e8, 3e10, 1e8)
f = grid.centers

# %%
# The radiation resistance climbs as (ka)^2 at low frequency, so a larger
# element (tight regime) radiates far better at the bottom of the band.
for regime in ("tight", "weak"):
    m = regime_model(regime, spacing)
    z = np.array([m.self_impedance(x) for x in f])
    plt.loglog(f, z.real, label=f"{regime}, a = {m.radius * 1e3:.2f} mm")
plt.xlabel("frequency (Hz)")
plt.ylabel("Re Z (ohm)")
plt.legend()
plt.savefig("self_resistance.png", dpi=100)
plt.close()

# %%
# Mutual impedance relative to self resistance for the first few neighbours.
m = regime_model("tight", spacing)
arr = UlaConfig(8, spacing, m.radius)
z = array_impedance_matrix(arr, 2e9, m)
print("|Z_1k| / Re Z_11 at 2 GHz:", np.round(np.abs(z[0, 1:5]) / z[0, 0].real, 4))

# %%
# The impedance matrix stays passive across the whole band.
worst = min(passivity_margin(array_impedance_matrix(arr, x, m)) for x in f)
print(f"smallest eigenvalue of Re Z over the band: {worst:.3e}")

# %%
# With a 1-ohm load the coupling matrix P = (Z + R I)^-1 is nearly diagonal
# when the array is decoupled and visibly full when it is tight.
for regime in ("decoupled", "tight"):
    mm = regime_model(regime, spacing)
    p = coupling_matrix_rx(array_impedance_matrix(UlaConfig(4, spacing, mm.radius), 1e8, mm), 1.0)
    off = np.abs(p - np.diag(np.diag(p))).max() / np.abs(p[0, 0])
    print(f"{regime:>9}: max |off-diagonal| / |P_11| = {off:.2e}")
