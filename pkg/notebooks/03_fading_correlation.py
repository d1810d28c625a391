"""
Spatial and frequency correlation of the scattered field
========================================================

Angular spread sets the correlation between elements. Delay spread sets the
correlation between sub-channels, which is generated block by block.
"""

# %%
import matplotlib

matplotlib.use("Agg")
import math

import matplotlib.pyplot as plt
import numpy as np

from swmimo.fading import (
    SpatialCorrModel,
    build_block_factors,
    generate_streams,
    jakes_entry,
    laplacian_mc_correlation,
    spatial_correlation_matrix,
)

# %%
# Correlation between adjacent elements shrinks with angular spread.
for asd in (2, 5, 10, 20):
    r = spatial_correlation_matrix(4, 5e9, SpatialCorrModel(0.0, math.radians(asd), 0.005))
    print(f"ASD {asd:2d} deg: |r_12| = {abs(r[0, 1]):.4f}")

# %%
# The quadrature agrees with a plain Monte Carlo average.
model = SpatialCorrModel(0.0, math.radians(9), 0.005)
q = spatial_correlation_matrix(3, 5e9, model)[0, 2]
mc = laplacian_mc_correlation(2, 5e9, model, 200_000, np.random.default_rng(1))
print(f"quadrature {q:.4f}, Monte Carlo {mc:.4f}")

# %%
# Frequency correlation: the recursion carries one block of memory.
gen = build_block_factors(8, 1e7, 2e-9)
x = generate_streams(gen, 64, 20_000, np.random.default_rng(2))
emp = (x * x[0].conj()).mean(axis=1)
lags = np.arange(64)
plt.plot(lags, emp.real, ".", label="generated")
plt.plot(lags, [jakes_entry(k, 1e7, 2e-9) for k in lags], label="target")
plt.axvline(16, color="grey", lw=0.5)
plt.xlabel("sub-channel lag")
plt.ylabel("correlation with sub-channel 0")
plt.legend()
plt.savefig("frequency_correlation.png", dpi=100)
plt.close()
