"""
Visibility landscapes
=====================

Sweep two of (alpha, beta, phiA, phiB) and look for the zero-visibility
valleys. For a non-discorded state the valleys do not move when the
passive side (beta) changes.
"""
# %%
import numpy as np

from discord_witness import GridSpec, preset, sweep

# beta columns start at 0.3 to stay off the special points (beta = 0, pi/2, pi,
# ...) where one component stops clicking or the conditioned state is fully mixed
grid = GridSpec("alpha", "beta", (0, np.pi), (0.3, 0.3 + 2 * np.pi), 721, 8)

# %% Location of the valley in alpha for each beta column
for name in ("fig2a", "fig2b", "fig6b"):
    land = sweep(preset(name), grid)
    valley = grid.values1[np.nanargmin(land.values, axis=0)]
    print(f"{name:6s}", " ".join(f"{a:6.3f}" for a in valley))

# %% A barcode: the fig6b landscape is constant along beta (the masked
# column is the dark point beta = pi, where B never clicks)
land = sweep(preset("fig6b"), GridSpec("alpha", "beta", steps1=64, steps2=64))
print("masked beta columns:", np.flatnonzero(land.mask.all(axis=0)))
print("max spread along beta:", np.max(np.nanmax(land.values, axis=1) - np.nanmin(land.values, axis=1)))

# %% The complex state needs the phiA axis as well
grid = GridSpec("alpha", "phiA", (0, np.pi), (-np.pi, np.pi), 181, 361, {"beta": 2 * np.pi / 3})
land = sweep(preset("phase", phi2=np.pi / 2), grid)
i, j = np.unravel_index(np.nanargmin(land.values), land.values.shape)
print(f"minimum V = {land.values[i, j]:.2e} at alpha = {grid.values1[i]:.4f}, phiA = {grid.values2[j]:.4f}")
