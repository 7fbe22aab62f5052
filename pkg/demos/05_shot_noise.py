"""
Finite statistics
=================

Emulate the experiment: draw components with their weights, click the two
detectors with Born probabilities, fit the fringe, and compare the
estimated visibility with the exact one.
"""
# %%
import numpy as np

from discord_witness import EvolutionParams, ShotConfig, estimate_visibility, preset, visibility

state = preset("fig2a")
params = EvolutionParams(np.pi, 0.0, np.pi, 0.0)
print("exact V =", visibility(state, params))

# %% The standard error shrinks like 1/sqrt(trials)
for trials in (10**3, 10**4, 10**5, 10**6):
    est = estimate_visibility(ShotConfig(state, params, trials, seed=2024))
    print(f"{trials:>8d} trials/point  V_hat = {est.visibility:.5f} +- {est.stderr:.5f}")

# %% At the zero-visibility setting the fitted fringe is flat
zero = EvolutionParams(np.pi - np.arctan(0.5), 0.0, np.pi, 0.0)
est = estimate_visibility(ShotConfig(state, zero, 10**6, seed=42))
print(f"V_hat at alpha0 = {est.visibility:.4f} +- {est.stderr:.4f}")

# %% Splitting the trials into seed-derived partitions is reproducible across thread counts
cfg = ShotConfig(state, params, 200_000, seed=7, partitions=4)
print(estimate_visibility(cfg, threads=1).counts[:4], estimate_visibility(cfg, threads=4).counts[:4])
