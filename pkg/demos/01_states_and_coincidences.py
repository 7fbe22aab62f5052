"""
Separable states and coincidence fringes
========================================

Build the example states, look at their density matrices, and check that
the coincidence rate seen by the two detectors is a pure cosine in the
detector phase.
"""
# %%
import numpy as np

from discord_witness import EvolutionParams, assemble_density, coincidence, conditioned_state, preset, visibility

np.set_printoptions(precision=4, suppress=True)

# %% A discorded state: 1/2 |up up> + 1/2 |++>
state = preset("fig2a")
print(state.components)
print(assemble_density(state).real)

# %% Conditioning on a B click at beta = pi leaves A in (2/3)|up><up| + (1/3)|+><+|
cond = conditioned_state(state, np.pi)
print("w^B =", cond.weights, " W_B =", cond.total)
print(cond.rho.real)

# %% The fringe as the detector phase is swept
params = EvolutionParams(alpha=np.pi, phi_a=0.0, beta=np.pi, phi_b=0.0)
phases = np.linspace(0, 2 * np.pi, 9)
for phi_d in phases:
    print(f"phi_d = {phi_d:5.3f}   K = {coincidence(state, params, phi_d):.6f}")
print("visibility (Kmax - Kmin)/(Kmax + Kmin) =", visibility(state, params))

# %% Rotating A onto the eigenbasis of the conditioned state kills the fringe
alpha0 = np.pi - np.arctan(0.5)
print("visibility at alpha0 =", visibility(state, EvolutionParams(alpha0, 0.0, np.pi, 0.0)))
