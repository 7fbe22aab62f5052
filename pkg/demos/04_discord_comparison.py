"""
Entropic discord next to the visibility quantifier
==================================================

Walk along the three one-parameter families and print the standard
discord (measurement on A) beside the sum of the two variances.
"""
# %%
import numpy as np

from discord_witness import assemble_density, discord, preset
from discord_witness.compare import compare_family

# %% One state in detail
result = discord(assemble_density(preset("rho_theta", theta=np.pi / 2)))
print(result)

# %% Measuring A or B matters when only one side has orthogonal kets
rho = assemble_density(preset("phase", phi2=np.pi / 2))
print("A-discord", discord(rho, "A").value, " B-discord", discord(rho, "B").value)

# %% The three families: both columns vanish at the ends and peak in between
for family in ("rho_theta", "phase", "three"):
    print(f"\n{family}")
    for row in compare_family(family, np.linspace(0, np.pi, 7)):
        print(f"  {row.parameter:6.3f}  discord {row.discord:8.5f}   quantifier {row.total:8.5f}")
