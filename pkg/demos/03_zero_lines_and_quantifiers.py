"""
Zero-visibility lines and the discord quantifiers
=================================================

The zero line (alpha0(beta), phiA0(beta)) is read off the Bloch vector of
the conditioned A state. Its variance over the beta period is the
quantifier: zero without discord, positive with it.
"""
# %%
import numpy as np

from discord_witness import combined_quantifier, preset, zero_line

# %% fig2b: a flat line; fig2a: a line that follows beta
for name in ("fig2b", "fig2a"):
    line = zero_line(preset(name), 16)
    print(name, np.round(line.alpha0, 4))

# %% Quantifiers for the named states
rows = [("fig2a", {}), ("fig2b", {}), ("fig6a", {}), ("fig6b", {}),
        ("three", {"theta": np.pi / 2}), ("phase", {"phi2": 0.0}), ("phase", {"phi2": np.pi / 2})]
print(f"{'state':22s} {'d2_alpha':>10s} {'d2_phi':>10s} {'valid':>6s}")
for name, params in rows:
    q = combined_quantifier(zero_line(preset(name, **params)))
    label = name + "".join(f" {k}={v:.3g}" for k, v in params.items())
    print(f"{label:22s} {q.delta2_alpha:10.3e} {q.delta2_phi:10.3e} {q.valid_fraction:6.3f}")

# %% Real mode pins phiA0 to 0 and only works for real conditioned states
line = zero_line(preset("phase", phi2=np.pi / 2), 16, mode="real")
print("real-mode valid samples for a complex state:", int(line.valid.sum()), "of", len(line))
