"""Side-by-side standard discord and visibility quantifiers along a preset family."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discord_ref import discord
from .landscape import DEFAULT_BETA_SAMPLES, quantify
from .states import assemble_density, preset

FAMILIES = {"rho_theta": "theta", "three": "theta", "phase": "phi2"}


@dataclass(frozen=True)
class ComparisonRow:
    parameter: float
    discord: float
    delta2_alpha: float
    delta2_phi: float

    @property
    def total(self) -> float:
        return self.delta2_alpha + self.delta2_phi


def family_state(family: str, value: float):
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {sorted(FAMILIES)}, got {family!r}")
    return preset(family, **{FAMILIES[family]: value})


def compare_family(
    family: str,
    values,
    measured: str = "A",
    beta_samples: int = DEFAULT_BETA_SAMPLES,
) -> list[ComparisonRow]:
    rows = []
    for v in np.asarray(values, dtype=float):
        state = family_state(family, v)
        q = quantify(state, beta_samples)
        d = discord(assemble_density(state), measured)
        rows.append(ComparisonRow(float(v), d.value, q.delta2_alpha, q.delta2_phi))
    return rows
