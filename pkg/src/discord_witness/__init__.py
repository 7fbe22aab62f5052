"""Detecting and quantifying quantum discord of separable two-qubit states
through interferometric coincidence correlations."""

__version__ = "0.1.0"

from .discord_ref import DiscordResult, MeasurementBasis, conditional_entropy, discord, mutual_information
from .landscape import (
    GridSpec,
    QuantifierResult,
    VisibilityLandscape,
    ZeroLine,
    combined_quantifier,
    delta2_alpha,
    delta2_phi,
    diagonalizing_angles,
    quantify,
    sweep,
    zero_line,
)
from .protocol import (
    ConditionedState,
    DarkPointError,
    EvolutionParams,
    coincidence,
    conditioned_state,
    detector_matrix,
    s_matrix,
    visibility,
)
from .shots import ShotConfig, VisibilityEstimate, estimate_visibility, sample_coincidences
from .states import PureComponent, SeparableState, assemble_density, parse_state_config, preset
