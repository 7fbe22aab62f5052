"""Visibility landscapes, zero-visibility lines and the correlation-based
discord quantifiers.

A zero-visibility line is traced analytically: for each passive-side angle
beta the conditioned A state has Bloch vector a = (sin t cos p, sin t sin p,
cos t), and the splitter/phase pair (alpha0, phiA0) = (pi - t, p) rotates it
onto |up>, which kills the fringes. Every sample is then re-checked by a
direct visibility evaluation.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import optimize

from .protocol import DARK_THRESHOLD, conditioned_bloch, conditioned_state, visibility_many
from .qcore import TWO_PI
from .states import SeparableState

ZERO_THRESHOLD = 1e-8
DEGENERATE_THRESHOLD = 1e-10
POLE_THRESHOLD = 1e-12
DEFAULT_BETA_SAMPLES = 256

AXES = ("alpha", "beta", "phiA", "phiB")

# status codes stored per zero-line sample
VALID = 0
DARK = 1
DEGENERATE = 2
NOT_ZERO = 3


class QuantifierError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Two swept axes out of alpha/beta/phiA/phiB; the rest held fixed.

    Each axis samples ``steps`` points from ``lo`` towards ``hi``; with
    ``endpoint=False`` (the default) the interval is half-open, which suits
    the 2*pi-periodic angles.
    """

    axis1: str = "alpha"
    axis2: str = "beta"
    range1: tuple[float, float] = (0.0, TWO_PI)
    range2: tuple[float, float] = (0.0, TWO_PI)
    steps1: int = 256
    steps2: int = 256
    fixed: dict = field(default_factory=dict)
    endpoint: bool = False

    def __post_init__(self):
        for ax in (self.axis1, self.axis2):
            if ax not in AXES:
                raise ValueError(f"unknown axis {ax!r}; choose from {AXES}")
        if self.axis1 == self.axis2:
            raise ValueError("grid axes must be distinct")
        if self.steps1 < 2 or self.steps2 < 2:
            raise ValueError("each axis needs at least 2 steps")
        unknown = set(self.fixed) - set(AXES)
        if unknown:
            raise ValueError(f"unknown fixed parameter(s) {sorted(unknown)}")

    @property
    def values1(self) -> np.ndarray:
        return np.linspace(*self.range1, self.steps1, endpoint=self.endpoint)

    @property
    def values2(self) -> np.ndarray:
        return np.linspace(*self.range2, self.steps2, endpoint=self.endpoint)

    def fixed_value(self, name: str) -> float:
        return float(self.fixed.get(name, 0.0))


@dataclass(frozen=True)
class VisibilityLandscape:
    grid: GridSpec
    values: np.ndarray  # shape (steps1, steps2), NaN where masked
    mask: np.ndarray  # True at dark points

    @property
    def axis1(self) -> np.ndarray:
        return self.grid.values1

    @property
    def axis2(self) -> np.ndarray:
        return self.grid.values2


def _landscape_rows(state, grid, rows):
    a1 = grid.values1[rows][:, None]
    a2 = grid.values2[None, :]
    args = {name: grid.fixed_value(name) for name in AXES}
    args[grid.axis1] = a1
    args[grid.axis2] = a2
    return visibility_many(state, args["alpha"], args["phiA"], args["beta"], args["phiB"])


def sweep(state: SeparableState, grid: GridSpec, threads: int = 1) -> VisibilityLandscape:
    """Visibility at every grid node; dark points (W_B < 1e-12) are masked."""
    chunks = np.array_split(np.arange(grid.steps1), max(1, threads))
    chunks = [c for c in chunks if len(c)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda rows: _landscape_rows(state, grid, rows), chunks))
    else:
        parts = [_landscape_rows(state, grid, rows) for rows in chunks]
    values = np.concatenate(parts, axis=0)
    mask = ~np.isfinite(values)
    return VisibilityLandscape(grid, values, mask)


class DiagonalizingAngles(NamedTuple):
    theta: float
    phi: float
    degenerate: bool


def diagonalizing_angles(state: SeparableState, beta: float, phi_b: float = 0.0) -> DiagonalizingAngles:
    """Polar/azimuthal angles of the conditioned A Bloch vector.

    ``degenerate`` is set when the conditioned state is maximally mixed
    (Bloch length < 1e-10); the angles are then meaningless. Raises
    DarkPointError at dark points.
    """
    cond = conditioned_state(state, beta, phi_b)
    x, y, z = cond.bloch
    if np.sqrt(x * x + y * y + z * z) < DEGENERATE_THRESHOLD:
        return DiagonalizingAngles(float("nan"), float("nan"), True)
    theta = float(np.arctan2(np.hypot(x, y), z))
    phi = float(np.arctan2(y, x)) if np.hypot(x, y) > POLE_THRESHOLD else 0.0
    return DiagonalizingAngles(theta, phi, False)


@dataclass(frozen=True)
class ZeroLine:
    beta: np.ndarray
    alpha0: np.ndarray
    phi_a0: np.ndarray
    residual: np.ndarray
    valid: np.ndarray
    status: np.ndarray
    mode: str = "complex"
    phi_b: float = 0.0

    def __len__(self):
        return len(self.beta)

    @property
    def valid_fraction(self) -> float:
        return float(np.mean(self.valid))

    def other_branch(self) -> "ZeroLine":
        """The solution rotating onto |down> instead of |up>."""
        if self.mode == "real":
            alpha0, phi0 = np.mod(self.alpha0 + np.pi, TWO_PI), self.phi_a0
        else:
            alpha0, phi0 = np.pi - self.alpha0, np.angle(np.exp(1j * (self.phi_a0 + np.pi)))
        return ZeroLine(self.beta, alpha0, phi0, self.residual, self.valid, self.status, self.mode, self.phi_b)


def _analytic_angles(vec: np.ndarray, mode: str):
    x, y, z = vec[:, 0], vec[:, 1], vec[:, 2]
    length = np.sqrt(x * x + y * y + z * z)
    if mode == "real":
        signed_polar = np.arctan2(x, z)
        alpha0 = np.mod(np.pi - signed_polar, np.pi)
        phi0 = np.zeros_like(alpha0)
    else:
        polar = np.arctan2(np.hypot(x, y), z)
        alpha0 = np.pi - polar
        phi0 = np.where(np.hypot(x, y) > POLE_THRESHOLD, np.arctan2(y, x), 0.0)
    return alpha0, phi0, length


def _numeric_point(state, beta, phi_b, mode):
    """Locate the visibility zero by scanning and refining (validation path)."""
    alphas = np.linspace(0.0, np.pi, 512, endpoint=False)
    if mode == "real":
        vis = visibility_many(state, alphas, 0.0, beta, phi_b)
        k = int(np.nanargmin(vis))
        step = alphas[1] - alphas[0]
        a, b, c = alphas[k] - step, alphas[k], alphas[k] + step
        fun = lambda al: float(visibility_many(state, al, 0.0, beta, phi_b))
        # the scan minimum usually brackets; a flat neighbourhood (no real
        # zero, or an exact hit on the node) keeps the scan value
        try:
            res = optimize.minimize_scalar(fun, bracket=(a, b, c), method="golden", tol=1e-10)
        except ValueError:
            return float(b), 0.0
        return float(np.mod(res.x, np.pi)), 0.0
    phis = np.linspace(-np.pi, np.pi, 64, endpoint=False)
    vis = visibility_many(state, alphas[:, None], phis[None, :], beta, phi_b)
    i, j = np.unravel_index(int(np.nanargmin(vis)), vis.shape)
    fun = lambda p: float(visibility_many(state, p[0], p[1], beta, phi_b)) ** 2
    res = optimize.minimize(
        fun,
        x0=[alphas[i], phis[j]],
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-24, "maxiter": 4000},
    )
    return float(res.x[0]), float(np.angle(np.exp(1j * res.x[1])))


def zero_line(
    state: SeparableState,
    beta_samples: int = DEFAULT_BETA_SAMPLES,
    phi_b: float = 0.0,
    mode: str = "complex",
    method: str = "analytic",
) -> ZeroLine:
    """Zero-visibility line (alpha0(beta), phiA0(beta)) over beta in [0, 2*pi).

    ``mode="real"`` pins phiA0 to 0 and only solves for alpha0. Samples at
    dark points, at maximally mixed conditioned states, or whose residual
    visibility is not below 1e-8 are flagged invalid.
    """
    if beta_samples < 16:
        raise ValueError("zero_line needs at least 16 beta samples")
    if mode not in ("real", "complex"):
        raise ValueError(f"mode must be 'real' or 'complex', got {mode!r}")
    if method not in ("analytic", "numeric"):
        raise ValueError(f"method must be 'analytic' or 'numeric', got {method!r}")
    beta = np.linspace(0.0, TWO_PI, beta_samples, endpoint=False)
    total, vec = conditioned_bloch(state, beta, phi_b)
    dark = total < DARK_THRESHOLD
    alpha0, phi0, length = _analytic_angles(np.nan_to_num(vec), mode)
    degenerate = ~dark & (length < DEGENERATE_THRESHOLD)
    if method == "numeric":
        for k in np.flatnonzero(~dark & ~degenerate):
            alpha0[k], phi0[k] = _numeric_point(state, beta[k], phi_b, mode)
    usable = ~dark & ~degenerate
    alpha0 = np.where(usable, alpha0, np.nan)
    phi0 = np.where(usable, phi0, np.nan)
    residual = np.full(beta_samples, np.nan)
    residual[usable] = visibility_many(state, alpha0[usable], phi0[usable], beta[usable], phi_b)
    not_zero = usable & ~(residual < ZERO_THRESHOLD)
    status = np.full(beta_samples, VALID)
    status[dark] = DARK
    status[degenerate] = DEGENERATE
    status[not_zero] = NOT_ZERO
    return ZeroLine(beta, alpha0, phi0, residual, status == VALID, status, mode, float(phi_b))


def _variance_over_period(f: np.ndarray, valid: np.ndarray) -> float:
    # uniform periodic grid: the trapezoidal rule reduces to equal weights,
    # renormalised over the valid samples
    if np.count_nonzero(valid) < 2:
        raise QuantifierError("need at least 2 valid zero-line samples")
    g = f[valid]
    return float(np.mean((g - g.mean()) ** 2))


def delta2_alpha(line: ZeroLine) -> float:
    """Variance of cos^2(alpha0) over the beta period."""
    return _variance_over_period(np.cos(line.alpha0) ** 2, line.valid)


def delta2_phi(line: ZeroLine) -> float:
    """Variance of cos^2(phiA0) over the beta period."""
    return _variance_over_period(np.cos(line.phi_a0) ** 2, line.valid)


@dataclass(frozen=True)
class QuantifierResult:
    delta2_alpha: float
    delta2_phi: float
    valid_fraction: float

    @property
    def total(self) -> float:
        return self.delta2_alpha + self.delta2_phi

    def is_discorded(self, threshold: float = 1e-8) -> bool:
        return self.total >= threshold


def combined_quantifier(line: ZeroLine) -> QuantifierResult:
    return QuantifierResult(delta2_alpha(line), delta2_phi(line), line.valid_fraction)


def quantify(
    state: SeparableState,
    beta_samples: int = DEFAULT_BETA_SAMPLES,
    phi_b: float = 0.0,
    mode: str = "complex",
) -> QuantifierResult:
    """Zero line followed by the combined quantifier."""
    return combined_quantifier(zero_line(state, beta_samples, phi_b, mode))
