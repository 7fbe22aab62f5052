"""Evolution matrices, coincidence correlator, conditioned state and fringe
visibility of the two-interferometer setup.

Conventions: a beam-splitter-plus-phase matrix is
``[[r, t], [-t, r]] @ diag(e^{i phase/2}, e^{-i phase/2})`` with
``t = cos(angle/2)``, ``r = sin(angle/2)``; the detector interferometer is a
50:50 splitter ``(1 + i sigma_y)/sqrt(2)`` after its own phase; both
detectors project onto ``|up>``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import IDENTITY2, SIGMA_Y, UP, dagger, tensor, wrap_angle
from .states import SeparableState, assemble_density

DARK_THRESHOLD = 1e-12


class DarkPointError(ArithmeticError):
    """No coincidences are possible: the passive-side weight W_B vanishes."""


@dataclass(frozen=True)
class EvolutionParams:
    alpha: float
    phi_a: float = 0.0
    beta: float = np.pi
    phi_b: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "phi_a", "beta", "phi_b"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def canonical(self) -> "EvolutionParams":
        return EvolutionParams(*(float(wrap_angle(v)) for v in (self.alpha, self.phi_a, self.beta, self.phi_b)))


@dataclass(frozen=True)
class ConditionedState:
    """A-side state conditioned on a |up> click of the B detector."""

    rho: np.ndarray
    weights: np.ndarray
    total: float

    @property
    def bloch(self) -> np.ndarray:
        """Bloch vector of ``rho`` (length c / W_B in the averaged-vector form)."""
        return np.array(
            [2.0 * self.rho[0, 1].real, -2.0 * self.rho[0, 1].imag, (self.rho[0, 0] - self.rho[1, 1]).real]
        )

    @property
    def norm(self) -> float:
        """Unnormalised length c = |sum_nu w^B_nu a_nu|."""
        return float(np.linalg.norm(self.bloch) * self.total)

    @property
    def angles(self) -> tuple[float, float]:
        """Polar and azimuthal angle of the averaged Bloch vector."""
        x, y, z = self.bloch
        return float(np.arctan2(np.hypot(x, y), z)), float(np.arctan2(y, x))


def _phase(phase):
    return np.diag([np.exp(0.5j * phase), np.exp(-0.5j * phase)])


def s_matrix(angle: float, phase: float) -> np.ndarray:
    t = np.cos(angle / 2)
    r = np.sin(angle / 2)
    return np.array([[r, t], [-t, r]], dtype=complex) @ _phase(phase)


def detector_matrix(phi_d: float) -> np.ndarray:
    # 1/sqrt(2) rather than the printed 1/2 keeps the matrix unitary
    return (IDENTITY2 + 1j * SIGMA_Y) / np.sqrt(2) @ _phase(phi_d)


def _b_click_probabilities(state: SeparableState, beta, phi_b) -> np.ndarray:
    """|<up| S^B |B_nu>|^2 broadcast over beta/phi_b; shape (..., M)."""
    beta = np.asarray(beta, dtype=float)[..., None]
    phi_b = np.asarray(phi_b, dtype=float)[..., None]
    kb = state.kets_b
    amp = np.sin(beta / 2) * np.exp(0.5j * phi_b) * kb[:, 0] + np.cos(beta / 2) * np.exp(-0.5j * phi_b) * kb[:, 1]
    return np.abs(amp) ** 2


def conditioned_state(state: SeparableState, beta: float, phi_b: float = 0.0) -> ConditionedState:
    """Normalised A-side state given a B-detector click.

    Raises DarkPointError when the click probability W_B is below 1e-12.
    """
    weights = state.weights * _b_click_probabilities(state, beta, phi_b)
    total = float(weights.sum())
    if total < DARK_THRESHOLD:
        raise DarkPointError(f"W_B = {total:.3g} at beta={beta!r}, phi_B={phi_b!r}: no coincidences")
    rho = np.zeros((2, 2), dtype=complex)
    for w, ket in zip(weights, state.kets_a):
        rho += w * np.outer(ket, ket.conj())
    return ConditionedState(rho / total, weights, total)


def conditioned_bloch(state: SeparableState, beta, phi_b=0.0):
    """Vectorised (W_B, normalised Bloch vector) over arrays of beta/phi_b.

    Dark points come back with W_B < 1e-12 and a NaN Bloch vector.
    """
    weights = state.weights * _b_click_probabilities(state, beta, phi_b)
    total = weights.sum(axis=-1)
    raw = weights @ state.bloch_a
    with np.errstate(invalid="ignore", divide="ignore"):
        vec = raw / total[..., None]
    vec = np.where((total >= DARK_THRESHOLD)[..., None], vec, np.nan)
    return total, vec


def coincidence(state: SeparableState, params: EvolutionParams, phi_d: float) -> float:
    """Joint click probability Tr[(P_up (x) P_up) S rho S^dagger] on the full 4x4 state."""
    rho = assemble_density(state)
    s_a = detector_matrix(phi_d) @ s_matrix(params.alpha, params.phi_a)
    s = tensor(s_a, s_matrix(params.beta, params.phi_b))
    out = s @ rho @ dagger(s)
    return float(out[0, 0].real)


def coincidence_conditioned(state: SeparableState, params: EvolutionParams, phi_d: float) -> float:
    """Same quantity as ``coincidence`` evaluated via the conditioned A state."""
    try:
        cond = conditioned_state(state, params.beta, params.phi_b)
    except DarkPointError:
        return 0.0
    s_a = detector_matrix(phi_d) @ s_matrix(params.alpha, params.phi_a)
    return float(cond.total * (UP @ s_a @ cond.rho @ dagger(s_a) @ UP).real)


def rotated_coherence(state: SeparableState, params: EvolutionParams) -> complex:
    """Off-diagonal element of S^A rho^{A|B} S^A^dagger."""
    cond = conditioned_state(state, params.beta, params.phi_b)
    s_a = s_matrix(params.alpha, params.phi_a)
    return complex((s_a @ cond.rho @ dagger(s_a))[0, 1])


def visibility(state: SeparableState, params: EvolutionParams) -> float:
    """Fringe visibility (K_max - K_min)/(K_max + K_min) = 2|rho_hat_12|.

    Raises DarkPointError where no coincidences can occur.
    """
    return float(min(1.0, 2.0 * abs(rotated_coherence(state, params))))


def rotate_bloch(vec, alpha, phi_a):
    """Bloch vector after S^A(alpha, phi_a); broadcasts over leading axes."""
    vec = np.asarray(vec, dtype=float)
    x, y, z = vec[..., 0], vec[..., 1], vec[..., 2]
    # phase factor: rotation of the azimuth by -phi_a
    c, s = np.cos(phi_a), np.sin(phi_a)
    x1 = c * x + s * y
    y1 = -s * x + c * y
    # real splitter: rotation about y by (alpha - pi)
    ca, sa = np.cos(alpha - np.pi), np.sin(alpha - np.pi)
    x2 = ca * x1 + sa * z
    z2 = -sa * x1 + ca * z
    return np.stack([x2, y1, z2], axis=-1)


def visibility_many(state: SeparableState, alpha, phi_a, beta, phi_b=0.0) -> np.ndarray:
    """Vectorised visibility over broadcastable parameter arrays; NaN at dark points."""
    alpha, phi_a, beta, phi_b = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (alpha, phi_a, beta, phi_b))
    )
    _, vec = conditioned_bloch(state, beta, phi_b)
    rot = rotate_bloch(vec, alpha, phi_a)
    return np.minimum(np.hypot(rot[..., 0], rot[..., 1]), 1.0)


def fringe_coefficients(state: SeparableState, params: EvolutionParams) -> tuple[float, complex]:
    """(C, A) with K(phi_d) = C + A e^{i phi_d} + c.c."""
    try:
        cond = conditioned_state(state, params.beta, params.phi_b)
    except DarkPointError:
        return 0.0, 0j
    s_a = s_matrix(params.alpha, params.phi_a)
    rho_hat = s_a @ cond.rho @ dagger(s_a)
    return 0.5 * cond.total, 0.5 * cond.total * complex(rho_hat[0, 1])

