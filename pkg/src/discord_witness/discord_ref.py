"""Standard (entropic) quantum discord of a two-qubit state, minimised over
rank-1 projective measurements on one side.

``measured="A"`` gives the A-discord used throughout the package: the
projectors act on subsystem A and the conditional entropy is that of B.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .qcore import IDENTITY2, check_density, ket_from_angles, partial_trace, projector, von_neumann_entropy

GRID_THETA = 64
GRID_PHI = 32
N_STARTS = 3
SIMPLEX_XATOL = 1e-7
MIN_OUTCOME_PROB = 1e-12


@dataclass(frozen=True)
class MeasurementBasis:
    theta: float
    phi: float

    @property
    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        p1 = projector(ket_from_angles(self.theta, self.phi))
        return p1, IDENTITY2 - p1


@dataclass(frozen=True)
class DiscordResult:
    value: float
    basis: MeasurementBasis
    mutual_information: float
    conditional_entropy: float
    measured: str


def _other(measured: str) -> str:
    if measured not in ("A", "B"):
        raise ValueError(f"measured subsystem must be 'A' or 'B', got {measured!r}")
    return "B" if measured == "A" else "A"


def mutual_information(rho: np.ndarray) -> float:
    """S(rho_A) + S(rho_B) - S(rho_AB) in bits."""
    rho = check_density(rho)
    return (
        von_neumann_entropy(partial_trace(rho, "B"))
        + von_neumann_entropy(partial_trace(rho, "A"))
        - von_neumann_entropy(rho)
    )


def conditional_entropy(rho: np.ndarray, basis: MeasurementBasis, measured: str = "A") -> float:
    """Average entropy of the unmeasured side after measuring ``basis``."""
    rho = check_density(rho)
    _other(measured)
    total = 0.0
    for proj in basis.projectors:
        op = np.kron(proj, IDENTITY2) if measured == "A" else np.kron(IDENTITY2, proj)
        post = op @ rho @ op
        p = float(np.trace(post).real)
        if p < MIN_OUTCOME_PROB:
            continue
        total += p * von_neumann_entropy(partial_trace(post, measured) / p)
    return total


def _binary_entropy(p):
    p = np.clip(p, 0.0, 1.0)
    out = np.zeros_like(p)
    for q in (p, 1.0 - p):
        mask = q > 1e-12
        out[mask] -= q[mask] * np.log2(q[mask])
    return out


def _conditional_entropy_many(rho: np.ndarray, theta, phi, measured: str) -> np.ndarray:
    """Vectorised conditional entropy over arrays of basis angles."""
    r = rho.reshape(2, 2, 2, 2)
    if measured == "B":
        r = r.transpose(1, 0, 3, 2)
    theta, phi = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    up = np.stack([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], axis=-1)
    down = np.stack([-np.exp(-1j * phi) * np.sin(theta / 2), np.cos(theta / 2)], axis=-1)
    total = np.zeros(theta.shape)
    for m in (up, down):
        # unnormalised conditional state <m| rho |m> on the unmeasured side
        sub = np.einsum("...i,ikjl,...j->...kl", m.conj(), r, m)
        p = np.real(sub[..., 0, 0] + sub[..., 1, 1])
        x = 2.0 * sub[..., 0, 1].real
        y = -2.0 * sub[..., 0, 1].imag
        z = np.real(sub[..., 0, 0] - sub[..., 1, 1])
        with np.errstate(invalid="ignore", divide="ignore"):
            length = np.sqrt(x * x + y * y + z * z) / p
        ent = _binary_entropy(np.where(p > MIN_OUTCOME_PROB, (1.0 + np.minimum(length, 1.0)) / 2, 1.0))
        total += np.where(p > MIN_OUTCOME_PROB, p * ent, 0.0)
    return total


def discord(rho: np.ndarray, measured: str = "A") -> DiscordResult:
    """Discord with projective measurements on ``measured``.

    min over bases of S(other | basis) - S(rho_AB) + S(rho_measured),
    found by a 64x32 scan of (theta, phi) followed by Nelder-Mead from the
    best three nodes.
    """
    rho = check_density(rho)
    s_ab = von_neumann_entropy(rho)
    s_measured = von_neumann_entropy(partial_trace(rho, _other(measured)))
    thetas = np.linspace(0.0, np.pi, GRID_THETA)
    phis = np.linspace(0.0, 2 * np.pi, GRID_PHI, endpoint=False)
    grid = _conditional_entropy_many(rho, thetas[:, None], phis[None, :], measured)
    order = np.argsort(grid, axis=None, kind="stable")[:N_STARTS]

    def objective(x):
        return float(_conditional_entropy_many(rho, x[0], x[1], measured))

    best_x, best_f = None, np.inf
    for flat in order:
        i, j = np.unravel_index(flat, grid.shape)
        start = np.array([thetas[i], phis[j]])
        res = optimize.minimize(
            objective,
            start,
            method="Nelder-Mead",
            options={"xatol": SIMPLEX_XATOL, "fatol": 1e-14, "maxiter": 2000,
                     "initial_simplex": [start, start + [0.05, 0.0], start + [0.0, 0.1]]},
        )
        if res.fun < best_f:
            best_x, best_f = res.x, float(res.fun)
    if grid.min() < best_f:
        i, j = np.unravel_index(int(np.argmin(grid)), grid.shape)
        best_x, best_f = np.array([thetas[i], phis[j]]), float(grid.min())
    value = best_f - s_ab + s_measured
    if -1e-9 < value < 0.0:
        value = 0.0
    return DiscordResult(
        value=float(value),
        basis=MeasurementBasis(float(best_x[0]), float(np.mod(best_x[1], 2 * np.pi))),
        mutual_information=mutual_information(rho),
        conditional_entropy=best_f,
        measured=measured,
    )
