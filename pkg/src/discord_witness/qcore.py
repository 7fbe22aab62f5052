"""Small-dimension quantum linear algebra: qubit kets, 2x2/4x4 density
matrices, tensor products, partial traces and von Neumann entropies.

Basis order is (up, down) for a qubit and (A slow, B fast) for the pair,
so ``tensor(a, b)[2*i + k, 2*j + l] == a[i, j] * b[k, l]``.
"""
from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)
UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
EIGEN_CLAMP = 1e-12


def wrap_angle(angle):
    """Map an angle to [0, 2*pi)."""
    return np.mod(angle, TWO_PI)


def ket_from_angles(theta: float, phi: float) -> np.ndarray:
    """Qubit ket cos(theta/2)|up> + exp(i phi) sin(theta/2)|down>."""
    theta = float(wrap_angle(theta))
    phi = float(wrap_angle(phi))
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], dtype=complex)


def bloch_from_angles(theta: float, phi: float) -> np.ndarray:
    return np.array(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )


def projector(ket: np.ndarray) -> np.ndarray:
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())


def density_from_bloch(vec) -> np.ndarray:
    """(1 + r . sigma) / 2 for a Bloch vector of length <= 1."""
    x, y, z = vec
    return 0.5 * (IDENTITY2 + x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)


def bloch_from_density(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho)
    return np.array(
        [2.0 * rho[0, 1].real, -2.0 * rho[0, 1].imag, (rho[0, 0] - rho[1, 1]).real]
    )


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    u = np.asarray(u)
    return bool(np.allclose(dagger(u) @ u, np.eye(u.shape[0]), atol=tol, rtol=0))


def check_density(rho: np.ndarray) -> np.ndarray:
    """Validate a density matrix and return it as a complex array.

    Raises ValueError if it is not square 2x2/4x4, not Hermitian, not of
    unit trace, or has an eigenvalue below -1e-10.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape not in ((2, 2), (4, 4)):
        raise ValueError(f"expected a 2x2 or 4x4 matrix, got shape {rho.shape}")
    if not np.allclose(rho, dagger(rho), atol=HERMITIAN_TOL, rtol=0):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        raise ValueError(f"density matrix trace is {np.trace(rho).real!r}, expected 1")
    if np.linalg.eigvalsh(rho).min() < -PSD_TOL:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits; eigenvalues below 1e-12 count as zero."""
    rho = np.asarray(rho, dtype=complex)
    if not np.allclose(rho, dagger(rho), atol=HERMITIAN_TOL, rtol=0):
        raise ValueError("entropy requires a Hermitian matrix")
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > EIGEN_CLAMP]
    return float(-np.sum(evals * np.log2(evals)))


def partial_trace(rho: np.ndarray, subsystem: str) -> np.ndarray:
    """Trace a 4x4 two-qubit matrix over subsystem ``"A"`` or ``"B"``."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if subsystem == "B":
        return np.einsum("ikjk->ij", r)
    if subsystem == "A":
        return np.einsum("kikj->ij", r)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def angles_from_ket(ket) -> tuple[float, float]:
    """Inverse of ket_from_angles up to a global phase; theta in [0, pi]."""
    ket = np.asarray(ket, dtype=complex)
    ket = ket / np.linalg.norm(ket)
    theta = 2.0 * np.arctan2(abs(ket[1]), abs(ket[0]))
    if abs(ket[0]) < 1e-15 or abs(ket[1]) < 1e-15:
        return float(theta), 0.0
    return float(theta), float(np.angle(ket[1] / ket[0]))
