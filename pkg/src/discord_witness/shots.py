"""Monte-Carlo emulation of repeated coincidence measurements.

Every trial picks a mixture component with probability w_nu, then draws the
A and B detector outcomes independently from their Born probabilities. The
RNG is numpy's PCG64 seeded with a 64-bit integer; a call uses one stream,
or ``partitions`` streams spawned from the seed when the trials are split.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .protocol import EvolutionParams, detector_matrix, s_matrix
from .qcore import TWO_PI, UP
from .states import SeparableState

CHUNK = 1 << 20
DEFAULT_PHASES = 24


class ShotFitError(ArithmeticError):
    """The fitted fringe offset is not positive (dark point or no counts)."""


def born_probabilities(state: SeparableState, params: EvolutionParams, phi_d: float):
    """Per-component click probabilities (P_A, P_B) at the |up> detectors."""
    s_a = detector_matrix(phi_d) @ s_matrix(params.alpha, params.phi_a)
    s_b = s_matrix(params.beta, params.phi_b)
    p_a = np.abs(state.kets_a @ (UP @ s_a)) ** 2
    p_b = np.abs(state.kets_b @ (UP @ s_b)) ** 2
    return p_a, p_b


def _count(rng: np.random.Generator, cum_w, p_a, p_b, trials: int) -> int:
    hits = 0
    done = 0
    while done < trials:
        n = min(CHUNK, trials - done)
        comp = np.searchsorted(cum_w, rng.random(n), side="right")
        click_a = rng.random(n) < p_a[comp]
        click_b = rng.random(n) < p_b[comp]
        hits += int(np.count_nonzero(click_a & click_b))
        done += n
    return hits


def sample_coincidences(
    state: SeparableState,
    params: EvolutionParams,
    phi_d: float,
    trials: int,
    seed: int | np.random.SeedSequence,
    partitions: int = 1,
    threads: int = 1,
) -> int:
    """Number of coincident |up>,|up> clicks in ``trials`` repetitions.

    The result depends only on (seed, partitions), never on ``threads``.
    """
    if trials < 0:
        raise ValueError("trials must be >= 0")
    if partitions < 1:
        raise ValueError("partitions must be >= 1")
    if trials == 0:
        return 0
    p_a, p_b = born_probabilities(state, params, phi_d)
    # interior component boundaries; searchsorted maps a uniform draw to its component
    cum_w = np.cumsum(state.weights)[:-1]
    seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(int(seed))
    if partitions == 1:
        return _count(np.random.default_rng(seq), cum_w, p_a, p_b, trials)
    sizes = [trials // partitions + (1 if k < trials % partitions else 0) for k in range(partitions)]
    jobs = list(zip(seq.spawn(partitions), sizes))
    run = lambda job: _count(np.random.default_rng(job[0]), cum_w, p_a, p_b, job[1])
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(run, jobs))
    return sum(map(run, jobs))


@dataclass(frozen=True)
class ShotConfig:
    state: SeparableState
    params: EvolutionParams
    trials: int
    seed: int
    phases: tuple[float, ...] = tuple(np.linspace(0.0, TWO_PI, DEFAULT_PHASES, endpoint=False))
    partitions: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials per phase point must be >= 1")
        if len(set(np.round(np.mod(self.phases, TWO_PI), 12))) < 3:
            raise ValueError("need at least 3 distinct detector phases to fit the fringe")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class VisibilityEstimate:
    visibility: float
    stderr: float
    offset: float  # C
    amplitude: float  # |A|, so the fringe is C + 2|A| cos(phi_d + delta)
    delta: float
    phases: np.ndarray
    trials: int
    counts: np.ndarray
    k_hat: np.ndarray
    k_stderr: np.ndarray
    seed: int


def fit_fringe(phases, k_hat, k_var):
    """Least-squares fit of C + a cos(phi) + b sin(phi); returns coefficients and covariance."""
    x = np.column_stack([np.ones_like(phases), np.cos(phases), np.sin(phases)])
    xtx_inv = np.linalg.inv(x.T @ x)
    coef = xtx_inv @ x.T @ k_hat
    cov = xtx_inv @ (x.T * k_var) @ x @ xtx_inv
    return coef, cov


def estimate_visibility(config: ShotConfig, threads: int = 1) -> VisibilityEstimate:
    """Simulate every detector phase, fit the fringe and extract V with its error.

    Phase point ``k`` uses the k-th stream spawned from ``config.seed``.
    Raises ShotFitError when the fitted offset C is not positive.
    """
    phases = np.asarray(config.phases, dtype=float)
    streams = np.random.SeedSequence(int(config.seed)).spawn(len(phases))
    counts = np.array(
        [
            sample_coincidences(config.state, config.params, phi, config.trials, seq, config.partitions, threads)
            for phi, seq in zip(phases, streams)
        ]
    )
    n = config.trials
    k_hat = counts / n
    k_var = k_hat * (1.0 - k_hat) / n
    coef, cov = fit_fringe(phases, k_hat, k_var)
    c, a, b = coef
    if not c > 0:
        raise ShotFitError(f"fitted fringe offset C = {c:.3g} is not positive; no usable coincidences")
    r = float(np.hypot(a, b))
    vis = r / c
    if r > 0:
        grad = np.array([-vis / c, a / (r * c), b / (r * c)])
        var = float(grad @ cov @ grad)
    else:
        var = float(cov[1, 1] + cov[2, 2]) / c**2
    return VisibilityEstimate(
        visibility=float(vis),
        stderr=float(np.sqrt(max(var, 0.0))),
        offset=float(c),
        amplitude=r / 2,
        delta=float(-np.arctan2(b, a)),
        phases=phases,
        trials=n,
        counts=counts,
        k_hat=k_hat,
        k_stderr=np.sqrt(k_var),
        seed=int(config.seed),
    )
