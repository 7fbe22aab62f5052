from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discord_witness.discord_ref import MeasurementBasis, conditional_entropy, discord, mutual_information
from discord_witness.landscape import quantify
from discord_witness.qcore import random_unitary, von_neumann_entropy
from discord_witness.states import assemble_density, preset

from oracles import (
    brute_force_discord,
    density4,
    random_discorded_pair,
    random_nondiscorded_state,
    random_probe_min,
    random_product_state,
)


def bell():
    v = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return np.outer(v, v).astype(complex)


def test_mutual_information_examples():
    assert mutual_information(assemble_density(preset("fig2b"))) == pytest.approx(1.0, abs=1e-12)
    assert mutual_information(bell()) == pytest.approx(2.0, abs=1e-12)
    rng = np.random.default_rng(0)
    for _ in range(20):
        s = random_product_state(rng)
        assert abs(mutual_information(density4(s))) < 1e-10


def test_measurement_basis_projectors():
    rng = np.random.default_rng(2)
    for _ in range(20):
        p1, p2 = MeasurementBasis(*rng.uniform(-5, 5, 2)).projectors
        assert np.allclose(p1 + p2, np.eye(2), atol=1e-12)
        for p in (p1, p2):
            assert np.allclose(p @ p, p, atol=1e-12)


def test_conditional_entropy_fig2b():
    rho = assemble_density(preset("fig2b"))
    assert conditional_entropy(rho, MeasurementBasis(np.pi / 2, 0.0), "A") == pytest.approx(0.0, abs=1e-12)
    assert conditional_entropy(rho, MeasurementBasis(0.0, 0.0), "A") == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1), st.floats(0, np.pi), st.floats(0, 2 * np.pi), st.sampled_from("AB"))
def test_conditional_entropy_of_product(seed, th, ph, side):
    s = random_product_state(np.random.default_rng(seed))
    if len(s) != 1:
        return
    rho = density4(s)
    red = np.einsum("kikj->ij", rho.reshape(2, 2, 2, 2)) if side == "A" else np.einsum("ikjk->ij", rho.reshape(2, 2, 2, 2))
    value = conditional_entropy(rho, MeasurementBasis(th, ph), side)
    assert value == pytest.approx(von_neumann_entropy(red), abs=1e-10)


def test_conditional_entropy_of_mixed_product():
    # rho_A (x) rho_B with both sides mixed: measuring A leaves rho_B untouched
    rng = np.random.default_rng(9)
    ra = np.diag([0.7, 0.3]).astype(complex)
    u = random_unitary(2, rng)
    rb = u @ np.diag([0.6, 0.4]) @ u.conj().T
    rho = np.kron(ra, rb)
    h = -(0.6 * np.log2(0.6) + 0.4 * np.log2(0.4))
    for th, ph in rng.uniform(0, 3, (5, 2)):
        assert conditional_entropy(rho, MeasurementBasis(th, ph), "A") == pytest.approx(h, abs=1e-12)


def test_discord_rejects_bad_side():
    with pytest.raises(ValueError):
        discord(bell(), "C")


def test_discord_non_discorded_examples():
    assert discord(assemble_density(preset("fig2b"))).value < 1e-7
    for theta in (0.0, np.pi):
        assert discord(assemble_density(preset("rho_theta", theta=theta))).value < 1e-7
    rng = np.random.default_rng(4)
    for _ in range(20):
        assert discord(density4(random_product_state(rng))).value < 1e-7


@pytest.mark.parametrize(
    "name, params",
    [("rho_theta", {"theta": np.pi / 2}), ("three", {"theta": np.pi / 2}), ("phase", {"phi2": np.pi / 2}), ("fig2a", {})],
)
def test_discord_matches_brute_force(name, params):
    rho = density4(preset(name, **params))
    d = discord(rho)
    assert abs(d.value - brute_force_discord(rho)) < 1e-6
    assert -1e-9 <= d.value <= d.mutual_information + 1e-9


def test_rho_theta_half_pi_value():
    # brute-force 1e5-basis scan value, recorded to 1e-6
    d = discord(assemble_density(preset("rho_theta", theta=np.pi / 2)))
    assert d.value == pytest.approx(0.1441768, abs=1e-6)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_minimizer_beats_random_probe(seed):
    rng = np.random.default_rng(seed)
    rho = density4(random_discorded_pair(rng))
    assert discord(rho).value <= random_probe_min(rho, 10_000, rng) + 1e-7


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_invariant_under_unmeasured_unitary(seed):
    rng = np.random.default_rng(seed)
    rho = density4(random_discorded_pair(rng))
    u = np.kron(np.eye(2), random_unitary(2, rng))
    assert abs(discord(rho).value - discord(u @ rho @ u.conj().T).value) < 1e-6
    v = np.kron(random_unitary(2, rng), np.eye(2))
    assert abs(discord(rho, "B").value - discord(v @ rho @ v.conj().T, "B").value) < 1e-6


def test_measured_side_matters():
    # A kets non-orthogonal, B kets orthogonal: discorded for A, not for B
    rho = assemble_density(preset("phase", phi2=np.pi / 2))
    assert discord(rho, "A").value > 0.1
    assert discord(rho, "B").value < 1e-7


def test_zero_classification_agrees_with_witness():
    rng = np.random.default_rng(2024)
    for k in range(200):
        s = random_nondiscorded_state(rng) if k % 2 else random_discorded_pair(rng)
        d = discord(density4(s)).value
        q = quantify(s, 64).total
        assert (d < 1e-6) == (q < 1e-8), (k, d, q)
