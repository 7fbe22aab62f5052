"""Acceptance criteria, one test each.

Every test prints a single ``[criterion N] PASS|FAIL ...`` line (shown even
without ``-s``) and then asserts the criterion at its stated tolerance.
"""
from __future__ import annotations

import time
from pathlib import Path

import numpy as np
import pytest

from discord_witness import cli
from discord_witness.compare import compare_family, family_state
from discord_witness.discord_ref import discord
from discord_witness.landscape import GridSpec, quantify, sweep, zero_line
from discord_witness.protocol import EvolutionParams, coincidence, coincidence_conditioned, visibility
from discord_witness.qcore import angles_from_ket, random_unitary
from discord_witness.reports import read_csv
from discord_witness.shots import ShotConfig, estimate_visibility
from discord_witness.states import PRESETS, PureComponent, SeparableState, assemble_density, preset

from oracles import (
    brute_force_discord,
    dense_quantifiers,
    random_discorded_pair,
    random_nondiscorded_state,
    random_product_state,
    single_peaked,
)

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return emit


def test_criterion_1_algebraic_equivalence(report):
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for k in range(1000):
        s = random_discorded_pair(rng) if k % 2 else random_nondiscorded_state(rng)
        p = EvolutionParams(*rng.uniform(0, 2 * np.pi, 4))
        phi_d = rng.uniform(0, 2 * np.pi)
        worst = max(worst, abs(coincidence(s, p, phi_d) - coincidence_conditioned(s, p, phi_d)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 5
    report(1, ok, f"max |K_full - K_cond| = {worst:.2e} (tol 1e-12), {elapsed:.2f} s (limit 5 s)")
    assert worst <= 1e-12
    assert elapsed < 5


def test_criterion_2_witness_soundness(report):
    rng = np.random.default_rng(202)
    start = time.perf_counter()
    zero_states = [preset("fig2b"), preset("fig6a"), preset("fig6b")] + [random_product_state(rng) for _ in range(100)]
    pos_states = [preset("fig2a"), preset("three", theta=np.pi / 2), preset("phase", phi2=np.pi / 2)]
    pos_states += [random_discorded_pair(rng) for _ in range(100)]
    zero_max = max(quantify(s).total for s in zero_states)
    pos_min = min(quantify(s).total for s in pos_states)
    elapsed = time.perf_counter() - start
    ok = zero_max < 1e-8 and pos_min > 1e-6 and elapsed < 30
    report(2, ok, f"max over non-discorded = {zero_max:.2e} (< 1e-8), min over discorded = {pos_min:.2e} "
                  f"(> 1e-6), {elapsed:.2f} s (limit 30 s)")
    assert zero_max < 1e-8
    assert pos_min > 1e-6
    assert elapsed < 30


def test_criterion_3_analytic_point(report):
    start = time.perf_counter()
    s = preset("phase", phi2=np.pi / 2)
    line = zero_line(s, 3 * 64)
    k = 64  # beta = 2 pi / 3
    alpha0, phi0 = line.alpha0[k], line.phi_a0[k]
    expected = np.arctan((2 - np.sqrt(3)) / 3)
    elapsed = time.perf_counter() - start
    ok = abs(alpha0 - np.pi / 2) < 1e-4 and abs(phi0 - expected) < 1e-4 and elapsed < 1
    report(3, ok, f"beta = {line.beta[k]:.6f}: alpha0 = {alpha0:.6f}, phiA0 = {phi0:.6f} vs expected "
                  f"{expected:.6f} (tol 1e-4), {elapsed:.3f} s (limit 1 s)")
    assert abs(alpha0 - np.pi / 2) < 1e-4
    assert abs(phi0 - expected) < 1e-4
    assert elapsed < 1


def test_criterion_4_endpoint_concordance(report):
    start = time.perf_counter()
    details, ok = [], True
    for family in ("rho_theta", "phase", "three"):
        values = np.linspace(0.0, np.pi, 25)
        rows = compare_family(family, values)
        d = np.array([r.discord for r in rows])
        q = np.array([r.total for r in rows])
        ends = max(abs(d[0]), abs(d[-1]), q[0], q[-1])
        peaked = single_peaked(d) and single_peaked(q)
        # peak heights against brute-force oracles at the sampled maximum
        k = int(np.argmax(q))
        state = family_state(family, values[k])
        oa, op = dense_quantifiers(state, 65536)
        fine = quantify(state, 4096)
        dq = abs(fine.total - (oa + op))
        dd = abs(d[int(np.argmax(d))] - brute_force_discord(assemble_density(family_state(family, values[int(np.argmax(d))]))))
        fam_ok = ends < 1e-6 and peaked and dq < 1e-6 and dd < 1e-6
        ok &= fam_ok
        details.append(f"{family}: ends {ends:.1e}, single-peaked {peaked}, |dQ| {dq:.1e}, |dD| {dd:.1e}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300
    report(4, ok, "; ".join(details) + f"; {elapsed:.1f} s (limit 300 s)")
    assert ok


def test_criterion_5_passive_unitary_invariance(report):
    rng = np.random.default_rng(505)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(20):
        s = random_nondiscorded_state(rng)
        for _ in range(20):
            u = random_unitary(2, rng)
            comps = []
            for c in s.components:
                tb, pb = angles_from_ket(u @ c.ket_b)
                comps.append(PureComponent(c.weight, c.theta_a, c.phi_a, tb, pb))
            worst = max(worst, quantify(SeparableState(tuple(comps))).total)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-8 and elapsed < 30
    report(5, ok, f"max quantifier over 400 rotated states = {worst:.2e} (< 1e-8), {elapsed:.2f} s (limit 30 s)")
    assert worst < 1e-8
    assert elapsed < 30


def test_criterion_6_shot_noise(report):
    s = preset("fig2a")
    params = EvolutionParams(np.pi, 0.0, np.pi, 0.0)
    v_true = visibility(s, params)
    start = time.perf_counter()
    estimates = [estimate_visibility(ShotConfig(s, params, 10**6, seed=6000 + k)) for k in range(20)]
    elapsed = time.perf_counter() - start
    dev = np.array([e.visibility - v_true for e in estimates])
    se = np.array([e.stderr for e in estimates])
    rms, mean_se = float(np.sqrt(np.mean(dev**2))), float(se.mean())
    ratio = mean_se / rms
    ok = np.abs(dev).max() <= 0.01 and 1 / 1.5 <= ratio <= 1.5 and elapsed < 120
    report(6, ok, f"V = {v_true:.6f}, max |V_hat - V| = {np.abs(dev).max():.2e} (<= 0.01), "
                  f"mean SE / RMS dev = {ratio:.3f} (within 1.5x), {elapsed:.1f} s (limit 120 s)")
    assert np.abs(dev).max() <= 0.01
    assert 1 / 1.5 <= ratio <= 1.5
    assert elapsed < 120


def test_criterion_7_determinism(report, tmp_path, capsys):
    same = True
    golden_ok = True
    for name in ("fig2a", "fig2b"):
        argv = ["landscape", "--preset", name, "--axes", "alpha,beta", "--steps", "64,64", "--quiet"]
        a, b = tmp_path / f"{name}_a.csv", tmp_path / f"{name}_b.csv"
        cli.main(argv + ["--out", str(a)])
        cli.main(argv + ["--out", str(b)])
        same &= a.read_bytes() == b.read_bytes()
        ref = (GOLDEN / f"landscape_{name}_64.csv").read_text()
        _, got = read_csv(a.read_text())
        _, want = read_csv(ref)
        golden_ok &= a.read_text().splitlines()[:2] == ref.splitlines()[:2] and np.allclose(got, want, atol=1e-12, rtol=0)
    shots = ["shots", "--preset", "fig2a", "--trials", "20000", "--seed", "7", "--quiet"]
    a, b = tmp_path / "s_a.csv", tmp_path / "s_b.csv"
    cli.main(shots + ["--out", str(a)])
    cli.main(shots + ["--out", str(b)])
    capsys.readouterr()
    same &= a.read_bytes() == b.read_bytes()
    ok = same and golden_ok
    report(7, ok, f"reruns byte-identical: {same}; golden fig2a/fig2b 64x64 match: {golden_ok}")
    assert same
    assert golden_ok


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_criterion_8_performance(report, name):
    grid = GridSpec("alpha", "beta", steps1=256, steps2=256)
    start = time.perf_counter()
    land = sweep(preset(name), grid)
    elapsed = time.perf_counter() - start
    ok = elapsed < 5 and land.values.size == 65536
    report(8, ok, f"{name}: 256x256 landscape in {elapsed:.3f} s (limit 5 s)")
    assert elapsed < 5
