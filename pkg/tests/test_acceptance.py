"""Acceptance criteria, one test per criterion.

Every test records a one-line PASS/FAIL verdict with its measured figures;
``conftest.py`` prints the collected lines at the end of the session. The
file also runs standalone: ``python3 tests/test_acceptance.py``.
"""

import time

import numpy as np
import pytest

from fidmono.core import (
    derive_seed,
    eigh,
    fidelity_matrices,
    ghz,
    ginibre_random_mixed,
    haar_random_pure,
    partial_trace,
    sqrtm_psd,
    w_state,
    werner,
)
from fidmono.measures import (
    concurrence_pure,
    concurrence_wootters,
    entanglement_pure_bipartition,
    fs_pure,
    fs_upper_bound,
)
from fidmono.monogamy import CampaignConfig, check_ckw_pure, check_scalar_lemma, ckw_residuals, run_campaign
from fidmono.variational import OptimizerConfig, convex_roof_concurrence_upper, max_separable_fidelity_mixed

RESULTS = []

ORACLE_STATES = 100
ORACLE_SEED_BASE = 1000  # state i is ginibre_random_mixed(2, 4, 1000 + i), optimizer seed i


def verdict(number, ok, detail, t0):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail} ({time.perf_counter() - t0:.1f}s)"
    RESULTS.append(line)
    print(line)
    assert ok, line


def oracle_states():
    return [ginibre_random_mixed(2, 4, ORACLE_SEED_BASE + i) for i in range(ORACLE_STATES)]


def test_criterion_1_pure_identity():
    t0 = time.perf_counter()
    worst = 0.0
    for n in (2, 3, 4):
        for i in range(10_000):
            psi = haar_random_pure(n, derive_seed(1, n, i))
            worst = max(worst, abs(fs_pure(psi, 0) - fs_upper_bound(concurrence_pure(psi, 0))))
    verdict(1, worst <= 1e-10, f"pure-state identity, max |F_s - (1+sqrt(1-C^2))/2| = {worst:.2e} <= 1e-10", t0)


def test_criterion_2_theorem_pure():
    t0 = time.perf_counter()
    total = viol = 0
    worst = np.inf
    for n in (3, 4, 5):
        s = run_campaign(CampaignConfig(n_samples=10_000, n_qubits=n, seed=2, alphas=(1, 1.5, 2, 3)))
        total += s.total_checks
        viol += s.violations
        worst = min(worst, s.min_residual)
    verdict(2, viol == 0, f"theorem on pure states, {total} checks, {viol} residuals < -1e-9, min {worst:.3e}", t0)


def test_criterion_3_scalar_grid():
    t0 = time.perf_counter()
    grid = np.round(np.arange(21) * 0.05, 12)
    worst = np.inf
    count = 0
    for kind in ("bures", "geometric"):
        for alpha in (1, 1.5, 2, 5):
            for x in grid:
                for y in grid:
                    if x * x + y * y <= 1 + 1e-12:
                        worst = min(worst, check_scalar_lemma(x, y, alpha, kind))
                        count += 1
    verdict(3, worst >= -1e-12, f"scalar lemma grid, {count} points, min residual {worst:.3e} >= -1e-12", t0)


def test_criterion_4_ckw():
    t0 = time.perf_counter()
    w = check_ckw_pure(w_state(3))
    g = check_ckw_pure(ghz(3))
    worst = np.inf
    for n in (3, 4):
        psis = np.stack([haar_random_pure(n, derive_seed(4, n, i)).amplitudes for i in range(10_000)])
        worst = min(worst, ckw_residuals(psis, n, 0).min())
    ok = abs(w) <= 1e-10 and abs(g - 1) <= 1e-10 and worst >= -1e-9
    verdict(4, ok, f"CKW, W(3) residual {w:.1e}, GHZ(3) residual - 1 = {g - 1:.1e}, Haar min {worst:.3e}", t0)


def test_criterion_5_separable_oracle():
    t0 = time.perf_counter()
    above = close = 0
    worst_excess = -np.inf
    for i, rho in enumerate(oracle_states()):
        bound = fs_upper_bound(concurrence_wootters(rho))
        value = max_separable_fidelity_mixed(rho, 0, 4, OptimizerConfig(restarts=16, seed=i)).value
        worst_excess = max(worst_excess, value - bound)
        above += value > bound + 1e-9
        close += abs(bound - value) <= 1e-3
    ok = above == 0 and close >= 95
    verdict(
        5, ok, f"separable-fidelity oracle, {above} above bound, {close}/100 within 1e-3, max excess {worst_excess:.1e}", t0
    )


def test_criterion_6_convex_roof_oracle():
    t0 = time.perf_counter()
    below = close = 0
    worst = np.inf
    for i, rho in enumerate(oracle_states()):
        c = concurrence_wootters(rho)
        value = convex_roof_concurrence_upper(rho, 0, 4, OptimizerConfig(restarts=16, seed=i)).value
        worst = min(worst, value - c)
        below += value < c - 1e-9
        close += abs(value - c) <= 1e-3
    ok = below == 0 and close >= 95
    verdict(6, ok, f"convex-roof oracle, {below} below Wootters, {close}/100 within 1e-3, min gap {worst:.1e}", t0)


def test_criterion_7_mixed_chain():
    t0 = time.perf_counter()
    total = viol = 0
    worst = np.inf
    for rank in (2, 4):
        s = run_campaign(CampaignConfig(n_samples=1000, n_qubits=3, seed=7, alphas=(1, 2), state_class=f"ginibre:{rank}"))
        total += s.total_checks
        viol += s.violations
        worst = min(worst, s.min_residual)
    verdict(7, viol == 0, f"mixed chain, {total} checks, {viol} residuals < -1e-9, min {worst:.3e}", t0)


def test_criterion_8_named_values():
    t0 = time.perf_counter()
    w3 = w_state(3).density()
    errs = {
        "W(3) pair C": abs(concurrence_wootters(partial_trace(w3, [0, 1])) - 2 / 3),
        "W(3) geometric LHS": abs(entanglement_pure_bipartition(w_state(3), 0, "geometric") - 1 / 3),
        "GHZ(3) Bures LHS": abs(entanglement_pure_bipartition(ghz(3), 0, "bures") - (2 - np.sqrt(2))),
        "werner(0.5) C": abs(concurrence_wootters(werner(0.5)) - 0.25),
    }
    worst = max(errs.values())
    verdict(8, worst <= 1e-9, "named values, " + ", ".join(f"{k} err {v:.1e}" for k, v in errs.items()), t0)


def test_criterion_9_kernels():
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    dims = np.resize(np.arange(1, 33), 1000)
    recon = 0.0
    for d in np.unique(dims):
        k = int(np.sum(dims == d))
        a = rng.standard_normal((k, d, d)) + 1j * rng.standard_normal((k, d, d))
        h = (a + a.conj().transpose(0, 2, 1)) / 2
        w, v = eigh(h)
        back = np.einsum("kij,kj,klj->kil", v, w, v.conj())
        rel = np.linalg.norm(back - h, axis=(1, 2)) / np.linalg.norm(h, axis=(1, 2))
        recon = max(recon, rel.max())
    sq = sym = 0.0
    for i in range(100):
        n = 1 + i % 4
        p = ginibre_random_mixed(n, 1 + i % 2**n, derive_seed(9, i)).matrix
        q = ginibre_random_mixed(n, 2**n - i % 2**n, derive_seed(90, i)).matrix
        s = sqrtm_psd(p)
        sq = max(sq, np.linalg.norm(s @ s - p))
        sym = max(sym, abs(fidelity_matrices(p, q) - fidelity_matrices(q, p)))
    ok = recon <= 1e-10 and sq <= 1e-10 and sym <= 1e-10
    verdict(9, ok, f"kernels, eigh rel. reconstruction {recon:.1e}, sqrtm squaring {sq:.1e}, fidelity asymmetry {sym:.1e}", t0)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
