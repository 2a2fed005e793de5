"""The eight acceptance criteria, at their stated sizes and tolerances.

Each test records a PASS/FAIL line, printed in the terminal summary:

    pytest tests/test_acceptance.py -v
"""

import math
import time
from fractions import Fraction
from itertools import product

import numpy as np

from randcomplex.cochain import Cochain1, orbit_weight, random_cochain
from randcomplex.complex import Complex2, all_triples, derive_seed
from randcomplex.experiments import (
    ExperimentConfig,
    estimate_cocycle_probability,
    max_index_for,
    quotient_experiment,
    quotient_probability,
    threshold_sweep,
    union_bound_value,
)
from randcomplex.expansion import check_gauge_identity, verify_expansion_exhaustive
from randcomplex.groups import build_group, catalog_entries
from randcomplex.search import count_hom_orbits, enumerate_cocycles

from oracles import conjugation_orbits, orbit_weight_all_gauges, random_complex_triangles, relation_solutions


def test_1_exhaustive_expansion(acceptance):
    cases = [(4, "C2", 64), (4, "C3", 729), (5, "C2", 1024), (6, "C2", 32768)]
    ok, notes = True, []
    for n, spec, count in cases:
        t0 = time.perf_counter()
        r = verify_expansion_exhaustive(n, build_group(spec))
        dt = time.perf_counter() - t0
        good = r.cochains_checked == count and r.violations == 0 and dt < 10 and r.min_ratio >= r.bound
        if (n, spec) == (4, "C2"):
            good = good and r.min_ratio == 2
        ok &= good
        notes.append(f"n={n} {spec}: {r.cochains_checked} cochains, {r.violations} violations, "
                     f"min ratio {r.min_ratio}, {dt:.2f}s")
    acceptance("AC1 expansion inequality (exhaustive)", ok, "; ".join(notes))
    assert ok


def test_2_gauge_identity(acceptance):
    failures, checks = 0, 0
    for spec in ["C2", "C5", "A5"]:
        G = build_group(spec)
        for n in (4, 6, 8):
            rng = np.random.default_rng(derive_seed(2, G.order, n))
            for _ in range(1000):
                phi = random_cochain(G, n, rng)
                for u in range(1, n + 1):
                    checks += 1
                    failures += not check_gauge_identity(phi, u)
    ok = failures == 0
    acceptance("AC2 gauge identity", ok, f"{checks} (cochain, u) checks, {failures} failures")
    assert ok


def test_3_bijection(acceptance):
    T4 = [tuple(t) for t in all_triples(4).tolist()]
    complexes = [Complex2(4, [t for b, t in enumerate(T4) if m >> b & 1]) for m in range(16)]
    rng = np.random.default_rng(3)
    complexes += [Complex2(5, random_complex_triangles(5, rng, rng.uniform(0.1, 0.9))) for _ in range(200)]
    bad = 0
    for spec in ["C2", "C3"]:
        G = build_group(spec)
        for X in complexes:
            brute = relation_solutions(X, G.order)
            engine = enumerate_cocycles(X, G).cocycles
            same = sorted(tuple(c.values[X.n - 1:].tolist()) for c in engine) == sorted(brute)
            same &= count_hom_orbits(X, G) == conjugation_orbits(G, brute)
            bad += not same
    ok = bad == 0
    acceptance("AC3 presentation bijection", ok,
               f"{len(complexes)} complexes x 2 groups, {bad} discrepancies")
    assert ok


def test_4_survival_probability(acceptance):
    G = build_group("C2")
    phi = Cochain1.from_pairs(G, 5, {(2, 3): 1})
    ok, notes = True, []
    for p in (0.2, 0.5, 0.8):
        t0 = time.perf_counter()
        r = estimate_cocycle_probability(phi, p, 10_000, seed=derive_seed(4, int(p * 10)))
        dt = time.perf_counter() - t0
        z = abs(r.empirical - r.closed_form) / r.stderr
        good = r.d1_norm == 3 and z <= 3 and dt < 5 and math.isclose(r.closed_form, (1 - p) ** 3)
        ok &= good
        notes.append(f"p={p}: {r.empirical:.4f} vs {r.closed_form:.4f} ({z:.2f} SE, {dt:.2f}s)")
    acceptance("AC4 survival probability", ok, "; ".join(notes))
    assert ok


def test_5_threshold_sweep(acceptance):
    cfg = ExperimentConfig(n=40, trials=200, seed=5, group="C2",
                           alpha_list=[0.5, 1.0, 1.5, 2.0, 2.5, 3.0], share_seeds=True)
    t0 = time.perf_counter()
    res = threshold_sweep(cfg)
    dt = time.perf_counter() - t0
    rows = [c.indicators for c in res.cells]
    monotone = all(
        list(col) == sorted(col, reverse=True)
        for col in zip(*rows)
    ) and all("x" not in r for r in rows)
    est = [c.estimate for c in res.cells]
    ok = monotone and est[0] >= 0.9 and est[-1] <= 0.1
    acceptance("AC5 threshold sweep", ok,
               f"estimates {', '.join(f'{e:.3f}' for e in est)}; per-seed monotone={monotone}; {dt:.1f}s")
    assert ok


def test_6_quotient_regime(acceptance):
    cfg = ExperimentConfig(n=40, trials=50, seed=6, c=0.3)
    assert max_index_for(40, 0.3) == 3
    t0 = time.perf_counter()
    res = quotient_experiment(cfg)
    dt = time.perf_counter() - t0
    cell = res.cells[0]
    ok = math.isclose(cell.p, quotient_probability(40, 0.3)) and cell.infeasible == 0 and cell.estimate <= 0.05
    acceptance("AC6 small quotients", ok,
               f"p={cell.p:.4f}, N=3, fraction {cell.estimate:.3f} over {cell.trials} trials, {dt:.1f}s")
    assert ok


def test_7_union_bound_and_catalog(acceptance):
    rng = np.random.default_rng(7)
    cs = rng.uniform(0.0, 10.0, size=200)
    exp_ok = all(
        Fraction(2) + Fraction(c) - (6 + 7 * Fraction(c)) / 3 == -4 * Fraction(c) / 3
        and math.isclose(union_bound_value(int(rng.integers(2, 10**6)), float(c), 5).exponent,
                         -4 * c / 3, rel_tol=1e-12, abs_tol=1e-12)
        for c in cs
    )
    cat_ok = all(len(catalog_entries(N)) <= 2 * N for N in range(2, 661))
    ok = exp_ok and cat_ok
    acceptance("AC7 union bound and catalog size", ok,
               f"exponent -4c/3 on 200 random c: {exp_ok}; |catalog(N)| <= 2N for N <= 660: {cat_ok}")
    assert ok


def test_8_orbit_weight_oracle(acceptance):
    mismatches = 0
    C2, C3 = build_group("C2"), build_group("C3")
    for values in product(range(2), repeat=6):
        phi = Cochain1(C2, 4, np.array(values))
        w, exact = orbit_weight(phi)
        mismatches += not exact or w != orbit_weight_all_gauges(C2, 4, values)
    rng = np.random.default_rng(8)
    for _ in range(500):
        phi = random_cochain(C3, 4, rng)
        w, exact = orbit_weight(phi)
        mismatches += not exact or w != orbit_weight_all_gauges(C3, 4, phi.values.tolist())
    ok = mismatches == 0
    acceptance("AC8 orbit weight vs ungauged brute force", ok, f"564 cochains, {mismatches} mismatches")
    assert ok
