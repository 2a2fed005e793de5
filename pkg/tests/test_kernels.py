"""Each kernel backend against the others and against brute force."""

from itertools import product
from math import comb

import numpy as np
import pytest

from randcomplex import _backend
from randcomplex.cochain import Cochain1, d1_norm, orbit_weight, orbit_weight_bounds, random_cochain
from randcomplex.complex import Complex2, sample_complex
from randcomplex.expansion import verify_expansion_exhaustive
from randcomplex.groups import build_group
from randcomplex.search import enumerate_cocycles, has_nontrivial_class

from oracles import orbit_weight_all_gauges

BACKENDS = _backend.available()


def test_default_backend_is_listed():
    assert _backend.NAME in BACKENDS
    assert _backend.kernels is BACKENDS[_backend.NAME]


@pytest.mark.parametrize("spec", ["C2", "C3", "A5"])
def test_d1_support_count(backend, spec):
    G = build_group(spec)
    rng = np.random.default_rng(0)
    for _ in range(20):
        phi = random_cochain(G, 7, rng)
        assert _backend.kernels.d1_support_count(phi.dense(), G.mul_table) == d1_norm(phi)


def test_orbit_weight_vs_oracle(backend):
    G = build_group("C3")
    for values in product(range(3), repeat=6):
        if sum(values) % 5:  # a deterministic third of all 729
            continue
        phi = Cochain1(G, 4, np.array(values))
        assert orbit_weight(phi)[0] == orbit_weight_all_gauges(G, 4, values)


@pytest.mark.parametrize("spec,n", [("C2", 7), ("C3", 6), ("A5", 5)])
def test_bnb_matches_exhaustive(backend, spec, n):
    G = build_group(spec)
    rng = np.random.default_rng(1)
    for _ in range(8 if G.order < 60 else 3):
        phi = random_cochain(G, n, rng)
        w = _backend.kernels.orbit_weight_exhaustive(phi.dense(), G.mul_table, G.inv_table)
        best, lower, exact, nodes = _backend.kernels.orbit_weight_bnb(
            phi.dense(), G.mul_table, G.inv_table, 10**7)
        assert exact and best == lower == w
        assert nodes > 0


def test_bnb_budget_status(backend):
    G = build_group("A5")
    phi = random_cochain(G, 7, np.random.default_rng(2))
    hi, lo, exact = orbit_weight_bounds(phi, budget=10)
    assert not exact and lo <= hi <= comb(7, 2)


@pytest.mark.parametrize("n,spec", [(4, "C2"), (4, "C3"), (5, "C2")])
def test_expansion_scan(backend, n, spec):
    r = verify_expansion_exhaustive(n, build_group(spec))
    assert r.cochains_checked == build_group(spec).order ** comb(n, 2)
    assert r.violations == 0


def test_search_identity_last(backend):
    # one free generator over C3: non-identity values come out first
    X = Complex2(3, [])
    sols = enumerate_cocycles(X, build_group("C3")).cocycles
    assert [int(s.values[-1]) for s in sols] == [1, 2, 0]


@pytest.mark.parametrize("spec", ["C2", "C3", "A5"])
def test_search_detection_vs_enumeration(backend, spec):
    G = build_group(spec)
    for seed in range(15):
        X = sample_complex(6, 0.55, seed)
        en = enumerate_cocycles(X, G, limit=10**5)
        if en.truncated:
            continue
        assert has_nontrivial_class(X, G).trivial == (len(en.cocycles) == 1)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="only one backend importable")
def test_backends_agree_exactly():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    rng = np.random.default_rng(5)
    for spec in ["C2", "C5", "A5"]:
        G = build_group(spec)
        mul, inv = G.mul_table, G.inv_table
        for _ in range(5):
            M = random_cochain(G, 6, rng).dense()
            if G.order ** 5 <= 10**5:
                assert py.orbit_weight_exhaustive(M, mul, inv) == cy.orbit_weight_exhaustive(M, mul, inv)
            # same node budget, same visiting order: same (possibly truncated) result
            a, b = py.orbit_weight_bnb(M, mul, inv, 3000), cy.orbit_weight_bnb(M, mul, inv, 3000)
            assert a == b
    for spec, n in [("C3", 4), ("C2", 5)]:
        G = build_group(spec)
        a = py.expansion_scan(n, G.mul_table, G.inv_table)
        b = cy.expansion_scan(n, G.mul_table, G.inv_table)
        assert a[:4] == b[:4]
        assert np.array_equal(np.asarray(a[4]), np.asarray(b[4]))
    # identical solution lists, in identical order
    from randcomplex.search import _problem
    G = build_group("C3")
    for seed in range(10):
        X = sample_complex(6, 0.4, seed)
        prob = _problem(X)
        args = (prob.nvars, prob.forced, prob.rels, prob.order, G.mul_table, G.inv_table, 500, False, 10**6)
        sa, sb = py.search_cocycles(*args), cy.search_cocycles(*args)
        assert np.array_equal(sa[0], sb[0]) and sa[1:] == sb[1:]


def test_env_var_forces_pure_python():
    import os
    import subprocess
    import sys
    env = dict(os.environ, RANDCOMPLEX_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import randcomplex; print(randcomplex.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
