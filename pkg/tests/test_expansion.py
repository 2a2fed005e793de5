from fractions import Fraction

import numpy as np
import pytest

from randcomplex.cochain import Cochain1, d1_norm, orbit_weight, random_cochain
from randcomplex.expansion import (
    check_gauge_identity,
    ordered_bad_triples,
    verify_expansion_exhaustive,
    verify_expansion_sampled,
    vertex_gauge_total,
)
from randcomplex.groups import build_group
from randcomplex.search import InfeasibleError

C2, C3, A5 = build_group("C2"), build_group("C3"), build_group("A5")


def test_exhaustive_n4_c2():
    r = verify_expansion_exhaustive(4, C2)
    assert (r.cochains_checked, r.violations) == (64, 0)
    assert r.min_ratio == 2 and r.min_ratio >= r.bound == Fraction(4, 3)
    assert d1_norm(r.witness) == 2 and orbit_weight(r.witness)[0] == 1


@pytest.mark.parametrize("n,spec,count", [(5, "C2", 1024), (4, "C3", 729)])
def test_exhaustive_small(n, spec, count):
    r = verify_expansion_exhaustive(n, build_group(spec))
    assert r.cochains_checked == count and r.violations == 0
    assert r.min_ratio >= r.bound


def test_exhaustive_min_ratio_below_n_minus_2():
    # single-edge cochains give n - 2, but they are not always extremal
    assert verify_expansion_exhaustive(4, C3).min_ratio == Fraction(3, 2)
    assert verify_expansion_exhaustive(5, C2).min_ratio == Fraction(5, 3)


def test_exhaustive_refuses_large():
    with pytest.raises(InfeasibleError):
        verify_expansion_exhaustive(8, C2)
    with pytest.raises(InfeasibleError):
        verify_expansion_exhaustive(4, A5)


def test_sampled_zero_trials():
    r = verify_expansion_sampled(6, C2, 0, seed=1)
    assert r.cochains_checked == 0 and r.violations == 0 and r.min_ratio is None


def test_sampled_c2_n8():
    r = verify_expansion_sampled(8, C2, 500, seed=3)
    assert r.cochains_checked == 500
    assert r.violations == r.inconclusive == r.identity_failures == 0
    assert r.min_ratio >= r.bound


def test_sampled_a5_n6_branch_and_bound():
    r = verify_expansion_sampled(6, A5, 60, seed=4)
    assert r.violations == 0 and r.identity_failures == 0
    assert r.cochains_checked == 60


def test_sampled_is_deterministic():
    a = verify_expansion_sampled(6, C3, 40, seed=9).to_dict()
    b = verify_expansion_sampled(6, C3, 40, seed=9).to_dict()
    assert a == b


def test_tiny_budget_marks_inconclusive_not_violation():
    r = verify_expansion_sampled(7, A5, 20, seed=5, budget=5, check_identities=False)
    assert r.violations == 0
    assert r.inconclusive + (r.cochains_checked - r.inconclusive) == 20


@pytest.mark.parametrize("G", [C2, C3, A5], ids=["C2", "C3", "A5"])
def test_double_counts(G):
    rng = np.random.default_rng(0)
    for n in (4, 5, 7):
        for _ in range(10):
            phi = random_cochain(G, n, rng)
            b = d1_norm(phi)
            assert ordered_bad_triples(phi) == 6 * b
            assert vertex_gauge_total(phi) == 3 * b


def test_gauge_identity_examples():
    assert all(check_gauge_identity(Cochain1.identity(A5, 6), u) for u in range(1, 7))
    rng = np.random.default_rng(8)
    for G in (C2, A5):
        for _ in range(20):
            phi = random_cochain(G, 6, rng)
            assert all(check_gauge_identity(phi, u) for u in range(1, 7))


def test_report_dict():
    d = verify_expansion_exhaustive(4, C2).to_dict()
    assert d["cochains_checked"] == 64 and d["min_ratio"] == 2.0 and d["min_ratio_exact"] == "2"
    assert len(d["witness"]) == 1
