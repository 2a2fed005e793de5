"""Brute-force reference computations, independent of the search engine
and of the gauge-fixed / branch-and-bound weight code."""

from itertools import combinations, product

import numpy as np


def orbit_weight_all_gauges(G, n, values):
    """min over ALL |G|^n gauges (no basepoint fixing) of the support size."""
    mul, inv = G.mul_table, G.inv_table
    pairs = list(combinations(range(n), 2))
    best = None
    for psi in product(range(G.order), repeat=n):
        w = 0
        for r, (u, v) in enumerate(pairs):
            if mul[mul[psi[u], values[r]], inv[psi[v]]] != 0:
                w += 1
        best = w if best is None else min(best, w)
    return best


def relation_solutions(X, q):
    """Assignments e_ij in Z/q (2 <= i < j <= n) satisfying the presentation
    relations of X, by brute force with modular arithmetic."""
    n = X.n
    gens = [(i, j) for i in range(2, n + 1) for j in range(i + 1, n + 1)]
    tris = set(X.triangles)
    sols = []
    for vals in product(range(q), repeat=len(gens)):
        e = dict(zip(gens, vals))
        ok = True
        for i, j, k in tris:
            if i == 1:
                ok = e[(j, k)] == 0
            else:
                # e_ij e_jk e_ki = 1 with e_ki = e_ik^-1
                ok = (e[(i, j)] + e[(j, k)] - e[(i, k)]) % q == 0
            if not ok:
                break
        if ok:
            sols.append(vals)
    return sols


def conjugation_orbits(G, sols):
    """Orbit count by explicit orbit marking (not Burnside)."""
    mul, inv = G.mul_table, G.inv_table
    index = {tuple(s): i for i, s in enumerate(sols)}
    seen = [False] * len(sols)
    orbits = 0
    for i, s in enumerate(sols):
        if seen[i]:
            continue
        orbits += 1
        for g in range(G.order):
            t = tuple(int(mul[mul[g, x], inv[g]]) for x in s)
            seen[index[t]] = True
    return orbits


def d1_norm_bruteforce(G, n, values):
    mul, inv = G.mul_table, G.inv_table
    pairs = list(combinations(range(n), 2))
    val = {}
    for r, (u, v) in enumerate(pairs):
        val[(u, v)] = values[r]
        val[(v, u)] = inv[values[r]]
    return sum(
        1 for u, v, w in combinations(range(n), 3)
        if mul[mul[val[(u, v)], val[(v, w)]], val[(w, u)]] != 0
    )


def random_complex_triangles(n, rng, p=0.5):
    return tuple(t for t in combinations(range(1, n + 1), 3) if rng.random() < p)
