"""Checks of the simplex expansion inequality |B(phi)| >= n * ||[phi]|| / 3."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import comb
from typing import Optional

import numpy as np

from . import _backend
from .cochain import (
    DEFAULT_GAUGE_BUDGET,
    Cochain1,
    act,
    d1_norm,
    orbit_weight_bounds,
    random_cochain,
    support_size,
    vertex_gauge,
)
from .complex import derive_seed
from .groups import FiniteGroup
from .search import InfeasibleError

EXHAUSTIVE_LIMIT = 10**7


@dataclass
class ExpansionReport:
    n: int
    group: str
    mode: str
    cochains_checked: int = 0
    violations: int = 0
    inconclusive: int = 0
    identity_failures: int = 0
    min_ratio: Optional[Fraction] = None
    witness: Optional[Cochain1] = None

    @property
    def bound(self) -> Fraction:
        return Fraction(self.n, 3)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "group": self.group,
            "mode": self.mode,
            "cochains_checked": self.cochains_checked,
            "violations": self.violations,
            "inconclusive": self.inconclusive,
            "identity_failures": self.identity_failures,
            "bound": float(self.bound),
            "min_ratio": None if self.min_ratio is None else float(self.min_ratio),
            "min_ratio_exact": None if self.min_ratio is None else str(self.min_ratio),
            "witness": None if self.witness is None else [list(t) for t in self.witness.items()],
        }


def verify_expansion_exhaustive(n: int, G: FiniteGroup) -> ExpansionReport:
    """Check the inequality for every cochain on the n-simplex, with exact
    orbit weights, and record the smallest ratio |B(phi)| / ||[phi]||."""
    total = G.order ** comb(n, 2)
    if n < 2 or total > EXHAUSTIVE_LIMIT:
        raise InfeasibleError(f"{G.name}^C({n},2) = {total} cochains exceeds {EXHAUSTIVE_LIMIT}")
    count, violations, b, w, witness = _backend.kernels.expansion_scan(n, G.mul_table, G.inv_table)
    report = ExpansionReport(n, G.name, "exhaustive", count, violations)
    if witness is not None:
        report.min_ratio = Fraction(b, w)
        report.witness = Cochain1(G, n, witness)
    return report


def ordered_bad_triples(phi: Cochain1) -> int:
    """Ordered triples (u, v, w) of distinct vertices with d1 phi != 1."""
    M = phi.dense()
    mul = phi.group.mul_table
    t = np.array(list(permutations(range(phi.n), 3)))
    u, v, w = t[:, 0], t[:, 1], t[:, 2]
    return int(np.count_nonzero(mul[mul[M[u, v], M[v, w]], M[w, u]]))


def vertex_gauge_total(phi: Cochain1) -> int:
    """Sum over u of ||phi_u . phi||."""
    return sum(support_size(act(vertex_gauge(phi, u), phi)) for u in range(1, phi.n + 1))


def verify_expansion_sampled(n: int, G: FiniteGroup, trials: int, seed: int,
                             budget: int = DEFAULT_GAUGE_BUDGET,
                             check_identities: bool = True) -> ExpansionReport:
    """Check the inequality on uniformly random cochains.

    Orbit weights come from exhaustive gauge search when it fits in
    ``budget`` and from branch and bound otherwise.  A cut-off search gives
    bounds lo <= ||[phi]|| <= hi: the trial passes if 3|B| >= n*hi, is a
    violation if 3|B| < n*lo, and is counted inconclusive in between.
    ``min_ratio`` is taken over trials with exact weights.

    With ``check_identities`` every trial also checks the double count
    (ordered bad triples == 6|B|, sum_u ||phi_u.phi|| == 3|B|) and
    sum_u ||phi_u.phi|| >= n * lo.
    """
    report = ExpansionReport(n, G.name, "sampled")
    for t in range(trials):
        rng = np.random.default_rng(derive_seed(seed, t))
        phi = random_cochain(G, n, rng)
        b = d1_norm(phi)
        hi, lo, exact = orbit_weight_bounds(phi, budget)
        report.cochains_checked += 1
        if 3 * b >= n * hi:
            pass
        elif 3 * b < n * lo:
            report.violations += 1
        else:
            report.inconclusive += 1
        if exact and hi > 0:
            r = Fraction(b, hi)
            if report.min_ratio is None or r < report.min_ratio:
                report.min_ratio = r
                report.witness = phi
        if check_identities:
            total = vertex_gauge_total(phi)
            if ordered_bad_triples(phi) != 6 * b or total != 3 * b or total < n * lo:
                report.identity_failures += 1
    return report


def check_gauge_identity(phi: Cochain1, u: int) -> bool:
    """d1 phi(u, v, w) == (phi_u . phi)(v, w) for all distinct v, w != u."""
    n = phi.n
    mul = phi.group.mul_table
    M = phi.dense()
    i = u - 1
    # d1 phi(u, v, w) = phi(u, v) phi(v, w) phi(w, u), for every (v, w)
    lhs = mul[mul[M[i, :, None], M], M[None, :, i]]
    rhs = act(vertex_gauge(phi, u), phi).dense()
    mask = ~np.eye(n, dtype=bool)
    mask[i, :] = False
    mask[:, i] = False
    return bool(np.array_equal(lhs[mask], rhs[mask]))
