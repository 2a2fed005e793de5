"""Homomorphisms from pi_1(X) to a finite group, as star-fixed cocycles.

With vertex 1 as basepoint, pi_1(X) is generated by e_ij (2 <= i < j <= n)
subject to e_ij = 1 when (1, i, j) is a triangle and e_ij e_jk = e_ik when
(i, j, k) is a triangle.  A homomorphism is the same thing as a cocycle
that is the identity on every edge at vertex 1 ("star-fixed"), and two
star-fixed cocycles lie in the same gauge orbit iff they differ by a
simultaneous conjugation.

Triviality lemma.  A star-fixed cocycle phi represents the trivial class
iff phi is identically 1.  If phi = psi.1 = d0 psi then for every j,
1 = phi(1, j) = psi(1) psi(j)^-1, so psi is constant and d0 psi = 1.
Hence H^1(X; G) is trivial iff the all-identity assignment is the only
star-fixed cocycle, which is what the search decides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional

import numpy as np

from . import _backend
from .cochain import Cochain1, act, vertex_gauge
from .complex import Complex2, pair_rank
from .groups import FiniteGroup, catalog_entries

DEFAULT_NODE_BUDGET = 10**8
COMPLETE, TRUNCATED, BUDGET = 0, 1, 2


class InfeasibleError(RuntimeError):
    """A computation would exceed its size or work budget."""


class SearchBudgetExceeded(InfeasibleError):
    """The cocycle search visited more nodes than its budget allows."""


class EnumerationTruncated(InfeasibleError):
    """More cocycles exist than the enumeration limit."""


@dataclass(frozen=True)
class Presentation:
    """Generators e_ij (2 <= i < j <= n) and the relations read off X."""

    n: int
    generators: tuple[tuple[int, int], ...]
    forced_trivial: frozenset
    triangle_relations: frozenset


def presentation(X: Complex2) -> Presentation:
    n = X.n
    gens = tuple((i, j) for i in range(2, n + 1) for j in range(i + 1, n + 1))
    forced = frozenset((j, k) for i, j, k in X.triangles if i == 1)
    rels = frozenset(t for t in X.triangles if t[0] >= 2)
    return Presentation(n, gens, forced, rels)


def _var(n: int, i: int, j: int) -> int:
    # search variable for the pair 2 <= i < j; pairs at vertex 1 come first in rank order
    return pair_rank(n, i, j) - (n - 1)


@dataclass(frozen=True)
class _Problem:
    nvars: int
    forced: np.ndarray
    rels: np.ndarray
    order: np.ndarray


def _problem(X: Complex2) -> _Problem:
    pres = presentation(X)
    n = pres.n
    nvars = comb(n - 1, 2)
    forced = np.zeros(nvars, dtype=np.uint8)
    for i, j in pres.forced_trivial:
        forced[_var(n, i, j)] = 1
    rels = np.array(
        [(_var(n, i, j), _var(n, j, k), _var(n, i, k)) for i, j, k in sorted(pres.triangle_relations)],
        dtype=np.int32,
    ).reshape(-1, 3)
    degree = np.bincount(rels.ravel(), minlength=nvars) if len(rels) else np.zeros(nvars, dtype=np.int64)
    # most-constrained pairs first; ties in lexicographic pair order (= variable index)
    order = np.lexsort((np.arange(nvars), -degree)).astype(np.int32)
    return _Problem(nvars, forced, rels, order)


def _run(X: Complex2, G: FiniteGroup, limit: int, detect: bool, node_budget: int):
    prob = _problem(X)
    return _backend.kernels.search_cocycles(
        prob.nvars, prob.forced, prob.rels, prob.order,
        G.mul_table, G.inv_table, limit, detect, node_budget,
    )


@dataclass
class _Peeling:
    order: list          # (variable, relation) in removal order
    free: np.ndarray     # unpinned variables left in no relation
    core_rels: np.ndarray


def _peel(prob: _Problem) -> _Peeling:
    """Repeatedly remove an unpinned variable lying in exactly one relation,
    together with that relation.

    Any assignment of the surviving variables extends uniquely to the peeled
    ones (each is solved from its relation, in reverse removal order), so
    solutions of the whole system are core solutions times free choices.
    """
    rels = prob.rels
    nvars = prob.nvars
    active = np.ones(len(rels), dtype=bool)
    incident: list[list[int]] = [[] for _ in range(nvars)]
    for r, (a, b, c) in enumerate(rels.tolist()):
        incident[a].append(r)
        incident[b].append(r)
        incident[c].append(r)
    deg = np.array([len(x) for x in incident], dtype=np.int64)
    pinned = prob.forced.astype(bool)
    peeled = np.zeros(nvars, dtype=bool)
    stack = [v for v in range(nvars) if deg[v] == 1 and not pinned[v]]
    order = []
    while stack:
        v = stack.pop()
        if deg[v] != 1 or peeled[v]:
            continue
        r = next(r for r in incident[v] if active[r])
        active[r] = False
        peeled[v] = True
        order.append((v, r))
        for w in rels[r].tolist():
            deg[w] -= 1
            if deg[w] == 1 and not pinned[w] and not peeled[w]:
                stack.append(w)
    free = np.nonzero((deg == 0) & ~pinned & ~peeled)[0]
    return _Peeling(order, free, rels[active])


def _back_substitute(G: FiniteGroup, rels: np.ndarray, order, values: np.ndarray) -> None:
    mul, inv = G.mul_table, G.inv_table
    for v, r in reversed(order):
        a, b, c = rels[r].tolist()
        if v == c:
            values[v] = mul[values[a], values[b]]
        elif v == b:
            values[v] = mul[inv[values[a]], values[c]]
        else:
            values[v] = mul[values[c], inv[values[b]]]


def _detect(X: Complex2, G: FiniteGroup, node_budget: int):
    """(assignment or None, nodes, propagations) for a non-trivial star-fixed cocycle."""
    prob = _problem(X)
    peel = _peel(prob)
    values = np.zeros(prob.nvars, dtype=np.int64)
    if len(peel.free):
        values[peel.free[0]] = 1
        _back_substitute(G, prob.rels, peel.order, values)
        return values, 0, 0
    core_vars = np.unique(np.concatenate([peel.core_rels.ravel(), np.nonzero(prob.forced)[0]]))
    if len(core_vars) == 0:
        return None, 0, 0
    index = np.full(prob.nvars, -1, dtype=np.int64)
    index[core_vars] = np.arange(len(core_vars))
    sub_rels = index[peel.core_rels].astype(np.int32).reshape(-1, 3)
    sub_forced = prob.forced[core_vars]
    # keep the global most-constrained-first order restricted to the core
    sub_order = index[prob.order[np.isin(prob.order, core_vars)]].astype(np.int32)
    sols, status, nodes, props = _backend.kernels.search_cocycles(
        len(core_vars), sub_forced, sub_rels, sub_order,
        G.mul_table, G.inv_table, 1, True, node_budget,
    )
    if status == BUDGET:
        raise SearchBudgetExceeded(f"{G.name}: search exceeded {node_budget} nodes")
    if not np.any(sols[0]):
        return None, nodes, props
    values[core_vars] = sols[0]
    _back_substitute(G, prob.rels, peel.order, values)
    return values, nodes, props


def _to_cochain(G: FiniteGroup, n: int, assignment) -> Cochain1:
    values = np.zeros(comb(n, 2), dtype=np.int64)
    values[n - 1:] = assignment
    return Cochain1(G, n, values)


def star_gauge_fix(phi: Cochain1) -> Cochain1:
    """The representative of [phi] that is the identity on every edge at vertex 1."""
    return act(vertex_gauge(phi, 1), phi)


def is_star_fixed(phi: Cochain1) -> bool:
    return not np.any(phi.values[: phi.n - 1])


@dataclass
class CocycleEnumeration:
    cocycles: list
    truncated: bool
    nodes: int
    propagations: int


def enumerate_cocycles(X: Complex2, G: FiniteGroup, limit: int = 10**6,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> CocycleEnumeration:
    """All star-fixed cocycles of X with values in G, at most ``limit`` of them."""
    if limit < 1:
        raise ValueError("limit must be positive")
    sols, status, nodes, props = _run(X, G, limit, False, node_budget)
    if status == BUDGET:
        raise SearchBudgetExceeded(f"enumeration exceeded {node_budget} nodes")
    return CocycleEnumeration([_to_cochain(G, X.n, s) for s in sols], status == TRUNCATED, nodes, props)


@dataclass
class CohomologyReport:
    group: str
    trivial: bool
    witness: Optional[Cochain1] = None
    nodes: int = 0
    propagations: int = 0

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "trivial": self.trivial,
            "witness": None if self.witness is None else [list(t) for t in self.witness.items()],
            "nodes": self.nodes,
            "propagations": self.propagations,
        }


def has_nontrivial_class(X: Complex2, G: FiniteGroup,
                         node_budget: int = DEFAULT_NODE_BUDGET) -> CohomologyReport:
    """Decide whether H^1(X; G) has a class other than [1].

    Runs the search in detection mode: it stops at the first solution,
    which is non-trivial whenever a non-trivial one exists (values are
    tried identity-last).  Raises SearchBudgetExceeded when undecided.
    """
    values, nodes, props = _detect(X, G, node_budget)
    if values is None:
        return CohomologyReport(G.name, True, None, nodes, props)
    return CohomologyReport(G.name, False, _to_cochain(G, X.n, values), nodes, props)


def conjugation_orbit_count(G: FiniteGroup, assignments: np.ndarray) -> int:
    """Orbits of rows under simultaneous conjugation, by Burnside's lemma."""
    S = np.asarray(assignments, dtype=np.int64)
    if S.shape[0] == 0:
        return 0
    fixed = 0
    for g in range(G.order):
        conj = G.mul_table[G.mul_table[g, S], G.inv_table[g]]
        fixed += int(np.count_nonzero(np.all(conj == S, axis=1)))
    assert fixed % G.order == 0
    return fixed // G.order


def count_hom_orbits(X: Complex2, G: FiniteGroup, limit: int = 10**6) -> int:
    """|H^1(X; G)| = |Hom(pi_1(X), G) / G|.  Refuses to answer if the
    enumeration is cut off by ``limit``."""
    sols, status, _, _ = _run(X, G, limit, False, DEFAULT_NODE_BUDGET)
    if status == BUDGET:
        raise SearchBudgetExceeded("enumeration exceeded the node budget")
    if status == TRUNCATED:
        raise EnumerationTruncated(f"more than {limit} star-fixed cocycles")
    return conjugation_orbit_count(G, sols)


def has_small_quotient(X: Complex2, N: int,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> Optional[CohomologyReport]:
    """First simple group G of order <= N (in catalog order) with a
    non-trivial class in H^1(X; G), or None.

    A non-None result means pi_1(X) has a non-trivial normal subgroup of
    index at most N.
    """
    for entry in catalog_entries(N):
        report = has_nontrivial_class(X, entry.build(), node_budget)
        if not report.trivial:
            return report
    return None
