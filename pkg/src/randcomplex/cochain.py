"""Group-valued 0- and 1-cochains on the simplex with vertex set 1..n.

A 1-cochain stores one value per unordered pair, oriented from the smaller
vertex to the larger; reading the reversed pair returns the inverse, so
phi(u, v) = phi(v, u)^-1 holds by construction.

Two triple sets are in play and kept apart on purpose:

* ``coboundary_support`` and ``d1_norm`` range over every triple of the
  full simplex;
* ``is_cocycle`` only looks at the triangles of a given complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Mapping

import numpy as np

from . import _backend
from .complex import Complex2, all_triples, pair_rank
from .groups import FiniteGroup, build_group

DEFAULT_GAUGE_BUDGET = 10**7


@lru_cache(maxsize=32)
def _pairs(n: int) -> np.ndarray:
    """All pairs u < v of 1..n in rank order, shape (C(n,2), 2)."""
    iu = np.triu_indices(n, k=1)
    out = np.stack([iu[0] + 1, iu[1] + 1], axis=1).astype(np.int64)
    out.setflags(write=False)
    return out


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Cochain0:
    """A function from the vertices 1..n to group elements."""

    group: FiniteGroup
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))
        if self.values.ndim != 1 or len(self.values) < 1:
            raise ValueError("a 0-cochain needs one value per vertex")
        if self.values.min() < 0 or self.values.max() >= self.group.order:
            raise ValueError("0-cochain value out of range")

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, v: int) -> int:
        return int(self.values[v - 1])

    @classmethod
    def identity(cls, group: FiniteGroup, n: int) -> "Cochain0":
        return cls(group, np.zeros(n, dtype=np.int64))

    def __eq__(self, other):
        if not isinstance(other, Cochain0):
            return NotImplemented
        return self.group is other.group and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.group.name, self.values.tobytes()))


@dataclass(frozen=True, eq=False)
class Cochain1:
    """An antisymmetric function on ordered pairs of distinct vertices.

    ``values[pair_rank(n, u, v)]`` holds phi(u, v) for u < v.
    """

    group: FiniteGroup
    n: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))
        if self.n < 2 or self.values.shape != (comb(self.n, 2),):
            raise ValueError(f"expected {comb(self.n, 2)} pair values for n={self.n}")
        if len(self.values) and (self.values.min() < 0 or self.values.max() >= self.group.order):
            raise ValueError("1-cochain value out of range")

    def __call__(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("phi is only defined on distinct vertices")
        if u < v:
            return int(self.values[pair_rank(self.n, u, v)])
        return int(self.group.inv_table[self.values[pair_rank(self.n, v, u)]])

    @classmethod
    def identity(cls, group: FiniteGroup, n: int) -> "Cochain1":
        return cls(group, n, np.zeros(comb(n, 2), dtype=np.int64))

    @classmethod
    def from_pairs(cls, group: FiniteGroup, n: int, pairs: Mapping[tuple[int, int], int]) -> "Cochain1":
        """Build from {(u, v): g}; unlisted pairs are the identity.
        A pair given as (v, u) with v > u stores g^-1 on (u, v)."""
        values = np.zeros(comb(n, 2), dtype=np.int64)
        for (u, v), g in pairs.items():
            if u == v or not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"bad pair {(u, v)} for n={n}")
            if u > v:
                u, v, g = v, u, int(group.inv_table[g])
            values[pair_rank(n, u, v)] = g
        return cls(group, n, values)

    @classmethod
    def from_dense(cls, group: FiniteGroup, M: np.ndarray) -> "Cochain1":
        n = M.shape[0]
        iu = np.triu_indices(n, k=1)
        return cls(group, n, M[iu])

    def dense(self) -> np.ndarray:
        """(n, n) int32 matrix with M[u-1, v-1] = phi(u, v); diagonal is the identity."""
        n = self.n
        M = np.zeros((n, n), dtype=np.int32)
        iu = np.triu_indices(n, k=1)
        M[iu] = self.values
        M[iu[1], iu[0]] = self.group.inv_table[self.values]
        return M

    def items(self):
        """(u, v, g) for the non-identity pairs, u < v."""
        for (u, v), g in zip(_pairs(self.n).tolist(), self.values.tolist()):
            if g:
                yield u, v, g

    def __eq__(self, other):
        if not isinstance(other, Cochain1):
            return NotImplemented
        return self.group is other.group and self.n == other.n and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.group.name, self.n, self.values.tobytes()))

    def __repr__(self):
        return f"Cochain1({self.group.name}, n={self.n}, support={support_size(self)})"


def _same_group(a, b) -> None:
    if a.group is not b.group and a.group.name != b.group.name:
        raise ValueError(f"group mismatch: {a.group.name} vs {b.group.name}")


def d0(psi: Cochain0) -> Cochain1:
    """d0 psi (u, v) = psi(u) psi(v)^-1"""
    G = psi.group
    P = _pairs(psi.n)
    a = psi.values[P[:, 0] - 1]
    b = G.inv_table[psi.values[P[:, 1] - 1]]
    return Cochain1(G, psi.n, G.mul_table[a, b])


def d1(phi: Cochain1, u: int, v: int, w: int) -> int:
    """phi(u, v) phi(v, w) phi(w, u)"""
    if len({u, v, w}) != 3:
        raise ValueError("d1 needs three distinct vertices")
    mul = phi.group.mul_table
    return int(mul[mul[phi(u, v), phi(v, w)], phi(w, u)])


def _d1_all(phi: Cochain1, triples: np.ndarray) -> np.ndarray:
    """d1 on increasing triples (i, j, k): phi(i,j) phi(j,k) phi(i,k)^-1."""
    G = phi.group
    n = phi.n
    t = triples - 1
    # rank of (a, b), a < b, 0-based
    def rank(a, b):
        return a * (2 * n - a - 1) // 2 + (b - a - 1)

    x_ij = phi.values[rank(t[:, 0], t[:, 1])]
    x_jk = phi.values[rank(t[:, 1], t[:, 2])]
    x_ik = phi.values[rank(t[:, 0], t[:, 2])]
    return G.mul_table[G.mul_table[x_ij, x_jk], G.inv_table[x_ik]]


def coboundary_support(phi: Cochain1) -> set[tuple[int, int, int]]:
    """B(phi): the triples of the full simplex on which d1 phi is not the identity."""
    T = all_triples(phi.n)
    bad = _d1_all(phi, T) != 0
    return set(map(tuple, T[bad].tolist()))


def d1_norm(phi: Cochain1) -> int:
    """|B(phi)|, counted over all C(n,3) triples."""
    return int(np.count_nonzero(_d1_all(phi, all_triples(phi.n))))


def act(psi: Cochain0, phi: Cochain1) -> Cochain1:
    """Gauge action: (psi . phi)(u, v) = psi(u) phi(u, v) psi(v)^-1."""
    _same_group(psi, phi)
    if psi.n != phi.n:
        raise ValueError("vertex count mismatch")
    G = phi.group
    P = _pairs(phi.n)
    left = G.mul_table[psi.values[P[:, 0] - 1], phi.values]
    return Cochain1(G, phi.n, G.mul_table[left, G.inv_table[psi.values[P[:, 1] - 1]]])


def support_size(phi: Cochain1) -> int:
    """Number of pairs with a non-identity value."""
    return int(np.count_nonzero(phi.values))


def orbit_weight(phi: Cochain1, budget: int = DEFAULT_GAUGE_BUDGET) -> tuple[int, bool]:
    """Minimum support size over the gauge orbit of phi.

    The gauge at vertex 1 is fixed to the identity: multiplying every
    gauge value on the left by one element g conjugates each value of
    psi.phi by g, which leaves the support unchanged.  Exhaustive when the
    remaining |G|^(n-1) gauges fit in ``budget``, otherwise branch and
    bound; the flag is False only if that search was cut off.
    """
    best, _lower, exact = orbit_weight_bounds(phi, budget)
    return best, exact


def orbit_weight_bounds(phi: Cochain1, budget: int = DEFAULT_GAUGE_BUDGET) -> tuple[int, int, bool]:
    """(upper, lower, exact) bounds on the orbit weight; upper == lower when exact."""
    G = phi.group
    M = phi.dense()
    k = _backend.kernels
    if G.order ** (phi.n - 1) <= budget:
        w = k.orbit_weight_exhaustive(M, G.mul_table, G.inv_table)
        return w, w, True
    best, lower, exact, _nodes = k.orbit_weight_bnb(M, G.mul_table, G.inv_table, budget)
    return best, lower, exact


def is_cocycle(phi: Cochain1, X: Complex2) -> bool:
    """True iff d1 phi is the identity on every triangle of X."""
    if phi.n != X.n:
        raise ValueError(f"size mismatch: cochain n={phi.n}, complex n={X.n}")
    if not X.triangles:
        return True
    return not np.any(_d1_all(phi, X.triangle_array()))


def vertex_gauge(phi: Cochain1, u: int) -> Cochain0:
    """The 0-cochain that is the identity at u and phi(u, v) at v != u."""
    if not 1 <= u <= phi.n:
        raise ValueError(f"vertex {u} out of range")
    vals = [0 if v == u else phi(u, v) for v in range(1, phi.n + 1)]
    return Cochain0(phi.group, vals)


def random_cochain(group: FiniteGroup, n: int, rng: np.random.Generator) -> Cochain1:
    return Cochain1(group, n, rng.integers(0, group.order, size=comb(n, 2)))


def format_cochain(phi: Cochain1) -> str:
    lines = [f"n {phi.n} group {phi.group.name}"]
    lines += [f"{u} {v} {g}" for u, v, g in phi.items()]
    return "\n".join(lines) + "\n"


def parse_cochain(text: str, group: FiniteGroup | None = None) -> Cochain1:
    header = None
    pairs: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 4 or parts[0] != "n" or parts[2] != "group":
                raise ValueError(f"line {lineno}: expected header 'n <n> group <spec>'")
            header = (int(parts[1]), parts[3])
            continue
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'u v <element-index>'")
        u, v, g = map(int, parts)
        pairs[(u, v)] = g
    if header is None:
        raise ValueError("missing cochain header")
    n, spec = header
    G = group if group is not None else build_group(spec)
    return Cochain1.from_pairs(G, n, pairs)


def read_cochain(path, group: FiniteGroup | None = None) -> Cochain1:
    return parse_cochain(Path(path).read_text(), group)


def write_cochain(phi: Cochain1, path) -> None:
    Path(path).write_text(format_cochain(phi))
