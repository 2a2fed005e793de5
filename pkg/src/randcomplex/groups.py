"""Finite groups as dense multiplication tables, and the catalog of
nontrivial simple groups of small order.

Elements are integers ``0..order-1`` and ``0`` is always the identity.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _fields

MAX_ORDER = 10080
TABLE_DTYPE = np.int16


class GroupSpecError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``mul_table[a, b]`` is the index of ``a*b`` and ``inv_table[a]`` the
    index of ``a^-1``.  Permutation groups also keep ``perms``, where row
    ``a`` maps point ``x`` to ``perms[a, x]`` and ``a*b`` acts as ``a(b(x))``.
    """

    name: str
    mul_table: np.ndarray
    inv_table: np.ndarray
    perms: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.mul_table.setflags(write=False)
        self.inv_table.setflags(write=False)

    @property
    def order(self) -> int:
        return int(self.inv_table.shape[0])

    @property
    def abelian(self) -> bool:
        return bool(np.array_equal(self.mul_table, self.mul_table.T))

    def multiply(self, a: int, b: int) -> int:
        return multiply(self, a, b)

    def inverse(self, a: int) -> int:
        return inverse(self, a)

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1"""
        return int(self.mul_table[self.mul_table[g, x], self.inv_table[g]])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = int(self.mul_table[x, a])
            k += 1
        return k

    def index_of_permutation(self, perm: Sequence[int]) -> int:
        """Index of a permutation (0-based images) in a permutation group."""
        if self.perms is None:
            raise ValueError(f"{self.name} is not a permutation group")
        hits = np.nonzero((self.perms == np.asarray(perm)).all(axis=1))[0]
        if len(hits) == 0:
            raise ValueError("permutation is not an element of the group")
        return int(hits[0])

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __reduce__(self):
        # rebuild cheaply in worker processes for catalog groups
        if _CANONICAL.get(self.name) is self:
            return (build_group, (self.name,))
        return (FiniteGroup, (self.name, self.mul_table, self.inv_table, self.perms))

    @classmethod
    def from_permutations(cls, name: str, generators: Sequence[Sequence[int]]) -> "FiniteGroup":
        """Close a set of permutations (0-based image lists) under composition."""
        perms = _closure(generators)
        if len(perms) > MAX_ORDER:
            raise GroupSpecError(f"order {len(perms)} exceeds cap {MAX_ORDER}")
        E = np.array(perms, dtype=np.int64)
        mul = _permutation_table(E)
        inv = np.argmin(mul, axis=1).astype(TABLE_DTYPE)
        return cls(name, mul, inv, E)


def multiply(G: FiniteGroup, a: int, b: int) -> int:
    _check(G, a)
    _check(G, b)
    return int(G.mul_table[a, b])


def inverse(G: FiniteGroup, a: int) -> int:
    _check(G, a)
    return int(G.inv_table[a])


def _check(G: FiniteGroup, a: int) -> None:
    if not 0 <= a < G.order:
        raise IndexError(f"element {a} out of range for {G.name} (order {G.order})")


def _closure(generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    gens = [tuple(int(x) for x in g) for g in generators]
    degree = len(gens[0]) if gens else 1
    identity = tuple(range(degree))
    seen = {identity: 0}
    out = [identity]
    queue = deque([identity])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = tuple(a[x] for x in g)  # a after g
            if b not in seen:
                seen[b] = len(out)
                out.append(b)
                if len(out) > MAX_ORDER:
                    raise GroupSpecError(f"order exceeds cap {MAX_ORDER}")
                queue.append(b)
    return out


def _base_codes(E: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pick points whose images identify each element; return (base, codes)."""
    order, degree = E.shape
    base: list[int] = []
    codes = np.zeros(order, dtype=np.int64)
    for x in range(degree):
        if len(np.unique(codes)) == order:
            break
        base.append(x)
        codes = codes * degree + E[:, x]
    return np.array(base, dtype=np.int64), codes


def _permutation_table(E: np.ndarray) -> np.ndarray:
    order, degree = E.shape
    base, codes = _base_codes(E)
    sorter = np.argsort(codes)
    sorted_codes = codes[sorter]
    images = E[:, base]  # b(beta) for all b
    weights = degree ** np.arange(len(base) - 1, -1, -1, dtype=np.int64)
    table = np.empty((order, order), dtype=TABLE_DTYPE)
    for a in range(order):
        row_codes = E[a][images] @ weights
        table[a] = sorter[np.searchsorted(sorted_codes, row_codes)]
    return table


def _cycles_to_perm(degree: int, cycles: Sequence[Sequence[int]]) -> list[int]:
    """1-based cycle notation to a 0-based image list."""
    perm = list(range(degree))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            perm[x - 1] = cyc[(i + 1) % len(cyc)] - 1
    return perm


def _cyclic(q: int) -> FiniteGroup:
    r = np.arange(q)
    mul = ((r[:, None] + r[None, :]) % q).astype(TABLE_DTYPE)
    inv = ((-r) % q).astype(TABLE_DTYPE)
    return FiniteGroup(f"C{q}", mul, inv)


def _alternating(m: int) -> FiniteGroup:
    gens = [_cycles_to_perm(m, [(1, 2, k)]) for k in range(3, m + 1)]
    return FiniteGroup.from_permutations(f"A{m}", gens)


# Nonabelian simple groups of order <= MAX_ORDER, from the classification.
# Completeness of this list is trusted input; simplicity is checked.
_NONABELIAN = [
    (60, "A5"),
    (168, "PSL27"),
    (360, "A6"),
    (504, "PSL(2,8)"),
    (660, "PSL(2,11)"),
    (1092, "PSL(2,13)"),
    (2448, "PSL(2,17)"),
    (2520, "A7"),
    (3420, "PSL(2,19)"),
    (4080, "PSL(2,16)"),
    (5616, "PSL(3,3)"),
    (6048, "PSU(3,3)"),
    (6072, "PSL(2,23)"),
    (7800, "PSL(2,25)"),
    (7920, "M11"),
    (9828, "PSL(2,27)"),
]
_EXPECTED_ORDER = {name: order for order, name in _NONABELIAN}

_M11_GENERATORS = [
    [(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11)],
    [(3, 7, 11, 8), (4, 10, 5, 6)],
]

_SPEC = re.compile(r"^(?:C(\d+)|A(\d+)|PSL27|PSL\((\d+),(\d+)\)|PSU\(3,(\d+)\)|M11)$")
_CANONICAL: dict[str, FiniteGroup] = {}


def parse_group_spec(spec: str) -> str:
    """Validate a group spec and return its canonical name."""
    s = spec.strip().replace(" ", "")
    m = _SPEC.match(s)
    if not m:
        raise GroupSpecError(f"malformed group spec {spec!r}")
    cyc, alt, d, q, u = m.groups()
    if cyc is not None:
        order = int(cyc)
        if order < 2:
            raise GroupSpecError(f"cyclic group must be nontrivial, got {spec!r}")
        if order > MAX_ORDER:
            raise GroupSpecError(f"order {order} exceeds cap {MAX_ORDER}")
        return f"C{order}"
    if alt is not None:
        m_ = int(alt)
        if not 3 <= m_ <= 7:
            raise GroupSpecError(f"alternating degree must be in 3..7, got {spec!r}")
        return f"A{m_}"
    if d is not None:
        name = "PSL27" if (d, q) in {("2", "7"), ("3", "2")} else f"PSL({d},{q})"
        if name not in _EXPECTED_ORDER:
            raise GroupSpecError(f"{spec!r} is not in the supported catalog")
        return name
    if u is not None and f"PSU(3,{u})" not in _EXPECTED_ORDER:
        raise GroupSpecError(f"{spec!r} is not in the supported catalog")
    return s


def build_group(spec: str) -> FiniteGroup:
    """Build a group from a spec such as ``"C5"``, ``"A5"`` or ``"PSL27"``.

    Catalog members beyond the basic grammar are also accepted:
    ``PSL(2,q)``, ``PSL(3,3)``, ``PSU(3,3)`` and ``M11``.  Groups are cached,
    so repeated calls return the same object.
    """
    return _build(parse_group_spec(spec))


@lru_cache(maxsize=None)
def _build(name: str) -> FiniteGroup:
    if name.startswith("C"):
        G = _cyclic(int(name[1:]))
    elif name.startswith("A"):
        G = _alternating(int(name[1:]))
    elif name == "M11":
        gens = [_cycles_to_perm(11, c) for c in _M11_GENERATORS]
        G = FiniteGroup.from_permutations(name, gens)
    elif name.startswith("PSU"):
        _, gens = _fields.psu3_generators(int(name[6:-1]))
        G = FiniteGroup.from_permutations(name, gens)
    else:
        d, q = (3, 2) if name == "PSL27" else map(int, name[4:-1].split(","))
        _, gens = _fields.psl_generators(d, q)
        G = FiniteGroup.from_permutations(name, gens)
    expected = _EXPECTED_ORDER.get(name)
    if expected is not None and G.order != expected:
        raise RuntimeError(f"{name}: built order {G.order}, expected {expected}")
    _CANONICAL[name] = G
    return G


def subgroup_closure(G: FiniteGroup, generators) -> np.ndarray:
    """Sorted element indices of the subgroup generated by ``generators``."""
    gens = np.unique(np.asarray(generators, dtype=np.int64))
    member = np.zeros(G.order, dtype=bool)
    member[0] = True
    frontier = np.array([0], dtype=np.int64)
    mul = G.mul_table
    while len(frontier):
        products = np.unique(mul[np.ix_(frontier, gens)])
        new = products[~member[products]]
        member[new] = True
        frontier = new.astype(np.int64)
        if member.all():
            break
    return np.nonzero(member)[0]


def conjugacy_class(G: FiniteGroup, x: int) -> np.ndarray:
    return np.unique(G.mul_table[G.mul_table[:, x], G.inv_table])


def conjugacy_classes(G: FiniteGroup) -> list[np.ndarray]:
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if not seen[x]:
            cls = conjugacy_class(G, x)
            seen[cls] = True
            classes.append(cls)
    return classes


def is_simple(G: FiniteGroup) -> bool:
    """True iff G is nontrivial and every non-identity conjugacy class
    generates G (so the only normal subgroups are 1 and G)."""
    if G.order < 2:
        return False
    if G.abelian:
        # every subgroup is normal, so simple iff the order is prime
        return all(G.order % d for d in range(2, int(G.order**0.5) + 1))
    for cls in conjugacy_classes(G)[1:]:
        if len(subgroup_closure(G, cls)) != G.order:
            return False
    return True


@lru_cache(maxsize=None)
def _verified_simple(name: str) -> bool:
    return is_simple(_build(name))


def _primes_upto(N: int) -> list[int]:
    sieve = np.ones(N + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(N**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    order: int
    abelian: bool

    def build(self) -> FiniteGroup:
        return _build(self.name)


def catalog_entries(N: int) -> list[CatalogEntry]:
    """Names and orders of all nontrivial simple groups of order <= N,
    without building their tables."""
    if not 2 <= N <= MAX_ORDER:
        raise ValueError(f"N must be in 2..{MAX_ORDER}, got {N}")
    entries = [CatalogEntry(f"C{p}", p, True) for p in _primes_upto(N)]
    entries += [CatalogEntry(name, order, False) for order, name in _NONABELIAN if order <= N]
    entries.sort(key=lambda e: (e.order, e.name))
    return entries


def simple_group_catalog(N: int, verify: bool = True) -> list[FiniteGroup]:
    """Every nontrivial simple group of order <= N, ordered by order.

    With ``verify`` each member's simplicity is checked (once per process).
    """
    groups = []
    for entry in catalog_entries(N):
        G = entry.build()
        if verify and not _verified_simple(entry.name):
            raise RuntimeError(f"catalog member {entry.name} failed the simplicity check")
        groups.append(G)
    return groups
