"""2-complexes containing the complete graph on [n], and the Y(n, p) sampler.

Triangle inclusion is driven by a counter-based hash of (seed, triangle
rank), so a fixed seed couples samples at different p: raising p never
removes a triangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def splitmix64(x: int) -> int:
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def _splitmix64_array(x: np.ndarray) -> np.ndarray:
    z = x + np.uint64(_GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, *indices: int) -> int:
    """Deterministic child seed for (seed, i1, i2, ...)."""
    h = splitmix64(seed & MASK64)
    for i in indices:
        h = splitmix64(h ^ splitmix64(i & MASK64))
    return h


def triangle_uniforms(seed: int, ranks: np.ndarray) -> np.ndarray:
    """Uniform draws in [0, 1) attached to triangle ranks under ``seed``."""
    key = np.uint64(splitmix64(seed & MASK64))
    h = _splitmix64_array(np.asarray(ranks, dtype=np.uint64) ^ key)
    h = _splitmix64_array(h)
    return (h >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


@lru_cache(maxsize=16)
def all_triples(n: int) -> np.ndarray:
    """All increasing triples of 1..n in lexicographic (rank) order."""
    t = np.array(list(combinations(range(1, n + 1), 3)), dtype=np.int64).reshape(-1, 3)
    t.setflags(write=False)
    return t


def triple_rank(n: int, i: int, j: int, k: int) -> int:
    """Lexicographic rank of the increasing triple (i, j, k) among all triples of [n]."""
    # triples whose first entry is < i, then second < j, then third < k
    r = comb(n, 3) - comb(n - i + 1, 3)
    r += comb(n - i, 2) - comb(n - j + 1, 2)
    r += k - j - 1
    return r


def pair_rank(n: int, u: int, v: int) -> int:
    """Lexicographic rank of the pair u < v (1-based) among all pairs of [n]."""
    return (u - 1) * (2 * n - u) // 2 + (v - u - 1)


@dataclass(frozen=True, eq=False)
class Complex2:
    """A complex containing every vertex and edge of the simplex on
    ``1..n`` plus the listed triangles (increasing triples)."""

    n: int
    triangles: tuple[tuple[int, int, int], ...]
    _by_edge: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.n
        if n < 3:
            raise ValueError(f"need n >= 3, got {n}")
        tris = sorted(set(tuple(int(x) for x in t) for t in self.triangles))
        for i, j, k in tris:
            if not 1 <= i < j < k <= n:
                raise ValueError(f"invalid triangle {(i, j, k)} for n={n}")
        object.__setattr__(self, "triangles", tuple(tris))
        by_edge: dict[tuple[int, int], list[int]] = {}
        for i, j, k in tris:
            by_edge.setdefault((i, j), []).append(k)
            by_edge.setdefault((i, k), []).append(j)
            by_edge.setdefault((j, k), []).append(i)
        object.__setattr__(self, "_by_edge", {e: tuple(sorted(w)) for e, w in by_edge.items()})

    @classmethod
    def full(cls, n: int) -> "Complex2":
        return cls(n, tuple(map(tuple, all_triples(n))))

    @classmethod
    def skeleton(cls, n: int) -> "Complex2":
        return cls(n, ())

    def __eq__(self, other):
        if not isinstance(other, Complex2):
            return NotImplemented
        return self.n == other.n and self.triangles == other.triangles

    def __hash__(self):
        return hash((self.n, self.triangles))

    def __contains__(self, tri) -> bool:
        i, j, k = sorted(tri)
        return k in self._by_edge.get((i, j), ())

    def __len__(self) -> int:
        return len(self.triangles)

    def with_triangles(self, extra: Iterable[tuple[int, int, int]]) -> "Complex2":
        return Complex2(self.n, self.triangles + tuple(tuple(sorted(t)) for t in extra))

    def triangle_array(self) -> np.ndarray:
        return np.array(self.triangles, dtype=np.int64).reshape(-1, 3)


def sample_complex(n: int, p: float, seed: int) -> Complex2:
    """Draw Y(n, p): each of the C(n,3) triangles independently with probability p."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    triples = all_triples(n)
    u = triangle_uniforms(seed, np.arange(len(triples)))
    return Complex2(n, tuple(map(tuple, triples[u < p].tolist())))


def face_counts(X: Complex2) -> tuple[int, int, int]:
    return X.n, comb(X.n, 2), len(X.triangles)


def triangles_of_edge(X: Complex2, u: int, v: int) -> tuple[int, ...]:
    """All w such that {u, v, w} is a triangle of X."""
    if u == v:
        raise ValueError("edge endpoints must differ")
    for x in (u, v):
        if not 1 <= x <= X.n:
            raise ValueError(f"vertex {x} out of range 1..{X.n}")
    return X._by_edge.get((min(u, v), max(u, v)), ())


def format_complex(X: Complex2) -> str:
    lines = [f"n {X.n}"]
    lines += [f"{i} {j} {k}" for i, j, k in X.triangles]
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> Complex2:
    n = None
    tris = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected header 'n <n>'")
            n = int(parts[1])
            continue
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'i j k'")
        i, j, k = map(int, parts)
        if not i < j < k:
            raise ValueError(f"line {lineno}: triangle must be increasing")
        tris.append((i, j, k))
    if n is None:
        raise ValueError("missing header 'n <n>'")
    return Complex2(n, tuple(tris))


def read_complex(path) -> Complex2:
    return parse_complex(Path(path).read_text())


def write_complex(X: Complex2, path) -> None:
    Path(path).write_text(format_complex(X))
