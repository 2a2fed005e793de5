"""Small finite fields and projective actions used to realize the simple
groups of Lie type in the catalog as permutation groups."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, k
    raise ValueError(f"{q} is not a prime power")


def _poly_mulmod(a, b, f, p):
    # coefficient lists, lowest degree first; f monic of degree k
    k = len(f) - 1
    out = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for t in range(k + 1):
                out[d - k + t] = (out[d - k + t] - c * f[t]) % p
    return out[:k]


def _is_irreducible(f, p):
    k = len(f) - 1
    # a reducible polynomial of degree k has a monic factor of degree <= k//2
    for d in range(1, k // 2 + 1):
        for coeffs in product(range(p), repeat=d):
            g = list(coeffs) + [1]
            r = list(f)
            for top in range(len(r) - 1, d - 1, -1):
                c = r[top]
                if c:
                    for t in range(d + 1):
                        r[top - d + t] = (r[top - d + t] - c * g[t]) % p
            if not any(r[:d]):
                return False
    return True


class GF:
    """Arithmetic in GF(q) with elements encoded as integers 0..q-1.

    An element is the base-p digit string of its polynomial coefficients,
    so 0 and 1 are the additive and multiplicative identities.
    """

    def __init__(self, q: int):
        p, k = _factor_prime_power(q)
        self.q, self.p, self.k = q, p, k
        if k == 1:
            modulus = [0, 1]
        else:
            modulus = next(
                list(c) + [1]
                for c in product(range(p), repeat=k)
                if c[0] != 0 and _is_irreducible(list(c) + [1], p)
            )
        digits = [[(x // p**t) % p for t in range(k)] for x in range(q)]

        def encode(cs):
            return sum(c * p**t for t, c in enumerate(cs))

        self.add = np.array(
            [[encode([(a + b) % p for a, b in zip(x, y)]) for y in digits] for x in digits],
            dtype=np.int64,
        )
        self.neg = np.array([encode([(-a) % p for a in x]) for x in digits], dtype=np.int64)
        if k == 1:
            self.mul = np.array([[(x * y) % p for y in range(q)] for x in range(q)], dtype=np.int64)
        else:
            self.mul = np.array(
                [[encode(_poly_mulmod(x, y, modulus, p)) for y in digits] for x in digits],
                dtype=np.int64,
            )
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.nonzero(self.mul[x] == 1)[0][0])
        self.inv = inv

    def pow(self, x: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = int(self.mul[r, x])
        return r

    def basis(self) -> list[int]:
        """Additive basis over the prime field."""
        return [self.p**t for t in range(self.k)]


def _normalize(F: GF, v: tuple[int, ...]) -> tuple[int, ...]:
    lead = next(x for x in v if x)
    s = int(F.inv[lead])
    return tuple(int(F.mul[s, x]) for x in v)


def projective_points(F: GF, d: int) -> list[tuple[int, ...]]:
    pts = set()
    for v in product(range(F.q), repeat=d):
        if any(v):
            pts.add(_normalize(F, v))
    return sorted(pts)


def _vec_mat(F: GF, v, M) -> tuple[int, ...]:
    d = len(v)
    out = []
    for j in range(d):
        s = 0
        for i in range(d):
            s = int(F.add[s, F.mul[v[i], M[i][j]]])
        out.append(s)
    return tuple(out)


def matrix_permutation(F: GF, M, points) -> tuple[int, ...]:
    """Permutation of ``points`` induced by v -> vM (projectively)."""
    where = {pt: i for i, pt in enumerate(points)}
    return tuple(where[_normalize(F, _vec_mat(F, pt, M))] for pt in points)


def transvection(d: int, i: int, j: int, a: int):
    M = [[int(r == c) for c in range(d)] for r in range(d)]
    M[i][j] = a
    return M


@lru_cache(maxsize=None)
def psl_generators(d: int, q: int) -> tuple[int, list[tuple[int, ...]]]:
    """Permutation generators of PSL(d, q) acting on the points of PG(d-1, q)."""
    F = GF(q)
    points = projective_points(F, d)
    gens = []
    for i in range(d):
        for j in range(d):
            if i != j:
                for a in F.basis():
                    gens.append(matrix_permutation(F, transvection(d, i, j, a), points))
    return len(points), gens


@lru_cache(maxsize=None)
def psu3_generators(r: int) -> tuple[int, list[tuple[int, ...]]]:
    """Permutation generators of PSU(3, r) acting on isotropic points.

    The Hermitian form is x1*y3^r + x2*y2^r + x3*y1^r over GF(r^2); the
    group is generated by its upper and lower unitriangular elements.
    """
    F = GF(r * r)

    def bar(x):
        return F.pow(x, r)

    def herm(x, y):
        s = 0
        for a, b in zip(x, reversed(y)):
            s = int(F.add[s, F.mul[a, bar(b)]])
        return s

    points = [v for v in projective_points(F, 3) if herm(v, v) == 0]
    unit = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def unitary(M):
        rows = [tuple(row) for row in M]
        return all(herm(_vec_mat(F, e, rows), _vec_mat(F, f, rows)) == herm(e, f) for e in unit for f in unit)

    gens = []
    for a, b, c in product(range(F.q), repeat=3):
        if (a, b, c) == (0, 0, 0):
            continue
        upper = [[1, a, b], [0, 1, c], [0, 0, 1]]
        lower = [[1, 0, 0], [a, 1, 0], [b, c, 1]]
        for M in (upper, lower):
            if unitary(M):
                gens.append(matrix_permutation(F, M, points))
    return len(points), gens
