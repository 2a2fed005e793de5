"""Pure-Python implementations of the hot kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or ``RANDCOMPLEX_PURE_PYTHON`` is set.

Conventions shared by both backends:

* ``mul``/``inv`` are the group tables, identity at index 0;
* ``M`` is a dense (n, n) cochain matrix with ``M[v, u] = inv[M[u, v]]``;
* search status codes are ``COMPLETE``, ``TRUNCATED`` (hit ``limit``) and
  ``BUDGET`` (hit ``node_budget``).
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

COMPLETE, TRUNCATED, BUDGET = 0, 1, 2


def d1_support_count(M, mul) -> int:
    M = np.asarray(M)
    n = M.shape[0]
    mul = np.asarray(mul)
    if n < 3:
        return 0
    t = np.array(list(combinations(range(n), 3)))
    i, j, k = t[:, 0], t[:, 1], t[:, 2]
    vals = mul[mul[M[i, j], M[j, k]], M[k, i]]
    return int(np.count_nonzero(vals))


def _gauge_rows(q: int, n: int) -> np.ndarray:
    # all gauges with psi(0) = identity, as rows of length n
    grid = np.indices((q,) * (n - 1)).reshape(n - 1, -1).T
    return np.concatenate([np.zeros((len(grid), 1), dtype=grid.dtype), grid], axis=1)


def orbit_weight_exhaustive(M, mul, inv) -> int:
    M = np.asarray(M)
    mul = np.asarray(mul)
    inv = np.asarray(inv)
    n = M.shape[0]
    q = len(inv)
    if n < 2:
        return 0
    iu, iv = np.triu_indices(n, k=1)
    best = None
    rows_per_chunk = max(1, 2**20 // max(1, len(iu)))
    total = q ** (n - 1)
    for start in range(0, total, rows_per_chunk):
        idx = np.arange(start, min(total, start + rows_per_chunk))
        P = np.zeros((len(idx), n), dtype=np.int64)
        rem = idx
        for v in range(n - 1, 0, -1):
            P[:, v] = rem % q
            rem = rem // q
        vals = mul[mul[P[:, iu], M[iu, iv]], inv[P[:, iv]]]
        w = int(np.count_nonzero(vals, axis=1).min())
        best = w if best is None else min(best, w)
        if best == 0:
            break
    return best


def orbit_weight_bnb(M, mul, inv, budget):
    """Branch and bound over gauges psi(1..n-1), psi(0) fixed.

    Lower bound at a node: cost among assigned pairs plus, for each
    unassigned vertex v, the number of assigned u that cannot all agree on
    a single value of psi(v).  Returns (best, lower, exact, nodes).
    """
    M = np.asarray(M).tolist()
    mul = np.asarray(mul).tolist()
    q = len(inv)
    n = len(M)
    psi = [0] * n
    # cnt[v][g]: assigned u with psi(u) M[u][v] == g, i.e. psi(v) = g zeroes (u, v)
    cnt = [[0] * q for _ in range(n)]
    for v in range(1, n):
        cnt[v][M[0][v]] += 1
    best = sum(1 for u in range(n) for v in range(u + 1, n) if M[u][v] != 0)
    state = {"best": best, "nodes": 0, "lower": None}

    def rest_bound(t):
        # vertices t+1..n-1 unassigned, t+1 vertices assigned
        return sum((t + 1) - max(cnt[v]) for v in range(t + 1, n))

    def visit(t, cost):
        # vertices 0..t-1 assigned; choose psi(t)
        node_bound = cost + sum(t - max(cnt[v]) for v in range(t, n))
        if t == n:
            if cost < state["best"]:
                state["best"] = cost
            return True
        row = cnt[t]
        for g in sorted(range(q), key=lambda g: -row[g]):
            inc = t - row[g]
            if cost + inc >= state["best"]:
                break  # sorted by increment
            state["nodes"] += 1
            if state["nodes"] > budget:
                state["lower"] = node_bound if state["lower"] is None else min(state["lower"], node_bound)
                return False
            Mt = M[t]
            for v in range(t + 1, n):
                cnt[v][mul[g][Mt[v]]] += 1
            ok = True
            if cost + inc + rest_bound(t) < state["best"]:
                psi[t] = g
                ok = visit(t + 1, cost + inc)
            for v in range(t + 1, n):
                cnt[v][mul[g][Mt[v]]] -= 1
            if not ok:
                state["lower"] = node_bound if state["lower"] is None else min(state["lower"], node_bound)
                return False
        return True

    exact = visit(1, 0) if n > 1 else True
    best = state["best"]
    lower = best if exact else min(best, state["lower"])
    return best, lower, exact, state["nodes"]


def expansion_scan(n, mul, inv):
    """Scan every cochain on the n-simplex.

    Returns (count, violations, best_d1, best_w, witness) where best_d1 /
    best_w is the smallest ratio |B(phi)| / weight over weight > 0 and
    ``witness`` the pair values (rank order) of the first minimizer.
    """
    mul = np.asarray(mul)
    inv = np.asarray(inv)
    q = len(inv)
    iu, iv = np.triu_indices(n, k=1)
    P = len(iu)
    count = violations = 0
    best_d1 = best_w = 0
    witness = None
    M = np.zeros((n, n), dtype=np.int64)
    for code in range(q**P):
        vals = np.zeros(P, dtype=np.int64)
        rem = code
        for r in range(P - 1, -1, -1):
            vals[r] = rem % q
            rem //= q
        M[iu, iv] = vals
        M[iv, iu] = inv[vals]
        b = d1_support_count(M, mul)
        w = orbit_weight_exhaustive(M, mul, inv)
        count += 1
        if 3 * b < n * w:
            violations += 1
        if w > 0 and (witness is None or b * best_w < best_d1 * w):
            best_d1, best_w, witness = b, w, vals.copy()
    return count, violations, best_d1, best_w, witness


def search_cocycles(nvars, forced, rels, order, mul, inv, limit, detect, node_budget):
    """Backtracking over variable values with unit propagation.

    Each relation (a, b, c) reads x_a * x_b == x_c; once two of its
    variables are known the third is forced.  Values are tried
    non-identity first, so the first solution found is non-trivial
    whenever one exists.  In ``detect`` mode the search stops there.

    Returns (solutions, status, nodes, propagations).
    """
    mul = np.asarray(mul).tolist()
    inv = np.asarray(inv).tolist()
    rels = np.asarray(rels, dtype=np.int64).reshape(-1, 3).tolist()
    order = list(order)
    q = len(inv)
    values_order = list(range(1, q)) + [0]
    inc = [[] for _ in range(nvars)]
    for r, (a, b, c) in enumerate(rels):
        inc[a].append(r)
        if b != a:
            inc[b].append(r)
        if c != a and c != b:
            inc[c].append(r)
    val = [-1] * nvars
    trail: list[int] = []
    stats = {"nodes": 0, "props": 0}

    def propagate(start: int) -> bool:
        # trail[start:] holds freshly assigned variables not yet propagated
        i = start
        while i < len(trail):
            v = trail[i]
            i += 1
            for r in inc[v]:
                a, b, c = rels[r]
                xa, xb, xc = val[a], val[b], val[c]
                if xa >= 0 and xb >= 0:
                    t, target, cur = mul[xa][xb], c, xc
                elif xa >= 0 and xc >= 0:
                    t, target, cur = mul[inv[xa]][xc], b, xb
                elif xb >= 0 and xc >= 0:
                    t, target, cur = mul[xc][inv[xb]], a, xa
                else:
                    continue
                if cur < 0:
                    val[target] = t
                    trail.append(target)
                    stats["props"] += 1
                elif cur != t:
                    return False
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            val[trail.pop()] = -1

    for v in range(nvars):
        if forced[v] and val[v] < 0:
            val[v] = 0
            trail.append(v)
    if not propagate(0):
        return np.zeros((0, nvars), dtype=np.int32), COMPLETE, 0, stats["props"]

    solutions: list[list[int]] = []
    stack: list[list[int]] = []  # frames: [order position, next value slot, trail mark]
    status = COMPLETE

    def try_next(frame) -> bool:
        nonlocal status
        var = order[frame[0]]
        while frame[1] < q:
            g = values_order[frame[1]]
            frame[1] += 1
            stats["nodes"] += 1
            if stats["nodes"] > node_budget:
                status = BUDGET
                return False
            val[var] = g
            trail.append(var)
            if propagate(len(trail) - 1):
                return True
            undo(frame[2])
        return False

    def backtrack() -> bool:
        while stack:
            frame = stack[-1]
            undo(frame[2])
            if status == BUDGET:
                return False
            if try_next(frame):
                return True
            stack.pop()
        return False

    pos = 0
    while True:
        while pos < nvars and val[order[pos]] >= 0:
            pos += 1
        if pos == nvars:
            if len(solutions) == limit:
                status = TRUNCATED
                break
            solutions.append(list(val))
            if detect:
                break
            if not backtrack():
                break
            pos = stack[-1][0] + 1 if stack else 0
            continue
        frame = [pos, 0, len(trail)]
        stack.append(frame)
        if not try_next(frame):
            stack.pop()
            if status == BUDGET or not backtrack():
                break
        pos = stack[-1][0] + 1 if stack else 0
    sol = np.array(solutions, dtype=np.int32).reshape(-1, nvars)
    return sol, status, stats["nodes"], stats["props"]
