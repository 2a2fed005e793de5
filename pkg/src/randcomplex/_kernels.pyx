# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled hot kernels; see ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, calloc, free

cnp.import_array()

ctypedef cnp.int16_t tab_t

COMPLETE, TRUNCATED, BUDGET = 0, 1, 2


def d1_support_count(M, mul):
    cdef int[:, ::1] m = np.ascontiguousarray(M, dtype=np.int32)
    cdef const tab_t[:, ::1] t = np.ascontiguousarray(mul, dtype=np.int16)
    cdef Py_ssize_t n = m.shape[0], i, j, k
    cdef long count = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if t[t[m[i, j], m[j, k]], m[k, i]] != 0:
                    count += 1
    return count


cdef long _weight_exhaustive(int n, int q, int[:, ::1] m, const tab_t[:, ::1] mul,
                             const tab_t[::1] inv, int* psi) nogil:
    cdef int u, v, w, pos
    cdef long best = n * n
    for v in range(n):
        psi[v] = 0
    while True:
        w = 0
        for u in range(n):
            for v in range(u + 1, n):
                if mul[mul[psi[u], m[u, v]], inv[psi[v]]] != 0:
                    w += 1
        if w < best:
            best = w
            if best == 0:
                return 0
        # mixed-radix increment over psi[1..n-1]
        pos = n - 1
        while pos >= 1:
            psi[pos] += 1
            if psi[pos] < q:
                break
            psi[pos] = 0
            pos -= 1
        if pos < 1:
            return best


def orbit_weight_exhaustive(M, mul, inv):
    cdef int[:, ::1] m = np.ascontiguousarray(M, dtype=np.int32)
    cdef const tab_t[:, ::1] t = np.ascontiguousarray(mul, dtype=np.int16)
    cdef const tab_t[::1] iv = np.ascontiguousarray(inv, dtype=np.int16)
    cdef int n = m.shape[0]
    cdef int q = iv.shape[0]
    cdef int* psi
    cdef long best
    if n < 2:
        return 0
    psi = <int*> malloc(n * sizeof(int))
    try:
        best = _weight_exhaustive(n, q, m, t, iv, psi)
    finally:
        free(psi)
    return best


cdef struct BnB:
    int n
    int q
    int* cnt        # n * q
    int* order_buf  # n * q scratch for child ordering
    long best
    long lower
    long nodes
    long budget


cdef int _maxrow(int* row, int q) nogil:
    cdef int g, b = 0
    for g in range(q):
        if row[g] > b:
            b = row[g]
    return b


cdef bint _bnb_visit(BnB* s, int t, long cost, int[:, ::1] m, const tab_t[:, ::1] mul) nogil:
    cdef int n = s.n, q = s.q
    cdef int v, g, i, j, key
    cdef long inc, rest, node_bound = cost
    cdef bint ok
    cdef int* row
    cdef int* buf
    if t == n:
        if cost < s.best:
            s.best = cost
        return True
    for v in range(t, n):
        node_bound += t - _maxrow(s.cnt + v * q, q)
    row = s.cnt + t * q
    buf = s.order_buf + t * q
    # children by descending agreement count (insertion sort, stable)
    for g in range(q):
        key = row[g]
        j = g
        while j > 0 and row[buf[j - 1]] < key:
            buf[j] = buf[j - 1]
            j -= 1
        buf[j] = g
    for i in range(q):
        g = buf[i]
        inc = t - row[g]
        if cost + inc >= s.best:
            break
        s.nodes += 1
        if s.nodes > s.budget:
            if node_bound < s.lower:
                s.lower = node_bound
            return False
        for v in range(t + 1, n):
            s.cnt[v * q + mul[g, m[t, v]]] += 1
        rest = 0
        for v in range(t + 1, n):
            rest += (t + 1) - _maxrow(s.cnt + v * q, q)
        ok = True
        if cost + inc + rest < s.best:
            ok = _bnb_visit(s, t + 1, cost + inc, m, mul)
        for v in range(t + 1, n):
            s.cnt[v * q + mul[g, m[t, v]]] -= 1
        if not ok:
            if node_bound < s.lower:
                s.lower = node_bound
            return False
    return True


def orbit_weight_bnb(M, mul, inv, budget):
    cdef int[:, ::1] m = np.ascontiguousarray(M, dtype=np.int32)
    cdef const tab_t[:, ::1] t = np.ascontiguousarray(mul, dtype=np.int16)
    cdef int n = m.shape[0]
    cdef int q = len(inv)
    cdef BnB s
    cdef int u, v
    cdef bint exact
    s.n = n
    s.q = q
    s.nodes = 0
    s.budget = budget
    s.best = 0
    for u in range(n):
        for v in range(u + 1, n):
            if m[u, v] != 0:
                s.best += 1
    s.lower = s.best
    if n < 2:
        return 0, 0, True, 0
    s.cnt = <int*> calloc(n * q, sizeof(int))
    s.order_buf = <int*> calloc(n * q, sizeof(int))
    try:
        for v in range(1, n):
            s.cnt[v * q + m[0, v]] += 1
        exact = _bnb_visit(&s, 1, 0, m, t)
    finally:
        free(s.cnt)
        free(s.order_buf)
    lower = s.best if exact else min(s.best, s.lower)
    return int(s.best), int(lower), bool(exact), int(s.nodes)


def expansion_scan(int n, mul, inv):
    cdef const tab_t[:, ::1] t = np.ascontiguousarray(mul, dtype=np.int16)
    cdef const tab_t[::1] iv = np.ascontiguousarray(inv, dtype=np.int16)
    cdef int q = iv.shape[0]
    cdef int P = n * (n - 1) // 2
    cdef long long count = 0, violations = 0
    cdef long best_d1 = 0, best_w = 0, b, w
    cdef bint have = False
    cdef int r, pos, i, j, k
    cdef cnp.ndarray[cnp.int32_t, ndim=2] Marr = np.zeros((n, n), dtype=np.int32)
    cdef int[:, ::1] m = Marr
    cdef int[::1] vals = np.zeros(P, dtype=np.int32)
    cdef int[::1] wit = np.zeros(P, dtype=np.int32)
    cdef int[::1] pu = np.zeros(P, dtype=np.int32)
    cdef int[::1] pv = np.zeros(P, dtype=np.int32)
    cdef int* psi = <int*> malloc(n * sizeof(int))
    r = 0
    for i in range(n):
        for j in range(i + 1, n):
            pu[r] = i
            pv[r] = j
            r += 1
    try:
        with nogil:
            while True:
                for r in range(P):
                    m[pu[r], pv[r]] = vals[r]
                    m[pv[r], pu[r]] = iv[vals[r]]
                b = 0
                for i in range(n):
                    for j in range(i + 1, n):
                        for k in range(j + 1, n):
                            if t[t[m[i, j], m[j, k]], m[k, i]] != 0:
                                b += 1
                w = _weight_exhaustive(n, q, m, t, iv, psi)
                count += 1
                if 3 * b < n * w:
                    violations += 1
                if w > 0 and (not have or b * best_w < best_d1 * w):
                    have = True
                    best_d1 = b
                    best_w = w
                    for r in range(P):
                        wit[r] = vals[r]
                pos = P - 1
                while pos >= 0:
                    vals[pos] += 1
                    if vals[pos] < q:
                        break
                    vals[pos] = 0
                    pos -= 1
                if pos < 0:
                    break
    finally:
        free(psi)
    witness = np.asarray(wit, dtype=np.int64) if have else None
    return int(count), int(violations), int(best_d1), int(best_w), witness


cdef struct Engine:
    int nvars
    int q
    int* val
    int* trail
    int trail_len
    int* inc_start   # CSR incidence: relations touching each variable
    int* inc_rel
    int* rels        # 3 per relation
    long nodes
    long props


cdef bint _propagate(Engine* e, int start, const tab_t[:, ::1] mul, const tab_t[::1] inv) nogil:
    cdef int i = start, v, k, r, a, b, c, xa, xb, xc, t, target, cur
    while i < e.trail_len:
        v = e.trail[i]
        i += 1
        for k in range(e.inc_start[v], e.inc_start[v + 1]):
            r = e.inc_rel[k]
            a = e.rels[3 * r]
            b = e.rels[3 * r + 1]
            c = e.rels[3 * r + 2]
            xa = e.val[a]
            xb = e.val[b]
            xc = e.val[c]
            if xa >= 0 and xb >= 0:
                t = mul[xa, xb]
                target = c
                cur = xc
            elif xa >= 0 and xc >= 0:
                t = mul[inv[xa], xc]
                target = b
                cur = xb
            elif xb >= 0 and xc >= 0:
                t = mul[xc, inv[xb]]
                target = a
                cur = xa
            else:
                continue
            if cur < 0:
                e.val[target] = t
                e.trail[e.trail_len] = target
                e.trail_len += 1
                e.props += 1
            elif cur != t:
                return False
    return True


cdef inline void _undo(Engine* e, int mark) nogil:
    while e.trail_len > mark:
        e.trail_len -= 1
        e.val[e.trail[e.trail_len]] = -1


def search_cocycles(int nvars, forced, rels, order, mul, inv, long limit, bint detect, long node_budget):
    cdef const tab_t[:, ::1] t = np.ascontiguousarray(mul, dtype=np.int16)
    cdef const tab_t[::1] iv = np.ascontiguousarray(inv, dtype=np.int16)
    cdef int q = iv.shape[0]
    cdef int[:, ::1] R = np.ascontiguousarray(np.asarray(rels, dtype=np.int32).reshape(-1, 3))
    cdef int[::1] ordv = np.ascontiguousarray(order, dtype=np.int32)
    cdef cnp.uint8_t[::1] forcedv = np.ascontiguousarray(forced, dtype=np.uint8)
    cdef int nrel = R.shape[0]
    cdef Engine e
    cdef int r, v, k, pos, g, depth, status = COMPLETE
    cdef bint ok
    cdef int* deg
    # decision stack: order position, next value slot, trail mark
    cdef int* st_pos
    cdef int* st_slot
    cdef int* st_mark
    cdef int nsol = 0
    solutions = []
    sol_buf = np.empty(nvars, dtype=np.int32)
    cdef int[::1] sol_view = sol_buf

    e.nvars = nvars
    e.q = q
    e.nodes = 0
    e.props = 0
    e.trail_len = 0
    e.val = <int*> malloc((nvars + 1) * sizeof(int))
    e.trail = <int*> malloc((nvars + 1) * sizeof(int))
    e.inc_start = <int*> calloc(nvars + 2, sizeof(int))
    e.inc_rel = <int*> malloc((3 * nrel + 1) * sizeof(int))
    e.rels = <int*> malloc((3 * nrel + 1) * sizeof(int))
    deg = <int*> calloc(nvars + 1, sizeof(int))
    st_pos = <int*> malloc((nvars + 1) * sizeof(int))
    st_slot = <int*> malloc((nvars + 1) * sizeof(int))
    st_mark = <int*> malloc((nvars + 1) * sizeof(int))
    try:
        for r in range(nrel):
            for k in range(3):
                e.rels[3 * r + k] = R[r, k]
                e.inc_start[R[r, k] + 1] += 1
        for v in range(nvars):
            e.inc_start[v + 1] += e.inc_start[v]
        for r in range(nrel):
            for k in range(3):
                v = R[r, k]
                e.inc_rel[e.inc_start[v] + deg[v]] = r
                deg[v] += 1
        for v in range(nvars):
            e.val[v] = -1
        for v in range(nvars):
            if forcedv[v]:
                e.val[v] = 0
                e.trail[e.trail_len] = v
                e.trail_len += 1
        if not _propagate(&e, 0, t, iv):
            return np.zeros((0, nvars), dtype=np.int32), COMPLETE, 0, int(e.props)

        depth = 0
        pos = 0
        while True:
            while pos < nvars and e.val[ordv[pos]] >= 0:
                pos += 1
            if pos == nvars:
                if nsol == limit:
                    status = TRUNCATED
                    break
                for v in range(nvars):
                    sol_view[v] = e.val[v]
                solutions.append(sol_buf.copy())
                nsol += 1
                if detect:
                    break
                ok = False
            else:
                st_pos[depth] = pos
                st_slot[depth] = 0
                st_mark[depth] = e.trail_len
                depth += 1
                ok = False
            # advance the top frame to its next consistent value, popping exhausted frames
            while depth > 0 and not ok:
                _undo(&e, st_mark[depth - 1])
                v = ordv[st_pos[depth - 1]]
                while st_slot[depth - 1] < q:
                    g = st_slot[depth - 1] + 1
                    if g == q:
                        g = 0  # identity last
                    st_slot[depth - 1] += 1
                    e.nodes += 1
                    if e.nodes > node_budget:
                        status = BUDGET
                        break
                    e.val[v] = g
                    e.trail[e.trail_len] = v
                    e.trail_len += 1
                    if _propagate(&e, e.trail_len - 1, t, iv):
                        ok = True
                        break
                    _undo(&e, st_mark[depth - 1])
                if status == BUDGET:
                    break
                if not ok:
                    depth -= 1
            if status == BUDGET or not ok:
                break
            pos = st_pos[depth - 1] + 1
    finally:
        free(e.val)
        free(e.trail)
        free(e.inc_start)
        free(e.inc_rel)
        free(e.rels)
        free(deg)
        free(st_pos)
        free(st_slot)
        free(st_mark)
    if solutions:
        sol = np.stack(solutions).astype(np.int32)
    else:
        sol = np.zeros((0, nvars), dtype=np.int32)
    return sol, status, int(e.nodes), int(e.props)
