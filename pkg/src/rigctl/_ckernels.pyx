# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``rigctl._pykernels``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from libc.stdint cimport uint64_t

NAME = "cython"

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef struct Net:
    int n
    int m
    int d
    int* eu
    int* ev
    int* inc_start
    int* inc
    int* load
    int* parent
    int* queue
    int* mark
    int stamp


cdef int _net_alloc(Net* net, int n, int m, int d) except -1:
    net.n = n
    net.m = m
    net.d = d
    net.eu = <int*>malloc(max(m, 1) * sizeof(int))
    net.ev = <int*>malloc(max(m, 1) * sizeof(int))
    net.inc_start = <int*>malloc((n + 1) * sizeof(int))
    net.inc = <int*>malloc(max(2 * m, 1) * sizeof(int))
    net.load = <int*>malloc(max(n, 1) * sizeof(int))
    net.parent = <int*>malloc(max(n, 1) * sizeof(int))
    net.queue = <int*>malloc(max(n, 1) * sizeof(int))
    net.mark = <int*>malloc(max(n, 1) * sizeof(int))
    if (net.eu == NULL or net.ev == NULL or net.inc_start == NULL or net.inc == NULL
            or net.load == NULL or net.parent == NULL or net.queue == NULL or net.mark == NULL):
        _net_free(net)
        raise MemoryError()
    net.stamp = 0
    for i in range(n):
        net.mark[i] = 0
    return 0


cdef void _net_free(Net* net):
    free(net.eu)
    free(net.ev)
    free(net.inc_start)
    free(net.inc)
    free(net.load)
    free(net.parent)
    free(net.queue)
    free(net.mark)


cdef void _build_incidence(Net* net):
    cdef int i, f, n = net.n, m = net.m
    for i in range(n + 1):
        net.inc_start[i] = 0
    for f in range(m):
        net.inc_start[net.eu[f] + 1] += 1
        net.inc_start[net.ev[f] + 1] += 1
    for i in range(n):
        net.inc_start[i + 1] += net.inc_start[i]
    for i in range(n):
        net.load[i] = net.inc_start[i]
    for f in range(m):
        net.inc[net.load[net.eu[f]]] = f
        net.load[net.eu[f]] += 1
        net.inc[net.load[net.ev[f]]] = f
        net.load[net.ev[f]] += 1


cdef bint _augment(Net* net, int e, char* forced, int* assign):
    cdef int head = 0, tail = 0, w, x, f, k, prev, s, j
    cdef int d = net.d
    net.stamp += 1
    s = net.stamp
    for j in range(2):
        w = net.eu[e] if j == 0 else net.ev[e]
        if not forced[w] and net.mark[w] != s:
            net.mark[w] = s
            net.parent[w] = e
            net.queue[tail] = w
            tail += 1
    while head < tail:
        w = net.queue[head]
        head += 1
        if net.load[w] < d:
            net.load[w] += 1
            x = w
            f = net.parent[x]
            while True:
                prev = assign[f]
                assign[f] = x
                if f == e:
                    return True
                x = prev
                f = net.parent[x]
        for k in range(net.inc_start[w], net.inc_start[w + 1]):
            f = net.inc[k]
            if assign[f] != w:
                continue
            x = net.ev[f] if net.eu[f] == w else net.eu[f]
            if not forced[x] and net.mark[x] != s:
                net.mark[x] = s
                net.parent[x] = f
                net.queue[tail] = x
                tail += 1
    return False


cdef int _route(Net* net, char* forced, int* assign):
    cdef int f, a, unrouted = 0
    for f in range(net.n):
        net.load[f] = 0
    for f in range(net.m):
        a = assign[f]
        if a >= 0:
            if forced[a]:
                assign[f] = -1
            else:
                net.load[a] += 1
    for f in range(net.m):
        if assign[f] < 0 and not _augment(net, f, forced, assign):
            unrouted += 1
    return unrouted


cdef int _fill(Net* net, eu, ev, extra_u, extra_v) except -1:
    cdef int f, m0 = len(eu)
    for f in range(m0):
        net.eu[f] = eu[f]
        net.ev[f] = ev[f]
    if extra_u >= 0:
        net.eu[m0] = extra_u
        net.ev[m0] = extra_v
    _build_incidence(net)
    return 0


def route(int n, eu, ev, int d, forced, list assign):
    cdef int m = len(eu), f, w, x, head = 0, tail = 0, unrouted, k
    cdef Net net
    cdef char* cforced = <char*>malloc(max(n, 1))
    cdef int* cassign = <int*>malloc(max(m, 1) * sizeof(int))
    cdef char* reach = <char*>malloc(max(n, 1))
    if cforced == NULL or cassign == NULL or reach == NULL:
        free(cforced); free(cassign); free(reach)
        raise MemoryError()
    try:
        _net_alloc(&net, n, m, d)
        try:
            _fill(&net, eu, ev, -1, -1)
            for w in range(n):
                cforced[w] = 1 if forced[w] else 0
            for f in range(m):
                cassign[f] = assign[f]
            unrouted = _route(&net, cforced, cassign)
            for w in range(n):
                reach[w] = 0
                if not cforced[w] and net.load[w] < d:
                    reach[w] = 1
                    net.queue[tail] = w
                    tail += 1
            while head < tail:
                x = net.queue[head]
                head += 1
                for k in range(net.inc_start[x], net.inc_start[x + 1]):
                    f = net.inc[k]
                    w = cassign[f]
                    if w >= 0 and w != x and not reach[w]:
                        reach[w] = 1
                        net.queue[tail] = w
                        tail += 1
            for f in range(m):
                assign[f] = cassign[f]
            blocked = [w for w in range(n) if not cforced[w] and not reach[w]]
        finally:
            _net_free(&net)
    finally:
        free(cforced)
        free(cassign)
        free(reach)
    return unrouted, blocked


def can_add_edge(int n, eu, ev, list assign, int d, int l, int u, int v):
    cdef int m0 = len(eu), m = m0 + 1, limit = d * d - l, f, i, j, k, r
    cdef Net net
    cdef char* forced
    cdef int* base
    cdef int* trial
    cdef int* comb
    cdef int* others
    cdef int nothers = n - 2, choose = d - 2
    cdef bint ok = True
    if n < d + 2:
        assign.append(u)
        return True
    forced = <char*>malloc(n)
    base = <int*>malloc(m * sizeof(int))
    trial = <int*>malloc(m * sizeof(int))
    comb = <int*>malloc((d + 1) * sizeof(int))
    others = <int*>malloc(n * sizeof(int))
    if forced == NULL or base == NULL or trial == NULL or comb == NULL or others == NULL:
        free(forced); free(base); free(trial); free(comb); free(others)
        raise MemoryError()
    try:
        _net_alloc(&net, n, m, d)
        try:
            _fill(&net, eu, ev, u, v)
            for f in range(m0):
                base[f] = assign[f]
            base[m0] = -1
            for i in range(n):
                forced[i] = 0
            if d == 1:
                forced[u] = 1
                memcpy(trial, base, m * sizeof(int))
                r = _route(&net, forced, trial)
                forced[u] = 0
                ok = r <= limit
            else:
                j = 0
                for i in range(n):
                    if i != u and i != v:
                        others[j] = i
                        j += 1
                for i in range(choose):
                    comb[i] = i
                while True:
                    forced[u] = 1
                    forced[v] = 1
                    for i in range(choose):
                        forced[others[comb[i]]] = 1
                    memcpy(trial, base, m * sizeof(int))
                    r = _route(&net, forced, trial)
                    forced[u] = 0
                    forced[v] = 0
                    for i in range(choose):
                        forced[others[comb[i]]] = 0
                    if r > limit:
                        ok = False
                        break
                    # next combination in lexicographic order
                    k = choose - 1
                    while k >= 0 and comb[k] == nothers - choose + k:
                        k -= 1
                    if k < 0:
                        break
                    comb[k] += 1
                    for i in range(k + 1, choose):
                        comb[i] = comb[i - 1] + 1
            if ok:
                memcpy(trial, base, m * sizeof(int))
                _route(&net, forced, trial)
                for f in range(m0):
                    assign[f] = trial[f]
                assign.append(trial[m0])
        finally:
            _net_free(&net)
    finally:
        free(forced); free(base); free(trial); free(comb); free(others)
    return ok


cdef inline uint64_t _mulmod(uint64_t a, uint64_t b, uint64_t p):
    return <uint64_t>((<u128>a * b) % p)


cdef uint64_t _powmod(uint64_t a, uint64_t e, uint64_t p):
    cdef uint64_t r = 1
    a %= p
    while e:
        if e & 1:
            r = _mulmod(r, a, p)
        a = _mulmod(a, a, p)
        e >>= 1
    return r


def rank_mod(rows, int ncols, p):
    cdef uint64_t cp = p
    cdef int nrows = len(rows), i, j, col, rank = 0, piv
    cdef uint64_t inv, fct, t
    cdef uint64_t* mat
    cdef uint64_t* prow
    cdef uint64_t* row
    if p >= 9223372036854775808:
        raise ValueError("prime must be below 2**63")
    if nrows == 0 or ncols == 0:
        return 0
    mat = <uint64_t*>malloc(<size_t>nrows * ncols * sizeof(uint64_t))
    if mat == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            r = rows[i]
            for j in range(ncols):
                mat[<size_t>i * ncols + j] = <uint64_t>(r[j] % p)
        for col in range(ncols):
            if rank == nrows:
                break
            piv = -1
            for i in range(rank, nrows):
                if mat[<size_t>i * ncols + col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(col, ncols):
                    t = mat[<size_t>piv * ncols + j]
                    mat[<size_t>piv * ncols + j] = mat[<size_t>rank * ncols + j]
                    mat[<size_t>rank * ncols + j] = t
            prow = mat + <size_t>rank * ncols
            inv = _powmod(prow[col], cp - 2, cp)
            for j in range(col, ncols):
                prow[j] = _mulmod(prow[j], inv, cp)
            for i in range(rank + 1, nrows):
                row = mat + <size_t>i * ncols
                fct = row[col]
                if fct == 0:
                    continue
                for j in range(col, ncols):
                    if prow[j]:
                        t = _mulmod(fct, prow[j], cp)
                        row[j] = row[j] - t if row[j] >= t else row[j] + cp - t
            rank += 1
    finally:
        free(mat)
    return rank
