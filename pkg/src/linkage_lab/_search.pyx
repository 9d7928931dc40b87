# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled disjoint-paths backtracking for graphs with at most 64 vertices.

Mirrors ``_pysearch.search``: same visiting order, node counting and memo,
so both kernels return identical results and node counts.
"""
from libc.stdint cimport uint64_t, int64_t
from libcpp.vector cimport vector
from libcpp.unordered_set cimport unordered_set

FOUND, INFEASIBLE, OUT_OF_BUDGET = 1, 0, -1
MAX_VERTICES = 64


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int lowbit(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef struct Ctx:
    int n
    int k
    uint64_t full
    uint64_t* adj
    int* src
    int* dst
    int64_t nodes
    int64_t budget
    bint out
    int* stack
    int top


cdef inline uint64_t reach(Ctx* c, uint64_t start, uint64_t allowed) nogil:
    cdef uint64_t seen = start, frontier = start, nxt, f
    while frontier:
        nxt = 0
        f = frontier
        while f:
            nxt |= c.adj[lowbit(f)]
            f &= f - 1
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


cdef inline bint viable(Ctx* c, int i, int head, uint64_t used) nogil:
    cdef uint64_t free = c.full & ~used
    cdef int j, t = c.dst[i]
    if not ((reach(c, (<uint64_t>1) << head, free | ((<uint64_t>1) << t)) >> t) & 1):
        return False
    for j in range(i + 1, c.k):
        t = c.dst[j]
        if not ((reach(c, (<uint64_t>1) << c.src[j], free | ((<uint64_t>1) << t)) >> t) & 1):
            return False
    return True


cdef inline uint64_t dead(Ctx* c, int i, int head, uint64_t used) nogil:
    cdef uint64_t free = c.full & ~used
    cdef uint64_t s = ((<uint64_t>1) << head) | ((<uint64_t>1) << c.dst[i])
    cdef int j
    for j in range(i + 1, c.k):
        s |= ((<uint64_t>1) << c.src[j]) | ((<uint64_t>1) << c.dst[j])
    return free & ~reach(c, s, free | s)


cdef bint rec(Ctx* c, vector[unordered_set[uint64_t]]& failed, int i, int head, uint64_t used):
    cdef uint64_t key, opts, b
    cdef int t, v, slot
    c.nodes += 1
    if c.budget >= 0 and c.nodes > c.budget:
        c.out = True
        return False
    if not viable(c, i, head, used):
        return False
    key = used | dead(c, i, head, used)
    slot = i * c.n + head
    if failed[slot].count(key):
        return False
    t = c.dst[i]
    if (c.adj[head] >> t) & 1:
        c.stack[c.top] = t
        c.top += 1
        if i + 1 == c.k:
            return True
        c.stack[c.top] = c.src[i + 1]
        c.top += 1
        if rec(c, failed, i + 1, c.src[i + 1], used):
            return True
        if c.out:
            return False
        c.top -= 2
        failed[slot].insert(key)
        return False
    opts = c.adj[head] & ~used
    while opts:
        b = opts & (~opts + 1)
        opts ^= b
        v = lowbit(b)
        c.stack[c.top] = v
        c.top += 1
        if rec(c, failed, i, v, used | b):
            return True
        if c.out:
            return False
        c.top -= 1
    failed[slot].insert(key)
    return False


def search(adj, pairs, blocked, budget=-1):
    """Same contract as ``_pysearch.search``; requires ``len(adj) <= 64``."""
    cdef int n = len(adj), k = len(pairs), i
    if n > MAX_VERTICES:
        raise ValueError("compiled kernel handles at most 64 vertices")
    if k == 0:
        return FOUND, [], 0
    cdef vector[uint64_t] a = vector[uint64_t](n)
    cdef vector[int] s = vector[int](k), d = vector[int](k)
    cdef vector[int] stack = vector[int](n + 2 * k + 2)
    for i in range(n):
        a[i] = <uint64_t>adj[i]
    for i in range(k):
        s[i] = pairs[i][0]
        d[i] = pairs[i][1]
    cdef vector[unordered_set[uint64_t]] failed = vector[unordered_set[uint64_t]](k * n)
    cdef Ctx c
    c.n = n
    c.k = k
    c.full = (<uint64_t>0 - 1) if n == 64 else (((<uint64_t>1) << n) - 1)
    c.adj = a.data()
    c.src = s.data()
    c.dst = d.data()
    c.nodes = 0
    c.budget = budget
    c.out = False
    c.stack = stack.data()
    c.stack[0] = s[0]
    c.top = 1
    ok = rec(&c, failed, 0, s[0], <uint64_t>blocked)
    if c.out:
        return OUT_OF_BUDGET, None, c.nodes
    if not ok:
        return INFEASIBLE, None, c.nodes
    paths = []
    cdef int pos = 0, last
    for i in range(k):
        last = c.stack[pos]
        path = [last]
        pos += 1
        while last != d[i]:
            last = c.stack[pos]
            path.append(last)
            pos += 1
        paths.append(path)
    return FOUND, paths, c.nodes
