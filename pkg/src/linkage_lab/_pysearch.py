"""Pure-Python disjoint-paths backtracking over bitmask adjacency.

This is the reference kernel; ``_search.pyx`` implements the same search
(same visiting order, same node counting) with 64-bit masks.
"""

FOUND, INFEASIBLE, OUT_OF_BUDGET = 1, 0, -1


class _Budget(Exception):
    pass


def reach(src: int, allowed: int, adj) -> int:
    """Vertices reachable from the mask ``src`` inside ``allowed``."""
    seen = src
    frontier = src
    while frontier:
        nxt = 0
        f = frontier
        while f:
            b = f & -f
            nxt |= adj[b.bit_length() - 1]
            f ^= b
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def search(adj, pairs, blocked, budget=-1):
    """Route ``pairs`` as vertex-disjoint paths avoiding ``blocked``.

    ``adj[v]`` is the neighbour mask of vertex ``v``; ``blocked`` must
    contain every terminal.  Returns ``(status, paths, nodes)`` where
    ``paths`` lists one vertex list per pair when status is ``FOUND``.
    """
    n = len(adj)
    k = len(pairs)
    full = (1 << n) - 1
    failed = set()
    stack = []
    nodes = 0

    def viable(i, head, used):
        free = full & ~used
        t = pairs[i][1]
        if not (reach(1 << head, free | (1 << t), adj) >> t) & 1:
            return False
        for j in range(i + 1, k):
            s, t = pairs[j]
            if not (reach(1 << s, free | (1 << t), adj) >> t) & 1:
                return False
        return True

    def dead(i, head, used):
        free = full & ~used
        src = (1 << head) | (1 << pairs[i][1])
        for j in range(i + 1, k):
            src |= (1 << pairs[j][0]) | (1 << pairs[j][1])
        return free & ~reach(src, free | src, adj)

    def rec(i, head, used):
        nonlocal nodes
        nodes += 1
        if budget >= 0 and nodes > budget:
            raise _Budget
        if not viable(i, head, used):
            return False
        key = (i, head, used | dead(i, head, used))
        if key in failed:
            return False
        t = pairs[i][1]
        if (adj[head] >> t) & 1:
            # stepping onto the target is never worse than walking on
            stack.append(t)
            if i + 1 == k:
                return True
            stack.append(pairs[i + 1][0])
            if rec(i + 1, pairs[i + 1][0], used):
                return True
            del stack[-2:]
            failed.add(key)
            return False
        opts = adj[head] & ~used
        while opts:
            b = opts & -opts
            opts ^= b
            v = b.bit_length() - 1
            stack.append(v)
            if rec(i, v, used | b):
                return True
            stack.pop()
        failed.add(key)
        return False

    if k == 0:
        return FOUND, [], 0
    try:
        stack.append(pairs[0][0])
        ok = rec(0, pairs[0][0], blocked)
    except _Budget:
        return OUT_OF_BUDGET, None, nodes
    if not ok:
        return INFEASIBLE, None, nodes
    paths = []
    it = iter(stack)
    for s, t in pairs:
        path = [next(it)]
        while path[-1] != t:
            path.append(next(it))
        paths.append(path)
    return FOUND, paths, nodes
