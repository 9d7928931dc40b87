"""Random instance generators used by the tests, the benchmark and the CLI."""
from __future__ import annotations

import random

from .pattern import Pattern
from .surface import EmbeddedGraph, planar_embedding


def _cross(p, q, r, s) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    o1, o2 = orient(p, q, r), orient(p, q, s)
    o3, o4 = orient(r, s, p), orient(r, s, q)
    return o1 * o2 < 0 and o3 * o4 < 0


def random_planar(n: int, rng: random.Random, density: float = 0.8,
                  connected: bool = True) -> EmbeddedGraph:
    """Straight-line plane graph on ``n`` random points.

    Candidate segments are tried shortest first and kept with probability
    ``density`` when they cross nothing already drawn.  With ``connected``
    a non-crossing spanning tree is laid down first.
    """
    pos = {i: (rng.random(), rng.random()) for i in range(n)}
    cand = sorted(
        ((i, j) for i in range(n) for j in range(i + 1, n)),
        key=lambda e: (pos[e[0]][0] - pos[e[1]][0]) ** 2 + (pos[e[0]][1] - pos[e[1]][1]) ** 2,
    )
    chosen: list = []

    def free(e):
        a, b = e
        return all(
            len({a, b, c, d}) < 4 or not _cross(pos[a], pos[b], pos[c], pos[d])
            for c, d in chosen
        )

    if connected and n > 1:
        # shortest non-crossing edges joining components (Kruskal)
        root = list(range(n))

        def find(x):
            while root[x] != x:
                root[x] = root[root[x]]
                x = root[x]
            return x

        for e in cand:
            ra, rb = find(e[0]), find(e[1])
            if ra != rb and free(e):
                root[ra] = rb
                chosen.append(e)
    for e in cand:
        if e not in chosen and rng.random() < density and free(e):
            chosen.append(e)
    return planar_embedding(pos, chosen)


def random_pattern(vertices, k: int, rng: random.Random, singles: int = 0) -> Pattern:
    """``k`` pairs (the first ``singles`` of them singletons) on random vertices."""
    vs = list(vertices)
    need = 2 * (k - singles) + singles
    if need > len(vs):
        raise ValueError("not enough vertices for the pattern")
    picks = rng.sample(vs, need)
    items, i = [], 0
    for j in range(k):
        if j < singles:
            items.append((picks[i],))
            i += 1
        else:
            items.append((picks[i], picks[i + 1]))
            i += 2
    return Pattern(tuple(items))


def web(m: int, t: int, center: bool = True) -> EmbeddedGraph:
    """``t`` concentric ``m``-cycles joined by spokes, optionally around a hub.

    Ring ``i`` (1-based, innermost first) has vertices ``(i, j)``; the hub
    is ``"v"``.
    """
    import math

    pos, edges = {}, []
    if center:
        pos["v"] = (0.0, 0.0)
    for i in range(1, t + 1):
        for j in range(m):
            ang = 2 * math.pi * j / m
            pos[(i, j)] = (i * math.cos(ang), i * math.sin(ang))
            edges.append(((i, j), (i, (j + 1) % m)))
            if i > 1:
                edges.append(((i - 1, j), (i, j)))
            elif center:
                edges.append(("v", (1, j)))
    return planar_embedding(pos, edges)


def random_linkage(g, p: Pattern, rng: random.Random, budget: int | None = None):
    """A linkage for ``p`` found by the oracle under a random vertex order.

    Shuffling the labels changes the search order, which yields winding
    paths.  Returns ``None`` when ``p`` is infeasible.
    """
    from .pattern import Linkage, adjacency, solve_bruteforce

    adj = adjacency(g)
    verts = list(adj)
    rng.shuffle(verts)
    name = {v: i for i, v in enumerate(verts)}
    back = {i: v for v, i in name.items()}
    relabeled = {name[v]: {name[u] for u in nbrs} for v, nbrs in adj.items()}
    found = solve_bruteforce(relabeled, p.relabeled(name), budget)
    if found is None:
        return None
    return Linkage(tuple(tuple(back[x] for x in P) for P in found.paths))


def bumpy_linkage(m: int, t: int, rng: random.Random, k: int = 2, bumps: int = 3):
    """A web, a boundary pattern and a linkage for it carrying hills.

    Each pair owns a sector of the outer ring.  Its path dives to a random
    ring, runs along it and climbs back; random stretches of the run are
    lifted to higher rings (possibly nested) to create hills.
    Returns ``(graph, pattern, linkage, cycles)``.
    """
    from .pattern import Linkage

    if m < 4 * k:
        raise ValueError("need m >= 4k so every pair gets its own sector")
    g = web(m, t)
    cuts = sorted(rng.sample(range(m), k))
    pairs, paths = [], []
    for i in range(k):
        lo = cuts[i]
        hi = (cuts[(i + 1) % k] - 1) % m if k > 1 else (lo - 1) % m
        span = (hi - lo) % m
        if span < 2:
            continue
        while True:
            walk = _bumpy_walk(m, t, lo, rng.randint(2, span), rng, bumps)
            if len(set(walk)) == len(walk):
                break
        pairs.append((walk[0], walk[-1]))
        paths.append(tuple(walk))
    cycles = [[(i, j) for j in range(m)] for i in range(1, t + 1)]
    return g, Pattern(tuple(pairs)), Linkage(tuple(paths)), cycles


def _bumpy_walk(m, t, a, width, rng, bumps):
    r = rng.randint(1, t - 1)
    heights = [r] * (width + 1)  # ring used at each offset of the run
    for _ in range(rng.randint(0, bumps)):
        c = rng.randint(0, width - 2)
        dd = rng.randint(c + 2, width)
        base = heights[c]
        if heights[dd] != base or base >= t:
            continue
        if any(h != base for h in heights[c + 1:dd]):
            continue
        lift = rng.randint(base + 1, t)
        for x in range(c + 1, dd):
            heights[x] = lift
    walk = [(ring, a) for ring in range(t, r - 1, -1)]
    for x in range(width):
        h0, h1 = heights[x], heights[x + 1]
        j, j1 = (a + x) % m, (a + x + 1) % m
        if h1 > h0:
            walk += [(ring, j) for ring in range(h0 + 1, h1 + 1)]
            walk.append((h1, j1))
        else:
            walk.append((h0, j1))
            walk += [(ring, j1) for ring in range(h0 - 1, h1 - 1, -1)]
    b = (a + width) % m
    walk += [(ring, b) for ring in range(heights[width] + 1, t + 1)]
    return walk


def add_outer_edges(g: EmbeddedGraph, m: int, t: int, chords) -> EmbeddedGraph:
    """Attach edges between outer-ring vertices of ``web(m, t)`` outside the rings.

    ``chords`` lists ``(j1, j2, sign)``.  Each new half-edge goes into the
    outward corner of its vertex (after the ring edge to the predecessor).
    """
    edges = dict(g.edges)
    rotation = {v: list(hs) for v, hs in g.rotation.items()}
    sign = dict(g.sign)
    for n, (j1, j2, s) in enumerate(chords):
        name = ("x", n)
        u, w = (t, j1 % m), (t, j2 % m)
        edges[name] = (u, w)
        sign[name] = s
        for end, x in ((0, u), (1, w)):
            prev = (t, (x[1] - 1) % m)
            hs = rotation[x]
            at = next(i for i, h in enumerate(hs)
                      if set(g.edges.get(h[0], ())) == {x, prev})
            hs.insert(at + 1, (name, end))
    return EmbeddedGraph(edges, rotation, sign)


STRIP_FIXTURES = {
    # name: (m, t, chords, pattern on outer-ring positions)
    "sphere": (12, 2, [(1, 3, 1), (0, 4, 1), (6, 8, 1)], [(2, 7)]),
    "sphere-bundles": (16, 3, [(1, 3, 1), (0, 4, 1), (15, 5, 1), (8, 10, 1), (7, 11, 1)],
                       [(2, 9), (13,)]),
    "torus": (16, 2, [(0, 8, 1), (15, 9, 1), (14, 10, 1), (4, 12, 1), (5, 11, 1)],
              [(2, 6)]),
    "torus-split": (16, 2, [(0, 8, 1), (15, 9, 1), (14, 10, 1), (4, 12, 1), (5, 11, 1)],
                    [(15, 6)]),
    "projective": (12, 2, [(0, 6, -1), (1, 7, -1), (2, 8, -1)], [(4, 10)]),
    "projective-mixed": (14, 2, [(0, 7, -1), (1, 8, -1), (3, 5, 1)], [(4, 11)]),
}


def strip_fixture(name: str):
    """An insulated instance with edges outside the outer ring.

    Returns ``(graph, pattern, v, cycles)``; the rings of the web are the
    insulating cycles around the hub ``"v"``.
    """
    m, t, chords, pat = STRIP_FIXTURES[name]
    g = add_outer_edges(web(m, t), m, t, chords)
    p = Pattern(tuple(tuple((t, j) for j in item) for item in pat))
    cycles = [[(i, j) for j in range(m)] for i in range(1, t + 1)]
    return g, p, "v", cycles
