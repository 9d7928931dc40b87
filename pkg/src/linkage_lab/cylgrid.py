"""Cylindrical grids C_m x P_n and constructive routing of cross-free patterns.

Vertices are ``(ring, position)`` with ``ring`` in ``0..n-1`` and
``position`` in ``0..m-1``.  Rings 0 and n-1 are the boundary cycles.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .pattern import Linkage, Pattern, cross_free, verify
from .surface import EmbeddedGraph


class PreconditionError(ValueError):
    """The pattern does not satisfy the routing hypotheses."""


@dataclass(frozen=True)
class CylGrid:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 3:
            raise ValueError("cycle length m must be at least 3")
        if self.n < 1:
            raise ValueError("path length n must be at least 1")

    @cached_property
    def graph(self) -> nx.Graph:
        G = nx.Graph()
        for i in range(self.n):
            for j in range(self.m):
                G.add_edge((i, j), (i, (j + 1) % self.m))
                if i + 1 < self.n:
                    G.add_edge((i, j), (i + 1, j))
        return G

    def ring(self, i: int) -> list:
        return [(i, j) for j in range(self.m)]

    @property
    def boundary_cycles(self) -> tuple:
        return self.ring(0), self.ring(self.n - 1)

    def embedding(self) -> EmbeddedGraph:
        """The grid on an annulus; both boundary rings are holes."""
        m, n = self.m, self.n
        edges, rotation = {}, {}
        for i in range(n):
            for j in range(m):
                edges[("r", i, j)] = ((i, j), (i, (j + 1) % m))
                if i + 1 < n:
                    edges[("s", i, j)] = ((i, j), (i + 1, j))
        for i in range(n):
            for j in range(m):
                rot = []
                if i > 0:
                    rot.append((("s", i - 1, j), 1))
                rot.append((("r", i, j), 0))
                if i + 1 < n:
                    rot.append((("s", i, j), 0))
                rot.append((("r", i, (j - 1) % m), 1))
                rotation[(i, j)] = tuple(rot)
        g = EmbeddedGraph(edges, rotation)
        rings = [set(self.ring(0)), set(self.ring(n - 1))]
        holes = [
            f for f in g.faces
            if len(g.faces[f]) == m and set(g.face_vertices(f)) in rings
        ]
        return g.with_holes(holes)


def build(m: int, n: int) -> CylGrid:
    return CylGrid(m, n)


def _boundary_ring(grid: CylGrid, p: Pattern) -> int:
    terms = p.terminals
    for i in (0, grid.n - 1):
        if all(isinstance(v, tuple) and len(v) == 2 and v[0] == i and 0 <= v[1] < grid.m
               for v in terms):
            return i
    raise PreconditionError("pattern terminals must all lie on one boundary cycle")


def realize(grid: CylGrid, p: Pattern) -> Linkage:
    """Route a cross-free boundary pattern with ``k <= n`` items.

    Items are handled one ring at a time: a singleton stays put, a pair is
    joined along a terminal-free arc of the current ring, and all remaining
    terminals step one ring inward along their spokes.
    """
    if p.k == 0:
        return Linkage(())
    ring0 = _boundary_ring(grid, p)
    if not cross_free(p, grid.ring(ring0)):
        raise PreconditionError("pattern is not cross-free")
    if p.k > grid.n:
        raise PreconditionError(f"need n >= k, got n={grid.n}, k={p.k}")
    step = 1 if ring0 == 0 else -1
    m = grid.m
    paths = {i: [[v] for v in items] for i, items in enumerate(p.pairs)}
    pending = {i for i, q in enumerate(p.pairs) if len(q) == 2}
    ring = ring0  # ring currently holding the pair heads
    for q in p.pairs:
        if len(q) == 1:
            # the singleton keeps its vertex; pair heads move inward
            _descend(paths, pending, step)
            ring += step
    while pending:
        pos = {}
        for i in pending:
            for end in (0, 1):
                pos[paths[i][end][-1][1]] = (i, end)
        best = None
        for i in sorted(pending):
            for a, b in ((0, 1), (1, 0)):
                s = paths[i][a][-1][1]
                t = paths[i][b][-1][1]
                inner = [(s + d) % m for d in range(1, (t - s) % m)]
                if any(x in pos for x in inner):
                    continue
                key = (len(inner), s, i)
                if best is None or key < best[0]:
                    best = (key, i, a, b, inner)
        if best is None:  # pragma: no cover - excluded by cross-freeness
            raise PreconditionError("no terminal-free arc; pattern crosses")
        _, i, a, b, inner = best
        paths[i][a].extend((ring, x) for x in inner)
        paths[i] = [paths[i][a] + paths[i][b][::-1]]
        pending.discard(i)
        if pending:
            _descend(paths, pending, step)
            ring += step
    out = []
    for i, q in enumerate(p.pairs):
        path = paths[i][0]
        if len(q) == 2 and path[0] != q[0]:
            path = path[::-1]
        out.append(tuple(path))
    link = Linkage(tuple(out))
    if not verify(grid.graph, p, link):  # pragma: no cover - construction bug
        raise AssertionError("constructed linkage failed verification")
    return link


def _descend(paths, items, step):
    """Extend both ends of every pair in ``items`` one ring along its spoke."""
    for i in items:
        for half in paths[i]:
            r, j = half[-1]
            half.append((r + step, j))


__all__ = ["CylGrid", "PreconditionError", "build", "realize"]
