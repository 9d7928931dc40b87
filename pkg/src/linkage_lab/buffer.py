"""Routing many boundary blocks across a cylinder at once.

Given a graph on a cylinder with holes ``d1`` and ``d2`` and a cyclic
partition ``A1, B1, ..., An, Bn`` of the vertices on ``d1``, each ``Ai`` is
linked to ``d2`` on its own.  The ``Bi`` blocks supply guard paths that
confine every ``Ai`` family to its own strip of the cylinder.  Paths that
stray are rerouted along a guard using the walk product ``P*Q`` (follow
``P`` to its first vertex on ``Q``, then follow ``Q``).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .gammoid import Gammoid, disjoint_paths
from .pattern import adjacency
from .surface import EmbeddedGraph, EmbeddingError, face_classes, order_key


class HypothesisError(ValueError):
    def __init__(self, block: int, message: str):
        super().__init__(f"block {block + 1}: {message}")
        self.block = block


class RerouteError(RuntimeError):
    """Neither reroute option applied; the guards do not confine the family."""


@dataclass(frozen=True)
class BufferPartition:
    """Blocks ``((A1, B1), ..., (An, Bn))`` listed clockwise along d1."""

    blocks: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "blocks", tuple((tuple(a), tuple(b)) for a, b in self.blocks)
        )
        if not self.blocks:
            raise ValueError("partition needs at least one block")

    @property
    def n(self) -> int:
        return len(self.blocks)

    def A(self, i: int) -> tuple:
        return self.blocks[i % self.n][0]

    def B(self, i: int) -> tuple:
        return self.blocks[i % self.n][1]

    def sequence(self) -> list:
        out = []
        for a, b in self.blocks:
            out += list(a) + list(b)
        return out


@dataclass
class RerouteStep:
    block: int
    guard: str  # "Q" (counter-clockwise guard) or "R" (clockwise guard)
    path_index: int  # index into the clockwise-ordered family of the block
    guard_index: int  # 1-based label of the guard used
    measure_before: int
    measure_after: int


@dataclass
class BufferRoute:
    paths: list  # one path per vertex of the union of the A blocks, clockwise
    initial: list  # the per-block families before rerouting
    buffers: list  # the guard family, one list per B block
    steps: list = field(default_factory=list)
    method: str = "direct"


def _path_edges(adj_edges, path):
    out = set()
    for u, v in zip(path, path[1:]):
        out.update(adj_edges.get(frozenset((u, v)), ()))
    return out


def _product(P, Q):
    """``P`` up to its first vertex on ``Q``, then the rest of ``Q``."""
    on_q = {v: i for i, v in enumerate(Q)}
    for i, v in enumerate(P):
        if v in on_q:
            return list(P[: i + 1]) + list(Q[on_q[v] + 1:])
    raise ValueError("walks do not meet")


def _meet(P, Q) -> bool:
    return not set(P).isdisjoint(Q)


class _Cylinder:
    """Face-region queries on the host embedding."""

    def __init__(self, g: EmbeddedGraph, clockwise: list):
        self.g = g
        self.cw = clockwise
        self.pos = {v: i for i, v in enumerate(clockwise)}
        self.edges_of = {}
        for e, (u, v) in g.edges.items():
            if u != v:
                self.edges_of.setdefault(frozenset((u, v)), []).append(e)
        self.faces_at = {
            v: {g.face_of((h, eps)) for h in g.rotation[v] for eps in (1, -1)} - g.holes
            for v in g.rotation
        }

    def region(self, Q, R):
        """Closed clockwise region from ``Q`` to ``R`` (both start on d1)."""
        barrier = _path_edges(self.edges_of, Q) | _path_edges(self.edges_of, R)
        cls = face_classes(self.g, barrier, self.g.holes)
        on = set(Q) | set(R)
        n = len(self.cw)
        i, j = self.pos[Q[0]], self.pos[R[0]]
        seeds = set()
        k = (i + 1) % n
        while k != j:
            v = self.cw[k]
            if v not in on:
                seeds.update(cls[f] for f in self.faces_at[v])
            k = (k + 1) % n
        return cls, seeds, on

    def between(self, P, region) -> bool:
        cls, seeds, on = region
        for v in P:
            if v in on:
                continue
            if not any(cls[f] in seeds for f in self.faces_at[v]):
                return False
        return True


def _clockwise(g: EmbeddedGraph, part: BufferPartition):
    seq = part.sequence()
    if len(set(seq)) != len(seq):
        raise ValueError("partition blocks overlap")
    if len(g.holes) != 2:
        raise EmbeddingError("host must be a cylinder with exactly two holes")
    d1 = [f for f in g.holes if set(g.face_vertices(f)) == set(seq)]
    if len(d1) != 1:
        raise ValueError("partition must cover exactly the vertices of one hole")
    d1 = d1[0]
    d2 = next(f for f in g.holes if f != d1)
    walk = g.face_vertices(d1)
    if len(set(walk)) != len(walk):
        raise EmbeddingError("hole d1 is not a simple cycle")
    for cand in (walk, walk[::-1]):
        r = cand.index(seq[0])
        if cand[r:] + cand[:r] == seq:
            return seq, set(g.face_vertices(d2))
    raise ValueError("blocks are not cyclically contiguous along the hole")


def buffer_route(g: EmbeddedGraph, part: BufferPartition, *, rng: random.Random | None = None,
                 wander: bool = False) -> BufferRoute:
    """Disjoint paths from every vertex of the A blocks to the far hole.

    ``wander`` builds the initial per-block families with randomised
    depth-first augmentation (useful to exercise the rerouting).
    """
    clockwise, V2 = _clockwise(g, part)
    adj = adjacency(g)
    V1 = set(clockwise)
    M = Gammoid(adj, V1, V2)
    n = part.n
    sizes = [len(part.A(i)) for i in range(n)]
    total = sum(sizes)
    for i in range(n):
        if not M.independent(part.A(i)):
            raise HypothesisError(i, "A block is not independent")
    for i in range(n):
        r = M.rank(part.B(i))
        if r < 2 * total:
            raise HypothesisError(i, f"rank of B block is {r} < {2 * total}")

    fam = []
    for i in range(n):
        kw = {"rng": rng, "depth_first": True} if wander and rng is not None else {}
        fam.append(disjoint_paths(adj, part.A(i), V2, **kw).paths)
    initial = [list(map(list, f)) for f in fam]
    everything = [p for f in fam for p in f]
    if _pairwise_disjoint(everything):
        return BufferRoute(_order(everything, clockwise), initial, [], [], "direct")

    quotas = {i: (part.B(i), sizes[i] + sizes[(i + 1) % n]) for i in range(n)}
    B_all = [v for i in range(n) for v in part.B(i)]
    A_all = [v for i in range(n) for v in part.A(i)]
    buf = None
    for forbid in (A_all, ()):
        res = disjoint_paths(adj, B_all, V2, forbidden=forbid, quotas=quotas)
        if res.value == 2 * total:
            buf = res.paths
            break
    if buf is None:  # pragma: no cover - excluded by the rank hypothesis
        raise HypothesisError(0, "could not build the guard family")
    block_of = {v: i for i in range(n) for v in part.B(i)}
    buffers = [[] for _ in range(n)]
    pos = {v: i for i, v in enumerate(clockwise)}
    for p in buf:
        buffers[block_of[p[0]]].append(p)
    for b in buffers:
        b.sort(key=lambda p: pos[p[0]])

    cyl = _Cylinder(g, clockwise)
    steps: list = []
    out = []
    for i in range(n):
        m = sizes[i]
        if m == 0:
            continue
        P = sorted(fam[i], key=lambda p: pos[p[0]])
        Qs = buffers[(i - 1) % n][::-1]
        Rs = buffers[i]
        out += _reroute_block(cyl, i, P, Qs, Rs, m, steps)
    if not _pairwise_disjoint(out) or len(out) != total:
        raise RerouteError("rerouted families still intersect")
    return BufferRoute(_order(out, clockwise), initial, buffers, steps, "reroute")


def _measure(P, lo, hi, Qs, qi, Rs, ri) -> int:
    guards = Qs[:qi] + Rs[:ri]
    return sum(1 for p in P[lo:hi + 1] for q in guards if _meet(p, q))


def _reroute_block(cyl, block, P, Qs, Rs, m, steps):
    P = [list(p) for p in P]
    lo, hi = 0, m - 1
    qi, ri = m, m
    while lo <= hi:
        Q, R = Qs[qi - 1], Rs[ri - 1]
        region = cyl.region(Q, R)
        if all(cyl.between(P[x], region) for x in range(lo, hi + 1)):
            break
        before = _measure(P, lo, hi, Qs, qi, Rs, ri)
        if _meet(P[lo], Q) and not _meet(_product(P[lo], Q), R):
            P[lo] = _product(P[lo], Q)
            idx, guard, label = lo, "Q", qi
            lo += 1
            qi -= 1
        elif _meet(P[hi], R) and not _meet(_product(P[hi], R), Q):
            P[hi] = _product(P[hi], R)
            idx, guard, label = hi, "R", ri
            hi -= 1
            ri -= 1
        else:
            raise RerouteError(f"block {block + 1}: no reroute option applies")
        after = _measure(P, lo, hi, Qs, qi, Rs, ri)
        steps.append(RerouteStep(block, guard, idx, label, before, after))
    return P


def _pairwise_disjoint(paths) -> bool:
    seen = set()
    for p in paths:
        for v in p:
            if v in seen:
                return False
            seen.add(v)
    return True


def _order(paths, clockwise):
    pos = {v: i for i, v in enumerate(clockwise)}
    return sorted((list(p) for p in paths), key=lambda p: pos[p[0]])


def verify_route(g, part: BufferPartition, route: BufferRoute) -> bool:
    """Disjointness, correct starts, ends on the far hole, host edges only."""
    clockwise, V2 = _clockwise(g, part)
    adj = adjacency(g)
    starts = sorted((v for i in range(part.n) for v in part.A(i)), key=order_key)
    if sorted((p[0] for p in route.paths), key=order_key) != starts:
        return False
    if not _pairwise_disjoint(route.paths):
        return False
    for p in route.paths:
        if p[-1] not in V2:
            return False
        for u, v in zip(p, p[1:]):
            if v not in adj[u]:
                return False
    return True


__all__ = [
    "BufferPartition",
    "BufferRoute",
    "HypothesisError",
    "RerouteError",
    "RerouteStep",
    "buffer_route",
    "verify_route",
]
