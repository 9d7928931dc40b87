"""Gammoid rank via vertex-capacitated max flow, and matroid intersection.

``rank(A)`` is the largest number of vertex-disjoint paths from ``A`` to the
target set.  Paths may have length zero (a vertex of ``A`` that is itself a
target).
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .pattern import adjacency
from .surface import order_key


@dataclass
class FlowResult:
    value: int
    paths: list  # one vertex list per unit of flow, source end first
    separator: frozenset  # vertex cut of size ``value`` between sources and targets


def disjoint_paths(adj: Mapping, sources: Iterable, targets: Iterable, *,
                   forbidden: Iterable = (), rng: random.Random | None = None,
                   depth_first: bool = False, quotas: Mapping | None = None) -> FlowResult:
    """Maximum family of vertex-disjoint source-target paths.

    Each vertex carries one unit.  ``quotas`` optionally maps a label to
    ``(vertices, cap)``; at most ``cap`` paths may then start in
    ``vertices`` (labels must partition ``sources``).  ``rng`` shuffles
    neighbour order and ``depth_first`` uses DFS augmenting paths; both only
    change which maximum family is returned.
    """
    sources = list(dict.fromkeys(sources))
    targets = set(targets)
    forbidden = set(forbidden)
    S, T = ("__source__",), ("__sink__",)
    cap: dict = {}
    orig: dict = {}
    nbrs: dict = {}

    def arc(u, v, c):
        if (u, v) not in cap:
            nbrs.setdefault(u, []).append(v)
            nbrs.setdefault(v, []).append(u)
            cap[(u, v)] = 0
            cap.setdefault((v, u), 0)
        cap[(u, v)] += c
        orig[(u, v)] = orig.get((u, v), 0) + c

    verts = sorted((v for v in adj if v not in forbidden), key=order_key)
    # terminal arcs never bind, so a minimum cut consists of vertex arcs
    big = len(verts) + 1
    for v in verts:
        arc((v, 0), (v, 1), 1)
        for u in sorted(adj[v], key=order_key):
            if u not in forbidden:
                arc((v, 1), (u, 0), 1)
    if quotas:
        for label, (members, c) in sorted(quotas.items(), key=lambda kv: order_key(kv[0])):
            hub = ("__hub__", label)
            arc(S, hub, c)
            for v in members:
                if v not in forbidden:
                    arc(hub, (v, 0), big)
    else:
        for v in sources:
            if v not in forbidden:
                arc(S, (v, 0), big)
    for v in targets:
        if v not in forbidden and v in adj:
            arc((v, 1), T, big)
    if S not in nbrs or T not in nbrs:
        return FlowResult(0, [], frozenset())
    if rng is not None:
        for u in nbrs:
            rng.shuffle(nbrs[u])

    def augment() -> bool:
        parent = {S: None}
        if depth_first:
            stack = [S]
            while stack:
                u = stack.pop()
                if u == T:
                    break
                for v in reversed(nbrs[u]):
                    if v not in parent and cap[(u, v)] > 0:
                        parent[v] = u
                        stack.append(v)
        else:
            queue = deque([S])
            while queue and T not in parent:
                u = queue.popleft()
                for v in nbrs[u]:
                    if v not in parent and cap[(u, v)] > 0:
                        parent[v] = u
                        queue.append(v)
        if T not in parent:
            return False
        v = T
        while parent[v] is not None:
            u = parent[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        return True

    value = 0
    while augment():
        value += 1

    # residual reachability gives the separator
    seen = {S}
    queue = deque([S])
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if v not in seen and cap[(u, v)] > 0:
                seen.add(v)
                queue.append(v)
    separator = frozenset(v for v in verts if (v, 0) in seen and (v, 1) not in seen)

    def carries(u, v):
        return orig.get((u, v), 0) > cap[(u, v)]

    paths = []
    for v in verts:
        if not carries((v, 0), (v, 1)):
            continue
        if not any(carries(x, (v, 0)) for x in nbrs[(v, 0)]
                   if x == S or x[0] == "__hub__"):
            continue
        path = [v]
        cur = (v, 1)
        while True:
            nxt = [w for w in nbrs[cur] if carries(cur, w)]
            if nxt == [T] or not nxt:
                break
            w = nxt[0]
            path.append(w[0])
            cur = (w[0], 1)
            if len(path) > len(verts):  # pragma: no cover
                raise RuntimeError("flow decomposition did not terminate")
        paths.append(path)
    paths.sort(key=lambda p: order_key(p[0]))
    if len(paths) != value:  # pragma: no cover
        raise RuntimeError("flow decomposition lost paths")
    return FlowResult(value, paths, separator)


@dataclass(frozen=True, eq=False)
class Gammoid:
    """The matroid on ``ground`` whose rank counts disjoint paths to ``targets``."""

    host: object
    ground: frozenset
    targets: frozenset
    _adj: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ground", frozenset(self.ground))
        object.__setattr__(self, "targets", frozenset(self.targets))
        adj = adjacency(self.host)
        missing = [v for v in self.ground | self.targets if v not in adj]
        if missing:
            raise ValueError(f"vertices not in host: {missing[:5]!r}")
        object.__setattr__(self, "_adj", adj)

    def _check(self, a):
        a = frozenset(a)
        if not a <= self.ground:
            raise ValueError(f"{sorted(a - self.ground, key=order_key)!r} not in the ground set")
        return a

    def flow(self, a, **kw) -> FlowResult:
        a = self._check(a)
        return disjoint_paths(self._adj, sorted(a, key=order_key), self.targets, **kw)

    def rank(self, a) -> int:
        return self.flow(a).value

    def independent(self, a) -> bool:
        a = self._check(a)
        return self.rank(a) == len(a)


def rank(g: Gammoid, a) -> int:
    return g.rank(a)


# --------------------------------------------------------------------------
# matroid intersection


@dataclass(frozen=True)
class IntersectionCertificate:
    common: frozenset  # maximum common independent set (ground of g0)
    A: frozenset  # the partition side measured in g0
    B: frozenset  # the side measured in g1 (through the identification)
    r0_A: int
    r1_B: int
    T: frozenset  # separator witnessing r0(A)
    U: frozenset  # separator witnessing r1(copy(B))
    target: int | None = None

    @property
    def bound(self) -> int:
        return self.r0_A + self.r1_B

    @property
    def size(self) -> int:
        return len(self.common)

    @property
    def reaches_target(self) -> bool:
        return self.target is None or self.size >= self.target


def max_common_independent(ground: Iterable, r0: Callable, r1: Callable):
    """Cardinality matroid intersection from two rank oracles.

    Returns ``(I, reach)`` with ``I`` maximum and ``reach`` the elements
    reachable in the final exchange graph; ``r0(ground - reach) +
    r1(reach) == |I|``.
    """
    ground = sorted(set(ground), key=order_key)
    I: set = set()

    def ind0(X):
        return r0(frozenset(X)) == len(X)

    def ind1(X):
        return r1(frozenset(X)) == len(X)

    while True:
        outside = [x for x in ground if x not in I]
        X1 = {x for x in outside if ind0(I | {x})}
        X2 = {x for x in outside if ind1(I | {x})}
        succ = {x: [] for x in ground}
        for y in sorted(I, key=order_key):
            for x in outside:
                swap = (I - {y}) | {x}
                if ind0(swap):
                    succ[y].append(x)
                if ind1(swap):
                    succ[x].append(y)
        parent = {x: None for x in sorted(X1, key=order_key)}
        queue = deque(parent)
        end = None
        while queue:
            u = queue.popleft()
            if u in X2:
                end = u
                break
            for v in succ[u]:
                if v not in parent:
                    parent[v] = u
                    queue.append(v)
        if end is None:
            return frozenset(I), frozenset(parent)
        path = []
        while end is not None:
            path.append(end)
            end = parent[end]
        I ^= set(path)


def matroid_intersection(g0: Gammoid, g1: Gammoid, target: int | None = None,
                         copy: Mapping | None = None) -> IntersectionCertificate:
    """Maximum common independent set with a min-max partition certificate.

    ``copy`` maps the ground of ``g0`` onto the ground of ``g1``; identity
    when omitted.
    """
    if copy is None:
        copy = {x: x for x in g0.ground}
    if set(copy) != set(g0.ground) or set(copy.values()) != set(g1.ground) \
            or len(set(copy.values())) != len(copy):
        raise ValueError("identification map is not a bijection between the ground sets")

    def r1(X):
        return g1.rank(frozenset(copy[x] for x in X))

    I, reach = max_common_independent(g0.ground, g0.rank, r1)
    A = frozenset(g0.ground - reach)
    B = frozenset(reach)
    f0 = g0.flow(A)
    f1 = g1.flow(frozenset(copy[x] for x in B))
    if f0.value + f1.value != len(I):  # pragma: no cover - algorithm invariant
        raise AssertionError("intersection certificate does not match")
    return IntersectionCertificate(I, A, B, f0.value, f1.value, f0.separator,
                                   f1.separator, target)


__all__ = [
    "FlowResult",
    "Gammoid",
    "IntersectionCertificate",
    "disjoint_paths",
    "matroid_intersection",
    "max_common_independent",
    "rank",
]
