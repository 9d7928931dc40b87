"""Patterns, linkages, cross-freeness and the exhaustive linkage oracle."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from . import _pysearch
from .surface import EmbeddedGraph, order_key

try:
    if os.environ.get("LINKAGE_LAB_PURE_PYTHON"):
        raise ImportError("pure Python kernel requested")
    from . import _search as _csearch

    KERNEL = "cython"
except ImportError:  # pragma: no cover - depends on the build
    _csearch = None
    KERNEL = "python"


class BudgetExceeded(RuntimeError):
    """The oracle ran out of search nodes; the instance is undecided."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class Pattern:
    """Terminal sets ``(s, t)`` or ``(s,)``, pairwise disjoint."""

    pairs: tuple

    def __post_init__(self):
        pairs = tuple(tuple(p) for p in self.pairs)
        seen = set()
        for p in pairs:
            if len(p) not in (1, 2) or (len(p) == 2 and p[0] == p[1]):
                raise ValueError(f"bad terminal set {p!r}")
            for v in p:
                if v in seen:
                    raise ValueError(f"terminal {v!r} used twice")
                seen.add(v)
        object.__setattr__(self, "pairs", pairs)

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def terminals(self) -> set:
        return {v for p in self.pairs for v in p}

    def relabeled(self, mapping) -> "Pattern":
        return Pattern(tuple(tuple(mapping[v] for v in p) for p in self.pairs))

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class Linkage:
    """Vertex paths indexed like the pattern they realise."""

    paths: tuple

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))

    @property
    def vertices(self) -> set:
        return {v for p in self.paths for v in p}

    def __iter__(self):
        return iter(self.paths)

    def __len__(self):
        return len(self.paths)


def adjacency(g) -> dict:
    """Neighbour sets of a networkx graph, EmbeddedGraph or mapping."""
    if isinstance(g, EmbeddedGraph):
        g = g.simple_graph()
    if hasattr(g, "adj") and hasattr(g, "nodes"):
        return {v: {u for u in g.adj[v] if u != v} for v in g.nodes}
    return {v: {u for u in nbrs if u != v} for v, nbrs in g.items()}


def cross_free(p: Pattern, order: Sequence) -> bool:
    """True iff no two pairs of ``p`` interleave along the cyclic ``order``."""
    pos = {}
    for i, v in enumerate(order):
        if v in pos:
            raise ValueError(f"{v!r} repeated in the cyclic order")
        pos[v] = i
    for v in p.terminals:
        if v not in pos:
            raise ValueError(f"terminal {v!r} missing from the cyclic order")
    chords = [sorted((pos[a], pos[b])) for a, b in (q for q in p if len(q) == 2)]
    for (a, b), (c, d) in ((x, y) for i, x in enumerate(chords) for y in chords[i + 1:]):
        if (a < c < b) != (a < d < b):
            return False
    # a singleton sitting strictly inside one chord's arc does not cross it:
    # on the disk it is a point both sides can avoid.
    return True


def verify(g, p: Pattern, l: Linkage) -> bool:
    """Check that ``l`` realises ``p`` in ``g`` with disjoint paths."""
    adj = adjacency(g)
    if len(l.paths) != p.k:
        return False
    used = set()
    for terms, path in zip(p.pairs, l.paths):
        if not path:
            return False
        if len(terms) == 1:
            if tuple(path) != terms:
                return False
        elif {path[0], path[-1]} != set(terms) or len(path) < 2:
            return False
        for v in path:
            if v not in adj or v in used:
                return False
            used.add(v)
        for u, v in zip(path, path[1:]):
            if v not in adj[u]:
                return False
    return True


def _kernel(n: int):
    if _csearch is not None and n <= _csearch.MAX_VERTICES:
        return _csearch.search
    return _pysearch.search


def solve_bruteforce(g, p: Pattern, budget: int | None = None, *, stats: dict | None = None,
                     kernel: str | None = None) -> Linkage | None:
    """Exhaustive disjoint-paths search.

    Returns a verified :class:`Linkage` or ``None`` when none exists.  Raises
    :class:`BudgetExceeded` when more than ``budget`` search nodes would be
    needed.  Pairs are routed in pattern order, neighbours tried in ascending
    vertex order.
    """
    adj = adjacency(g)
    for v in p.terminals:
        if v not in adj:
            raise ValueError(f"terminal {v!r} is not a vertex of the graph")
    verts = sorted(adj, key=order_key)
    index = {v: i for i, v in enumerate(verts)}
    masks = [0] * len(verts)
    for v, nbrs in adj.items():
        m = 0
        for u in nbrs:
            m |= 1 << index[u]
        masks[index[v]] = m
    blocked = 0
    for v in p.terminals:
        blocked |= 1 << index[v]
    pairs = [(index[a], index[b]) for a, b in (q for q in p if len(q) == 2)]
    if kernel == "python":
        run = _pysearch.search
    elif kernel == "cython":
        if _csearch is None:
            raise RuntimeError("compiled kernel not available")
        run = _csearch.search
    else:
        run = _kernel(len(verts))
    status, found, nodes = run(masks, pairs, blocked, -1 if budget is None else budget)
    if stats is not None:
        stats["nodes"] = nodes
    if status == _pysearch.OUT_OF_BUDGET:
        raise BudgetExceeded(nodes)
    if status == _pysearch.INFEASIBLE:
        return None
    it = iter(found)
    paths = []
    for q in p:
        if len(q) == 1:
            paths.append((q[0],))
            continue
        route = [verts[i] for i in next(it)]
        paths.append(tuple(route))
    out = Linkage(tuple(paths))
    if not verify(adj, p, out):  # pragma: no cover - would be a kernel bug
        raise AssertionError("oracle produced an invalid linkage")
    return out


def feasible(g, p: Pattern, budget: int | None = None) -> bool | None:
    """``True``/``False``, or ``None`` when the budget runs out."""
    try:
        return solve_bruteforce(g, p, budget) is not None
    except BudgetExceeded:
        return None


def pattern_from_pairs(items: Iterable[Sequence[Hashable]]) -> Pattern:
    return Pattern(tuple(tuple(x) for x in items))


__all__ = [
    "BudgetExceeded",
    "KERNEL",
    "Linkage",
    "Pattern",
    "adjacency",
    "cross_free",
    "feasible",
    "pattern_from_pairs",
    "solve_bruteforce",
    "verify",
]
