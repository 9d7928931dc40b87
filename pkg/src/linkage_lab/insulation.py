"""Nested cycles around a vertex: protection depth, levels, hills and strips.

Regions are handled as sets of faces of the host embedding.  A cycle ``C``
bounds a disk ``D`` when the faces on one side of ``C`` have Euler
characteristic 1 and contain no hole.  All of the cycles in this module are
vertex lists without repetition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .gammoid import Gammoid
from .pattern import Linkage, Pattern, verify
from .surface import (
    EmbeddedGraph,
    EmbeddingError,
    SurfaceSignature,
    classify,
    dart_key,
    face_classes,
    order_key,
    region_euler,
    region_vertices,
)


class InsulationError(ValueError):
    """The cycle family does not insulate the vertex as claimed."""


def faces_at(g: EmbeddedGraph, v) -> set:
    return {g.face_of((h, eps)) for h in g.rotation[v] for eps in (1, -1)}


def _edge_index(g: EmbeddedGraph) -> dict:
    idx = {}
    for e, (u, w) in g.edges.items():
        if u != w:
            idx.setdefault(frozenset((u, w)), []).append(e)
    return idx


def _walk_edges(index, walk, closed=False) -> list:
    pairs = list(zip(walk, walk[1:]))
    if closed:
        pairs.append((walk[-1], walk[0]))
    out = []
    for u, w in pairs:
        es = index.get(frozenset((u, w)))
        if not es:
            raise EmbeddingError(f"no edge joins {u!r} and {w!r}")
        out.append(es[0])
    return out


def _sides(g: EmbeddedGraph, barrier) -> list:
    """Face sets of the regions cut out by ``barrier`` (holes included)."""
    cls = face_classes(g, barrier)
    out: dict = {}
    for f, c in cls.items():
        out.setdefault(c, set()).add(f)
    return list(out.values())


# --------------------------------------------------------------------------
# protection depth


def _complement_parts(g: EmbeddedGraph, inside: frozenset) -> list:
    rest = [f for f in g.faces if f not in inside]
    adj = {f: [] for f in rest}
    for e in g.edges:
        f1, f2 = g.edge_faces(e)
        if f1 in adj and f2 in adj and f1 != f2:
            adj[f1].append(f2)
            adj[f2].append(f1)
    parts, seen = [], set()
    for f in sorted(rest, key=dart_key):
        if f in seen:
            continue
        comp, stack = set(), [f]
        seen.add(f)
        while stack:
            x = stack.pop()
            comp.add(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        parts.append(frozenset(comp))
    return parts


def _boundary_cycle(g: EmbeddedGraph, outside: frozenset):
    """The cycle between ``outside`` and the rest, or a pinch vertex."""
    deg: dict = {}
    nxt: dict = {}
    for e, (u, w) in g.edges.items():
        f1, f2 = g.edge_faces(e)
        if (f1 in outside) == (f2 in outside):
            continue
        for a, b in ((u, w), (w, u)):
            deg[a] = deg.get(a, 0) + 1
            nxt.setdefault(a, []).append(b)
    if not deg:
        return None, None
    pinch = sorted((x for x, d in deg.items() if d != 2), key=order_key)
    if pinch:
        return None, pinch[0]
    start = min(deg, key=order_key)
    cyc, prev, cur = [start], None, start
    while True:
        a, b = nxt[cur]
        step = b if a == prev else a
        if step == start:
            break
        cyc.append(step)
        prev, cur = cur, step
    if len(cyc) != len(deg):
        # two disjoint boundary cycles: the region is not a disk
        return None, None
    return cyc, None


def _corner_runs(g: EmbeddedGraph, p, part: frozenset) -> list:
    """Maximal runs of consecutive corners at ``p`` whose face lies in ``part``."""
    corners = [g.face_of((h, 1)) for h in g.rotation[p]]
    n = len(corners)
    inside = [c in part for c in corners]
    if all(inside):
        return [set(corners)]
    start = next(i for i in range(n) if not inside[i])
    runs, cur = [], set()
    for j in range(1, n + 1):
        i = (start + j) % n
        if inside[i]:
            cur.add(corners[i])
        elif cur:
            runs.append(cur)
            cur = set()
    if cur:
        runs.append(cur)
    return runs


class _Peeler:
    """Exact layer search: every candidate disk is a minimal one."""

    def __init__(self, g: EmbeddedGraph, terminals):
        self.g = g
        self.terminals = set(terminals)
        self.memo: dict = {}
        self.cand_memo: dict = {}

    def candidates(self, inside: frozenset) -> dict:
        """Minimal disks containing ``inside``: disk faces -> boundary cycle."""
        if inside in self.cand_memo:
            return self.cand_memo[inside]
        out: dict = {}
        self._grow(inside, out, set())
        self.cand_memo[inside] = out
        return out

    def _grow(self, inside: frozenset, out: dict, seen: set):
        if inside in seen:
            return
        seen.add(inside)
        g = self.g
        if inside & g.holes:
            return
        for part in _complement_parts(g, inside):
            if not g.holes <= part:
                continue
            cyc, pinch = _boundary_cycle(g, part)
            if cyc is not None:
                disk = frozenset(f for f in g.faces if f not in part)
                interior = region_vertices(g, disk) - set(cyc)
                if interior & self.terminals:
                    continue
                out.setdefault(disk, cyc)
            elif pinch is not None:
                runs = _corner_runs(g, pinch, part)
                everything = set().union(*runs)
                # either the cycle avoids the pinch, or it keeps one wedge outside
                self._grow(inside | everything, out, seen)
                for r in runs:
                    self._grow(inside | (everything - r), out, seen)

    def best(self, inside: frozenset):
        if inside in self.memo:
            return self.memo[inside]
        self.memo[inside] = (0, [])  # guards against cycles in the recursion
        result = (0, [])
        ranked = []
        for disk, cyc in self.candidates(inside).items():
            used = region_vertices(self.g, disk)
            nxt = frozenset(f for x in used for f in faces_at(self.g, x))
            depth, rest = self.best(nxt)
            key = (-(depth + 1), len(cyc), sorted(map(order_key, cyc)))
            ranked.append((key, depth + 1, [_rotate_min(cyc)] + rest))
        if ranked:
            ranked.sort(key=lambda r: r[0])
            result = (ranked[0][1], ranked[0][2])
        self.memo[inside] = result
        return result


def _rotate_min(cyc: list) -> tuple:
    i = min(range(len(cyc)), key=lambda j: order_key(cyc[j]))
    c = cyc[i:] + cyc[:i]
    if len(c) > 2 and order_key(c[-1]) < order_key(c[1]):
        c = [c[0]] + c[1:][::-1]
    return tuple(c)


def protection_depth(g: EmbeddedGraph, v, p: Pattern | None = None):
    """Largest nested family of vertex-disjoint cycles around ``v``.

    Returns ``(t, cycles)`` with ``cycles[0]`` innermost.  The outermost
    disk has no terminal of ``p`` in its interior.  ``g`` must be a plane
    embedding (a sphere, or a disk whose outer face is a hole); only the
    component of ``v`` is searched.
    """
    if v not in g.rotation:
        raise ValueError(f"{v!r} is not a vertex")
    terms = p.terminals if p is not None else set()
    if v in terms:
        raise ValueError(f"{v!r} is a terminal; its protection depth is undefined")
    comp = next(c for c in g.components() if v in c)
    h = g.restrict(comp)
    sig = classify(h)
    if sig.genus() != 0 or sig.c > 1:
        raise EmbeddingError(f"protection depth needs a sphere or a disk, got {sig}")
    if not h.rotation[v]:
        return 0, []
    peeler = _Peeler(h, terms & comp)
    best = (0, [])
    for f in sorted(faces_at(h, v), key=dart_key):
        got = peeler.best(frozenset([f]))
        if got[0] > best[0]:
            best = got
    return best[0], [list(c) for c in best[1]]


def layer_count(g: EmbeddedGraph, v, p: Pattern | None = None) -> int:
    return protection_depth(g, v, p)[0]


# --------------------------------------------------------------------------
# leveled disks


def _disk_side(g: EmbeddedGraph, cyc, index, *, contains=None, avoid=None):
    """The disk bounded by ``cyc`` on the requested side, as a face set."""
    sides = [s for s in _sides(g, _walk_edges(index, list(cyc), closed=True))
             if not (s & g.holes) and region_euler(g, s) == 1]
    if contains is not None:
        sides = [s for s in sides if contains <= s]
    if avoid is not None:
        sides = [s for s in sides if not (s & avoid)]
    if not sides:
        return None
    return min(sides, key=len)


@dataclass(frozen=True, eq=False)
class LeveledDisk:
    """Cycles ``C_1 .. C_t`` (innermost first) nested around ``v``.

    ``disks[i]`` is the face set of the disk bounded by ``cycles[i]``.
    Vertices outside the outermost disk get level ``t + 1``.
    """

    graph: EmbeddedGraph
    v: object
    cycles: tuple
    disks: tuple = field(default=None, repr=False)

    def __post_init__(self):
        cycles = tuple(tuple(c) for c in self.cycles)
        object.__setattr__(self, "cycles", cycles)
        if not cycles:
            raise InsulationError("need at least one cycle")
        seen = set()
        for c in cycles:
            if len(set(c)) != len(c) or len(c) < 3:
                raise InsulationError(f"{c!r} is not a cycle")
            if seen & set(c):
                raise InsulationError("cycles are not vertex-disjoint")
            seen |= set(c)
        if self.disks is None:
            object.__setattr__(self, "disks", self._find_disks())
        for i, c in enumerate(cycles):
            if i and not self.disks[i - 1] <= self.disks[i]:
                raise InsulationError(f"disk {i + 1} does not contain disk {i}")
        if self.v not in region_vertices(self.graph, self.disks[0]):
            raise InsulationError("v is not in the innermost disk")

    def _find_disks(self):
        g, idx = self.graph, self.index
        around_v = faces_at(g, self.v) if self.v not in self.cycles[0] else None
        disks = []
        prev = None
        for i, c in enumerate(self.cycles):
            if prev is not None:
                d = _disk_side(g, c, idx, contains=prev)
            elif around_v is not None:
                d = _disk_side(g, c, idx, contains=around_v)
            else:
                # v sits on C_1: take the side that C_2 does not cut into
                nxt = set(self.cycles[1]) if len(self.cycles) > 1 else set()
                d = None
                for s in _sides(g, _walk_edges(idx, list(c), closed=True)):
                    if s & g.holes or region_euler(g, s) != 1:
                        continue
                    if nxt & region_vertices(g, s):
                        continue
                    if d is None or len(s) < len(d):
                        d = s
            if d is None:
                raise InsulationError(f"cycle {i + 1} does not bound a disk around v")
            disks.append(frozenset(d))
            prev = d
        return tuple(disks)

    @cached_property
    def index(self) -> dict:
        return _edge_index(self.graph)

    @property
    def t(self) -> int:
        return len(self.cycles)

    @cached_property
    def cycle_of(self) -> dict:
        return {x: i + 1 for i, c in enumerate(self.cycles) for x in c}

    @cached_property
    def level(self) -> dict:
        g = self.graph
        out = {}
        for x in g.rotation:
            if x in self.cycle_of:
                out[x] = self.cycle_of[x]
                continue
            fs = faces_at(g, x)
            out[x] = next(
                (i + 1 for i, d in enumerate(self.disks) if fs and fs <= d), self.t + 1
            )
        return out

    def inside(self, i: int, x) -> bool:
        """Is ``x`` in the closed disk bounded by ``C_i`` (1-based)?"""
        return self.level[x] <= i

    @cached_property
    def exterior_edges(self) -> set:
        """Edges not contained in the outermost disk."""
        D = self.disks[-1]
        return {e for e in self.graph.edges
                if not (set(self.graph.edge_faces(e)) & D)}

    def cycle_arc(self, i: int, a, b, forward: bool) -> list:
        """Vertices of ``C_i`` from ``a`` to ``b`` in one of the two directions."""
        c = self.cycles[i - 1]
        n = len(c)
        j, k = c.index(a), c.index(b)
        step = 1 if forward else -1
        out = [c[j]]
        while j != k:
            j = (j + step) % n
            out.append(c[j])
        return out

    def potential(self, l: Linkage) -> int:
        return sum(self.level[x] for x in l.vertices)


def leveled_disk(g: EmbeddedGraph, v, cycles) -> LeveledDisk:
    return LeveledDisk(g, v, tuple(map(tuple, cycles)))


# --------------------------------------------------------------------------
# hills


@dataclass(frozen=True)
class Hill:
    path_index: int
    start: int  # index of the first end in the linkage path
    stop: int  # index of the second end
    path: tuple
    sea_level: int
    cap: tuple  # subpath of C_sea_level from path[0] to path[-1]
    strip: bool = False


def _strip_ends(d):
    """Vertex sets of strip ends, keyed by exterior edge (if strips are known)."""
    return getattr(d, "edge_ends", None) or {}


def _cap(disk: LeveledDisk, J, sigma):
    """The arc of ``C_sigma`` that closes ``J`` into a disk avoiding ``v``."""
    g = disk.graph
    a, b = J[0], J[-1]
    D_out = disk.disks[-1]
    best = None
    for fwd in (True, False):
        K = disk.cycle_arc(sigma, a, b, fwd)
        loop = list(J) + K[::-1][1:-1]
        try:
            edges = _walk_edges(disk.index, loop, closed=True)
        except EmbeddingError:
            continue
        for s in _sides(g, edges):
            if not s <= D_out or region_euler(g, s) != 1:
                continue
            interior = region_vertices(g, s) - set(loop)
            if disk.v in interior:
                continue
            if best is None or len(K) < len(best):
                best = K
    return tuple(best) if best is not None else None


def find_hills(d, l: Linkage) -> list:
    """Every hill of ``l``, sorted by sea level, then cap length."""
    disk = getattr(d, "disk", d)
    lev = disk.level
    ext = disk.exterior_edges
    ends = _strip_ends(d)
    on = disk.cycle_of
    out = []
    for pi, P in enumerate(l.paths):
        for a in range(len(P) - 1):
            sigma = lev[P[a]]
            if on.get(P[a]) != sigma:
                continue
            b = a + 1
            while b < len(P) and lev[P[b]] > sigma:
                b += 1
            if b == len(P) or lev[P[b]] != sigma or on.get(P[b]) != sigma:
                continue
            J = tuple(P[a:b + 1])
            edges = _walk_edges(disk.index, list(J))
            if b == a + 1:
                e = edges[0]
                if e in ext:
                    strip = ends.get(e)
                    if strip is None:
                        continue
                    for end in strip:
                        if J[0] in end and J[1] in end:
                            K = _end_arc(disk, end, J[0], J[1])
                            out.append(Hill(pi, a, b, J, sigma, K, True))
                    continue
                c = disk.cycles[sigma - 1]
                n = len(c)
                i, j = c.index(J[0]), c.index(J[1])
                if (i - j) % n in (1, n - 1):
                    continue  # an edge of the cycle itself
            elif any(x in ext for x in edges) or any(lev[x] > disk.t for x in J):
                continue  # general strip excursions are not classified
            K = _cap(disk, J, sigma)
            if K is not None:
                out.append(Hill(pi, a, b, J, sigma, K))
    out.sort(key=lambda h: (h.sea_level, len(h.cap), h.path_index, h.start))
    return out


def _end_arc(disk: LeveledDisk, end, a, b) -> tuple:
    """The arc of ``C_t`` from ``a`` to ``b`` that stays inside a strip end."""
    for fwd in (True, False):
        K = disk.cycle_arc(disk.t, a, b, fwd)
        if set(K) <= set(end):
            return tuple(K)
    raise InsulationError("strip end is not an arc of the outer cycle")


def is_hill_free(d, l: Linkage) -> bool:
    return not find_hills(d, l)


class HillError(RuntimeError):
    """No hill could be rerouted (every cap is blocked by the linkage)."""


@dataclass
class HillStep:
    hill: Hill
    potential_before: int
    potential_after: int


def eliminate_hills(d, p: Pattern | None, l: Linkage, *, log: list | None = None,
                    max_steps: int | None = None) -> Linkage:
    """Reroute hills through their caps until none is left.

    Each round takes the hill of lowest sea level, then shortest cap, whose
    cap interior is unused by the linkage.  ``p`` may be ``None`` for a plain
    path family (only disjointness is then checked).
    """
    disk = getattr(d, "disk", d)
    g = disk.graph
    if p is not None and not verify(g, p, l):
        raise ValueError("input is not a valid linkage for the pattern")
    if p is None and len(l.vertices) != sum(len(x) for x in l.paths):
        raise ValueError("input paths are not disjoint")
    paths = [list(x) for x in l.paths]
    limit = max_steps if max_steps is not None else 4 * len(g.rotation) ** 2 + 10
    for _ in range(limit):
        cur = Linkage(tuple(paths))
        hills = find_hills(d, cur)
        if not hills:
            return cur
        used = cur.vertices
        for h in hills:
            if all(x not in used for x in h.cap[1:-1]):
                break
        else:
            raise HillError(f"{len(hills)} hills left, every cap is blocked")
        before = disk.potential(cur)
        P = paths[h.path_index]
        paths[h.path_index] = P[: h.start] + list(h.cap) + P[h.stop + 1:]
        after = disk.potential(Linkage(tuple(paths)))
        if log is not None:
            log.append(HillStep(h, before, after))
    raise HillError("hill elimination did not finish")


def is_decreasing(disk: LeveledDisk, path) -> bool:
    """Levels never increase along ``path`` (read from its first vertex)."""
    lev = disk.level
    return all(lev[b] <= lev[a] for a, b in zip(path, path[1:]))


def make_decreasing(d, a, i: int, *, rng=None, stats: dict | None = None) -> list:
    """``|a|`` disjoint paths from ``a`` on the outer cycle down to ``C_i``.

    Levels are non-increasing along each path.  A maximum flow inside the
    outer disk is normalised by hill elimination; if a path is still not
    monotone (possible when vertices sit strictly between cycles) a flow
    restricted to level-non-increasing arcs is used instead.  ``rng``
    randomises the initial flow (it then tends to wander).
    """
    disk = getattr(d, "disk", d)
    a = list(dict.fromkeys(a))
    if not 1 <= i <= disk.t:
        raise ValueError(f"target level {i} outside 1..{disk.t}")
    outer = set(disk.cycles[-1])
    if not set(a) <= outer:
        raise ValueError("sources must lie on the outer cycle")
    target = list(disk.cycles[i - 1])
    lev = disk.level
    ext = disk.exterior_edges
    adj = {x: set() for x in disk.graph.rotation if lev[x] <= disk.t}
    for e, (u, w) in disk.graph.edges.items():
        if e in ext or u == w or u not in adj or w not in adj:
            continue
        adj[u].add(w)
        adj[w].add(u)
    M = Gammoid(adj, a, target)
    r = M.rank(a)
    if r < len(a):
        raise ValueError(f"rank deficient: only {r} of {len(a)} disjoint paths reach C_{i}")
    tset = set(target)
    paths = []
    kw = {"rng": rng, "depth_first": True} if rng is not None else {}
    for P in M.flow(a, **kw).paths:
        cut = next(j for j, x in enumerate(P) if x in tset)
        paths.append(tuple(P[: cut + 1]))
    fam = Linkage(tuple(paths))
    log: list = []
    try:
        fam = eliminate_hills(disk, None, fam, log=log)
    except HillError:
        pass
    if stats is not None:
        stats["hills_removed"] = len(log)
    if all(is_decreasing(disk, P) for P in fam.paths) and _ends_ok(fam, tset):
        if stats is not None:
            stats["method"] = "hills"
        return [list(P) for P in fam.paths]
    if stats is not None:
        stats["method"] = "monotone-flow"
    dag = {x: {y for y in adj[x] if lev[y] <= lev[x]} for x in adj}
    res = _directed_flow(dag, a, tset)
    if len(res) < len(a):
        raise ValueError("no disjoint decreasing family exists")
    return res


def _ends_ok(fam, tset) -> bool:
    return all(P[-1] in tset and not (set(P[:-1]) & tset) for P in fam.paths)


def _directed_flow(dag, sources, targets) -> list:
    """Vertex-disjoint directed paths by unit augmentation on split vertices."""
    import networkx as nx

    H = nx.DiGraph()
    for x, ys in dag.items():
        H.add_edge(("in", x), ("out", x), capacity=1)
        for y in ys:
            if x not in targets:
                H.add_edge(("out", x), ("in", y), capacity=1)
    for s in sources:
        H.add_edge("S", ("in", s), capacity=1)
    for t in targets:
        H.add_edge(("out", t), "T", capacity=1)
    value, flow = nx.maximum_flow(H, "S", "T")
    paths = []
    for s in sources:
        if not flow["S"].get(("in", s)):
            continue
        P, cur = [s], s
        while cur not in targets:
            nxt = next(n for n, f in flow[("out", cur)].items() if f > 0 and n != "T")
            flow[("out", cur)][nxt] -= 1
            cur = nxt[1]
            P.append(cur)
        paths.append(P)
    return paths


# --------------------------------------------------------------------------
# disk with strips


@dataclass(frozen=True)
class Strip:
    kind: str  # "contractible" | "non-contractible"
    edges: tuple
    ends: tuple  # two arcs of the outer cycle, as vertex tuples
    homotopy_class: int

    @property
    def corners(self) -> set:
        return {end[0] for end in self.ends} | {end[-1] for end in self.ends}


@dataclass
class DiskWithStrips:
    disk: LeveledDisk
    strips: list
    signature: SurfaceSignature
    k: int
    classes: dict  # homotopy class index -> kind
    violations: list = field(default_factory=list)

    @property
    def contractible_classes(self) -> int:
        return sum(1 for kind in self.classes.values() if kind == "contractible")

    @property
    def noncontractible_classes(self) -> int:
        return sum(1 for kind in self.classes.values() if kind != "contractible")

    @property
    def edge_ends(self) -> dict:
        return {e: (frozenset(s.ends[0]), frozenset(s.ends[1]))
                for s in self.strips for e in s.edges}

    @property
    def ok(self) -> bool:
        return not self.violations


class _UF:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=order_key)] = min(ra, rb, key=order_key)


def _outer_side(g, barrier, D):
    """Regions cut by ``barrier`` that do not meet the disk faces ``D``."""
    return [s for s in _sides(g, barrier) if not (s & D)]


def _cap_of_edge(disk: LeveledDisk, e):
    g = disk.graph
    x, y = g.edges[e]
    D = disk.disks[-1]
    best = None
    for fwd in (True, False):
        K = disk.cycle_arc(disk.t, x, y, fwd)
        barrier = _walk_edges(disk.index, K) + [e]
        for s in _outer_side(g, barrier, D):
            if region_euler(g, s) == 1:
                key = (len(s), len(K))
                if best is None or key < best[0]:
                    best = (key, tuple(K) if fwd else tuple(K[::-1]))
    return best[1] if best else None


def _quad_disk(disk: LeveledDisk, e, f) -> tuple | None:
    """A pairing of the ends of ``e`` and ``f`` under which they co-bound a disk."""
    g = disk.graph
    D = disk.disks[-1]
    x1, y1 = g.edges[e]
    for x2, y2, flip in ((*g.edges[f], False), (*g.edges[f][::-1], True)):
        for fa, fb in itertools.product((True, False), repeat=2):
            Ka = disk.cycle_arc(disk.t, x2, x1, fa)
            Kb = disk.cycle_arc(disk.t, y1, y2, fb)
            if set(Ka) & set(Kb):
                continue
            barrier = [e, f] + _walk_edges(disk.index, Ka) + _walk_edges(disk.index, Kb)
            for s in _outer_side(g, barrier, D):
                if region_euler(g, s) == 1:
                    return (flip,)
    return None


def _arc_around(cycle, pts, avoid):
    """Shortest arc of ``cycle`` containing ``pts`` and none of ``avoid``."""
    n = len(cycle)
    pos = sorted(cycle.index(x) for x in set(pts))
    bad = {cycle.index(x) for x in avoid}
    best = None
    for i in range(len(pos)):
        start = pos[(i + 1) % len(pos)]
        stop = pos[i]
        arc = [(start + s) % n for s in range((stop - start) % n + 1)]
        if bad & set(arc):
            continue
        if best is None or len(arc) < len(best):
            best = arc
    if best is None:
        return None
    return tuple(cycle[j] for j in best)


def decompose(g: EmbeddedGraph, p: Pattern, v, cycles, *, split: bool = True) -> DiskWithStrips:
    """Group the edges outside the outermost disk into strips.

    Contractible edges are grouped by nesting of their caps on the outer
    cycle; two non-contractible edges are grouped when, together with two
    arcs of the outer cycle, they bound a disk.  With ``split`` every strip
    is cut at the terminals lying inside one of its ends.  Class-count
    bounds that fail are reported in ``violations``.
    """
    disk = LeveledDisk(g, v, tuple(map(tuple, cycles)))
    sig = classify(g)
    t = disk.t
    lev = disk.level
    outside = sorted((x for x in g.rotation if lev[x] > t), key=order_key)
    if outside:
        raise InsulationError(f"vertices outside the outer disk: {outside[:5]!r}")
    inner = region_vertices(g, disk.disks[-1]) - set(disk.cycles[-1])
    if p.terminals & inner:
        raise InsulationError("a terminal lies inside the outer disk")
    ext = sorted(disk.exterior_edges, key=order_key)
    cycle_edges_ = set()
    for c in disk.cycles:
        cycle_edges_ |= set(_walk_edges(disk.index, list(c), closed=True))
    for e, (a, b) in g.edges.items():
        if e in ext or e in cycle_edges_:
            continue
        ca, cb = disk.cycle_of.get(a), disk.cycle_of.get(b)
        if ca is not None and ca == cb:
            raise InsulationError(f"cycle {ca} is not induced: chord {e!r}")
    for e in ext:
        a, b = g.edges[e]
        if disk.cycle_of.get(a) != t or disk.cycle_of.get(b) != t or a == b:
            raise InsulationError(f"exterior edge {e!r} does not join two outer-cycle vertices")

    caps = {e: _cap_of_edge(disk, e) for e in ext}
    uf = _UF()
    for e in ext:
        uf.find((e, 0))
        uf.find((e, 1))
    contractible = [e for e in ext if caps[e] is not None]
    rest = [e for e in ext if caps[e] is None]
    for e, f in itertools.combinations(contractible, 2):
        pe, pf = set(caps[e]), set(caps[f])
        if pe <= pf or pf <= pe:
            uf.union((e, 0), (f, 0))
            uf.union((e, 1), (f, 1))
    for e, f in itertools.combinations(rest, 2):
        got = _quad_disk(disk, e, f)
        if got is not None:
            flip = got[0]
            uf.union((e, 0), (f, 1 if flip else 0))
            uf.union((e, 1), (f, 0 if flip else 1))

    def endpoint(e, side):
        x, y = g.edges[e]
        if caps[e] is not None:  # orient along the cap
            x, y = caps[e][0], caps[e][-1]
        return (x, y)[side]

    groups: dict = {}
    for e in ext:
        groups.setdefault(min(uf.find((e, 0)), uf.find((e, 1)), key=order_key), []).append(e)
    violations = []
    strips = []
    classes = {}
    outer = list(disk.cycles[-1])
    for ci, (root, es) in enumerate(sorted(groups.items(), key=lambda kv: order_key(kv[1][0]))):
        kind = "contractible" if caps[es[0]] is not None else "non-contractible"
        classes[ci] = kind
        ref = uf.find((es[0], 0))
        A, B = [], []
        oriented = []
        for e in es:
            s0 = 0 if uf.find((e, 0)) == ref else 1
            if uf.find((e, 1 - s0)) == ref:
                violations.append(f"class {ci}: edge {e!r} has both ends on one side")
            a, b = endpoint(e, s0), endpoint(e, 1 - s0)
            A.append(a)
            B.append(b)
            oriented.append((e, a, b))
        used = A + B
        if len(set(used)) != len(used):
            violations.append(f"class {ci}: edges do not form a matching")
        arc_a = _arc_around(outer, A, B)
        arc_b = _arc_around(outer, B, A)
        if arc_a is None or arc_b is None:
            violations.append(f"class {ci}: strip ends interleave")
            arc_a = arc_a or tuple(dict.fromkeys(A))
            arc_b = arc_b or tuple(dict.fromkeys(B))
        pieces = [(tuple(oriented), arc_a, arc_b)]
        if split:
            pieces = _split_at_terminals(pieces, p.terminals)
        for chunk, ea, eb in pieces:
            strips.append(Strip(kind, tuple(e for e, _, _ in chunk), (ea, eb), ci))
    nc, nn = (sum(1 for k in classes.values() if k == "contractible"),
              sum(1 for k in classes.values() if k != "contractible"))
    if nc > 2 * p.k:
        violations.append(f"{nc} contractible classes exceed 2k = {2 * p.k}")
    if nn > 3 * sig.genus():
        violations.append(f"{nn} non-contractible classes exceed 3g = {3 * sig.genus()}")
    return DiskWithStrips(disk, strips, sig, p.k, classes, violations)


def _split_at_terminals(pieces, terminals):
    """Cut strips so that no terminal lies strictly inside an end."""
    out = []
    todo = list(pieces)
    while todo:
        chunk, ea, eb = todo.pop()
        cut = None
        for which, arc in ((0, ea), (1, eb)):
            inner = [x for x in arc[1:-1] if x in terminals]
            if inner:
                cut = (which, inner[0])
                break
        if cut is None:
            out.append((chunk, ea, eb))
            continue
        which, x = cut
        arc = ea if which == 0 else eb
        pos = {y: i for i, y in enumerate(arc)}
        j = pos[x]
        first = [c for c in chunk if pos[c[1 + which]] <= j]
        second = [c for c in chunk if pos[c[1 + which]] > j]
        other = eb if which == 0 else ea
        opos = {y: i for i, y in enumerate(other)}

        def span(part, arc_, pos_, col, extra):
            idx = sorted(pos_[c[col]] for c in part) + extra
            return tuple(arc_[min(idx): max(idx) + 1])

        halves = []
        for part, extra in ((first, [j]), (second, [j])):
            if not part:
                continue
            own = span(part, arc, pos, 1 + which, extra)
            opp = span(part, other, opos, 2 - which, [])
            halves.append((tuple(part), *((own, opp) if which == 0 else (opp, own))))
        if len(halves) == 1 and halves[0][1:] == (ea, eb):
            out.append((chunk, ea, eb))  # terminal sits at the tip of a single edge
            continue
        todo.extend(halves)
    out.sort(key=lambda pc: order_key(pc[0][0][0]))
    return out


__all__ = [
    "DiskWithStrips",
    "Hill",
    "HillError",
    "HillStep",
    "InsulationError",
    "LeveledDisk",
    "Strip",
    "decompose",
    "eliminate_hills",
    "faces_at",
    "find_hills",
    "is_decreasing",
    "is_hill_free",
    "layer_count",
    "leveled_disk",
    "make_decreasing",
    "protection_depth",
]
