"""Combinatorial surfaces as graphs with a signed rotation system.

A half-edge is a pair ``(edge_id, end)`` with ``end`` in ``{0, 1}``; ``end``
selects which endpoint of the edge the half-edge sits at.  A *dart* is a
pair ``(half_edge, eps)`` meaning "leave the vertex along ``half_edge``
with local orientation ``eps``".  Face tracing is a permutation on darts;
every face is traced twice (once per direction), so a face is stored as a
pair of dart orbits and identified by its smallest dart.

Holes are faces marked as boundary components.  The surface described by an
embedding is the closed surface obtained by gluing a disk into every face,
minus the open hole disks, so ``euler = V - E + (faces - holes)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

Vertex = Hashable
EdgeId = Hashable
HalfEdge = tuple  # (edge id, end)
Dart = tuple  # (half-edge, +1 | -1)


class EmbeddingError(ValueError):
    """Malformed embedding, path or surface request."""


def order_key(x):
    """Total order over the mixed identifiers used for vertices and edges."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, (int, float)):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(order_key(y) for y in x))
    return (3, repr(x))


def dart_key(d: Dart):
    (e, end), eps = d
    return (order_key(e), end, -eps)


class Split(NamedTuple):
    """Copy of a vertex created by slitting along a path."""

    vertex: Hashable
    side: str


class Slit(NamedTuple):
    """Copy of an edge created by slitting along a path."""

    edge: Hashable
    side: str


# --------------------------------------------------------------------------
# signatures


@dataclass(frozen=True)
class SurfaceSignature:
    """The surface with ``a`` handles, ``b`` crosscaps and ``c`` holes.

    Stored in Dyck normal form: when ``b > 0`` the handles are traded for
    crosscaps, so equal signatures mean homeomorphic surfaces.
    """

    a: int = 0
    b: int = 0
    c: int = 0

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise EmbeddingError(f"negative surface parameter in {self!r}")
        if self.b > 0 and self.a > 0:
            object.__setattr__(self, "b", 2 * self.a + self.b)
            object.__setattr__(self, "a", 0)

    def genus(self) -> int:
        return 2 * self.a + self.b

    def euler(self) -> int:
        return 2 - 2 * self.a - self.b - self.c

    def orientable(self) -> bool:
        return self.b == 0

    @classmethod
    def from_euler(cls, euler: int, holes: int, orientable: bool) -> "SurfaceSignature":
        g = 2 - euler - holes
        if g < 0 or (orientable and g % 2):
            raise EmbeddingError(
                f"no surface with euler={euler}, holes={holes}, orientable={orientable}"
            )
        if orientable:
            return cls(g // 2, 0, holes)
        if g == 0:
            raise EmbeddingError("non-orientable surface with genus 0")
        return cls(0, g, holes)

    def __str__(self):
        return f"Σ({self.a},{self.b},{self.c})"


# --------------------------------------------------------------------------
# embedded graphs


@dataclass(frozen=True, eq=False)
class EmbeddedGraph:
    """Graph with a signed rotation system and marked hole faces.

    ``edges`` maps an edge id to its ``(u, v)`` endpoints, ``rotation`` maps
    every vertex to the cyclic tuple of its half-edges, ``sign`` maps edges to
    ``+1``/``-1``.  ``holes`` holds one dart per hole face; it is normalised
    to the canonical face ids on construction.
    """

    edges: Mapping[EdgeId, tuple]
    rotation: Mapping[Vertex, tuple]
    sign: Mapping[EdgeId, int] = field(default_factory=dict)
    holes: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "edges", dict(self.edges))
        object.__setattr__(
            self, "rotation", {v: tuple(hs) for v, hs in self.rotation.items()}
        )
        sign = {e: self.sign.get(e, 1) for e in self.edges}
        object.__setattr__(self, "sign", sign)
        self._validate()
        object.__setattr__(
            self, "holes", frozenset(self.face_of(d) for d in self.holes)
        )

    # -- validation ---------------------------------------------------------

    def _validate(self):
        seen = {}
        for v, hs in self.rotation.items():
            for h in hs:
                if not (isinstance(h, tuple) and len(h) == 2 and h[1] in (0, 1)):
                    raise EmbeddingError(f"bad half-edge {h!r} at vertex {v!r}")
                if h in seen:
                    raise EmbeddingError(f"half-edge {h!r} appears twice in the rotation")
                e, end = h
                if e not in self.edges:
                    raise EmbeddingError(f"half-edge {h!r} refers to unknown edge")
                if self.edges[e][end] != v:
                    raise EmbeddingError(
                        f"half-edge {h!r} sits at {v!r} but edge {e!r} has ends {self.edges[e]!r}"
                    )
                seen[h] = v
        for e, (u, v) in self.edges.items():
            for end in (0, 1):
                if (e, end) not in seen:
                    raise EmbeddingError(f"half-edge {(e, end)!r} missing from the rotation")
            if self.sign[e] not in (1, -1):
                raise EmbeddingError(f"edge {e!r} has sign {self.sign[e]!r}")

    # -- basic structure ----------------------------------------------------

    @property
    def vertices(self) -> list:
        return sorted(self.rotation, key=order_key)

    @cached_property
    def _where(self) -> dict:
        return {h: (v, i) for v, hs in self.rotation.items() for i, h in enumerate(hs)}

    def vertex_of(self, h: HalfEdge) -> Vertex:
        return self.edges[h[0]][h[1]]

    def succ(self, h: HalfEdge, eps: int = 1) -> HalfEdge:
        v, i = self._where[h]
        hs = self.rotation[v]
        return hs[(i + eps) % len(hs)]

    def step(self, dart: Dart) -> Dart:
        """Face-tracing successor of a dart."""
        (e, end), eps = dart
        eps2 = eps * self.sign[e]
        return (self.succ((e, 1 - end), eps2), eps2)

    def reverse(self, dart: Dart) -> Dart:
        """The dart of the same corner traced in the opposite direction."""
        h, eps = dart
        return (self.succ(h, -eps), -eps)

    @cached_property
    def _faces(self):
        darts = sorted(
            ((h, eps) for h in self._where for eps in (1, -1)), key=dart_key
        )
        orbit_of = {}
        orbits = []
        for d in darts:
            if d in orbit_of:
                continue
            orb = []
            x = d
            while x not in orbit_of:
                orbit_of[x] = len(orbits)
                orb.append(x)
                x = self.step(x)
            orbits.append(orb)
        face_id = {}
        faces = {}
        for idx, orb in enumerate(orbits):
            if idx in face_id:
                continue
            ridx = orbit_of[self.reverse(orb[0])]
            rep = min(orb + (orbits[ridx] if ridx != idx else []), key=dart_key)
            face_id[idx] = face_id[ridx] = rep
            # keep the orbit that contains the representative as the main walk
            main = orb if rep in orb else orbits[ridx]
            start = main.index(rep)
            faces[rep] = main[start:] + main[:start]
        dart_face = {d: face_id[i] for d, i in orbit_of.items()}
        return faces, dart_face

    @property
    def faces(self) -> dict:
        """Face id -> walk (list of darts) of one of its two tracings."""
        return self._faces[0]

    def face_of(self, dart: Dart):
        try:
            return self._faces[1][dart]
        except KeyError:
            raise EmbeddingError(f"{dart!r} is not a dart of this embedding") from None

    def face_vertices(self, face) -> list:
        return [self.vertex_of(h) for h, _ in self.faces[face]]

    def face_edges(self, face) -> list:
        return [h[0] for h, _ in self.faces[face]]

    def edge_faces(self, e) -> tuple:
        """The faces on the two sides of edge ``e`` (possibly equal)."""
        h = (e, 0)
        return self.face_of((h, 1)), self.face_of((h, -1))

    def hole_walks(self) -> dict:
        return {f: self.face_vertices(f) for f in sorted(self.holes, key=dart_key)}

    def hole_vertices(self) -> set:
        return {v for f in self.holes for v in self.face_vertices(f)}

    def hole_edges(self) -> set:
        return {e for f in self.holes for e in self.face_edges(f)}

    def neighbors(self, v) -> list:
        out = []
        for e, end in self.rotation[v]:
            out.append(self.edges[e][1 - end])
        return out

    def components(self) -> list:
        seen = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            seen.add(v)
            while queue:
                x = queue.popleft()
                for y in self.neighbors(x):
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        queue.append(y)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def orientable(self) -> bool:
        """True iff vertex flips can make every edge sign +1."""
        flip = {}
        for root in self.vertices:
            if root in flip:
                continue
            flip[root] = 1
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for e, end in self.rotation[x]:
                    y = self.edges[e][1 - end]
                    want = flip[x] * self.sign[e]
                    if y not in flip:
                        flip[y] = want
                        queue.append(y)
                    elif flip[y] != want:
                        return False
        return True

    def num_faces(self) -> int:
        n = len(self.faces)
        # an isolated vertex is a sphere with a single face
        n += sum(1 for v, hs in self.rotation.items() if not hs)
        return n

    def euler(self) -> int:
        return len(self.rotation) - len(self.edges) + self.num_faces() - len(self.holes)

    def restrict(self, vertices: Iterable) -> "EmbeddedGraph":
        """The embedding induced on a union of connected components."""
        vs = set(vertices)
        edges = {e: uv for e, uv in self.edges.items() if uv[0] in vs}
        if any(uv[1] not in vs for uv in edges.values()):
            raise EmbeddingError("restrict() needs a union of components")
        holes = [f for f in self.holes if self.vertex_of(f[0]) in vs]
        return EmbeddedGraph(
            edges,
            {v: self.rotation[v] for v in vs},
            {e: self.sign[e] for e in edges},
            frozenset(holes),
        )

    def delete_edges(self, dead: Iterable, drop_vertices: Iterable = ()) -> "EmbeddedGraph":
        """Remove edges (and optionally vertices); holes follow a surviving dart."""
        gone_v = set(drop_vertices)
        dead = set(dead) | {
            e for e, (u, v) in self.edges.items() if u in gone_v or v in gone_v
        }
        edges = {e: uv for e, uv in self.edges.items() if e not in dead}
        rotation = {
            v: tuple(h for h in hs if h[0] in edges)
            for v, hs in self.rotation.items()
            if v not in gone_v
        }
        holes = []
        for f in self.holes:
            for h, eps in self.faces[f]:
                if h[0] in edges:
                    holes.append((h, eps))
                    break
        sign = {e: self.sign[e] for e in edges}
        return EmbeddedGraph(edges, rotation, sign, frozenset(holes))

    def delete_vertices(self, dead: Iterable) -> "EmbeddedGraph":
        """Remove vertices and incident edges; holes follow a surviving dart."""
        return self.delete_edges((), dead)

    def to_networkx(self):
        import networkx as nx

        G = nx.MultiGraph()
        G.add_nodes_from(self.rotation)
        for e, (u, v) in self.edges.items():
            G.add_edge(u, v, key=e, sign=self.sign[e])
        return G

    def simple_graph(self):
        """Underlying simple graph (loops dropped, parallels merged)."""
        import networkx as nx

        G = nx.Graph()
        G.add_nodes_from(self.rotation)
        G.add_edges_from((u, v) for u, v in self.edges.values() if u != v)
        return G

    def with_holes(self, darts: Iterable) -> "EmbeddedGraph":
        return EmbeddedGraph(self.edges, self.rotation, self.sign, frozenset(darts))

    def __repr__(self):
        return (
            f"EmbeddedGraph(|V|={len(self.rotation)}, |E|={len(self.edges)}, "
            f"faces={len(self.faces)}, holes={len(self.holes)})"
        )


# --------------------------------------------------------------------------
# classification


def classify(g: EmbeddedGraph) -> SurfaceSignature:
    """Signature of the surface a connected embedding lives on."""
    if not g.rotation:
        raise EmbeddingError("empty embedding")
    if not g.is_connected():
        raise EmbeddingError("classify() needs a connected embedding")
    return SurfaceSignature.from_euler(g.euler(), len(g.holes), g.orientable())


def classify_components(g: EmbeddedGraph) -> list:
    """``[(vertex set, signature), ...]`` for every component."""
    out = []
    for comp in g.components():
        out.append((comp, classify(g.restrict(comp))))
    return out


# --------------------------------------------------------------------------
# boundary paths and cutting


@dataclass(frozen=True)
class BoundaryPath:
    """A simple path whose ends lie on holes and whose interior avoids them."""

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @property
    def ends(self) -> tuple:
        return self.vertices[0], self.vertices[-1]

    @classmethod
    def through(cls, g: EmbeddedGraph, vertices: Sequence) -> "BoundaryPath":
        """Build a path from its vertex sequence; parallel edges are ambiguous."""
        edges = []
        for u, v in zip(vertices, vertices[1:]):
            cands = [
                e for e, (a, b) in g.edges.items() if {a, b} == {u, v} and a != b
            ]
            if len(cands) != 1:
                raise EmbeddingError(f"{len(cands)} edges join {u!r} and {v!r}")
            edges.append(cands[0])
        return cls(tuple(vertices), tuple(edges))

    def reversed(self) -> "BoundaryPath":
        return BoundaryPath(self.vertices[::-1], self.edges[::-1])


def _hole_containing(g: EmbeddedGraph, v):
    found = [f for f in g.holes if v in g.face_vertices(f)]
    if not found:
        raise EmbeddingError(f"path end {v!r} is not on a hole")
    if len(found) > 1:
        raise EmbeddingError(f"path end {v!r} lies on several holes")
    return found[0]


def check_boundary_path(g: EmbeddedGraph, p: BoundaryPath) -> tuple:
    """Validate ``p`` against ``g``; returns the hole ids of its two ends."""
    vs, es = p.vertices, p.edges
    if len(vs) < 2 or len(es) != len(vs) - 1:
        raise EmbeddingError("a boundary path needs at least one edge")
    if len(set(vs)) != len(vs):
        raise EmbeddingError("path is not simple")
    for i, e in enumerate(es):
        if e not in g.edges or set(g.edges[e]) != {vs[i], vs[i + 1]}:
            raise EmbeddingError(f"edge {e!r} does not join {vs[i]!r} and {vs[i + 1]!r}")
    on_holes = g.hole_vertices()
    for v in vs[1:-1]:
        if v in on_holes:
            raise EmbeddingError(f"internal path vertex {v!r} lies on a hole")
    hole_edges = g.hole_edges()
    for e in es:
        if e in hole_edges:
            raise EmbeddingError(f"path edge {e!r} runs along a hole")
    return _hole_containing(g, vs[0]), _hole_containing(g, vs[-1])


def _cyc_slice(seq: Sequence, i: int, j: int) -> list:
    """Forward cyclic slice from index ``i`` to ``j`` inclusive."""
    n = len(seq)
    out = [seq[i]]
    while i != j:
        i = (i + 1) % n
        out.append(seq[i])
    return out


def _hole_gap(g: EmbeddedGraph, hole, v) -> int:
    """Index ``c`` such that the hole's corner at ``v`` sits before rotation[v][c]."""
    hits = [(h, eps) for h, eps in g.faces[hole] if g.vertex_of(h) == v]
    if len(hits) != 1:
        raise EmbeddingError(f"vertex {v!r} meets its hole {len(hits)} times")
    h, eps = hits[0]
    _, i = g._where[h]
    d = len(g.rotation[v])
    return i if eps == 1 else (i + 1) % d


def cut_along(g: EmbeddedGraph, p: BoundaryPath) -> EmbeddedGraph:
    """Slit the surface open along ``p``.

    Every path vertex is split into a ``Y`` and an ``X`` copy and every path
    edge is doubled.  The slit joins the hole(s) at the ends of ``p``; the
    Euler characteristic goes up by exactly one.
    """
    check_boundary_path(g, p)
    vs, es = p.vertices, p.edges
    k = len(es)
    # local orientation along the path
    eps = [1]
    for e in es:
        eps.append(eps[-1] * g.sign[e])

    def half_at(e, v):
        a, b = g.edges[e]
        return (e, 0) if a == v else (e, 1)

    sides = {}  # path vertex -> {'Y': [...], 'X': [...]}
    for i, v in enumerate(vs):
        R = g.rotation[v]
        where = {h: j for j, h in enumerate(R)}
        if 0 < i < k:
            h_in, h_out = half_at(es[i - 1], v), half_at(es[i], v)
            s1 = _cyc_slice(R, where[h_in], where[h_out])
            s2 = _cyc_slice(R, where[h_out], where[h_in])
            Y, X = (s1, s2) if eps[i] == 1 else (s2, s1)
        else:
            hole = _hole_containing(g, v)
            c = _hole_gap(g, hole, v)
            h = half_at(es[0], v) if i == 0 else half_at(es[-1], v)
            d = len(R)
            A = _cyc_slice(R, c, where[h])
            B = _cyc_slice(R, where[h], (c - 1) % d)
            if i == 0 or eps[i] == -1:
                Y, X = A, B
            else:
                Y, X = B, A
        sides[v] = {"Y": Y, "X": X}

    path_edges = set(es)
    path_vertices = set(vs)
    edges = {}
    sign = {}
    for e, (a, b) in g.edges.items():
        if e in path_edges:
            for s in "YX":
                edges[Slit(e, s)] = (Split(a, s), Split(b, s))
                sign[Slit(e, s)] = g.sign[e]
        else:
            edges[e] = [a, b]
            sign[e] = g.sign[e]
    rotation = {v: hs for v, hs in g.rotation.items() if v not in path_vertices}
    boundary = []
    for v in vs:
        for s in "YX":
            new = []
            for e, end in sides[v][s]:
                if e in path_edges:
                    new.append((Slit(e, s), end))
                else:
                    new.append((e, end))
                    edges[e][end] = Split(v, s)
            rotation[Split(v, s)] = tuple(new)
            boundary.append((new[0], 1))
    edges = {e: tuple(uv) for e, uv in edges.items()}
    for f in g.holes:
        for h, ep in g.faces[f]:
            if g.vertex_of(h) not in path_vertices:
                boundary.append((h, ep))
    out = EmbeddedGraph(edges, rotation, sign)
    return out.with_holes(boundary)


# --------------------------------------------------------------------------
# pseudotypes and types


@dataclass(frozen=True)
class Part:
    """One side of a separating path."""

    signature: SurfaceSignature
    holes: frozenset  # ids of original holes meeting this side
    boundary: frozenset  # original boundary vertices (path ends excluded)


@dataclass(frozen=True)
class Pseudotype:
    separating: bool
    parts: tuple = ()  # two Parts, sorted, when separating
    sides: int = 0  # genus drop when non-separating
    orientable_after: bool = True

    @property
    def label(self) -> str:
        if self.separating:
            return "separating(" + ", ".join(str(p.signature) for p in self.parts) + ")"
        arrow = "→" if self.orientable_after else "↛"
        return f"({self.sides},{arrow})"


def _part_key(part: Part):
    s = part.signature
    return (
        (s.a, s.b, s.c),
        sorted(dart_key(h) for h in part.holes),
        sorted(order_key(v) for v in part.boundary),
    )


def _original(v):
    return v.vertex if isinstance(v, Split) else v


def pseudotype(g: EmbeddedGraph, p: BoundaryPath) -> Pseudotype:
    """Homeomorphism class of the surface cut open along ``p``."""
    sig = classify(g)
    cut = cut_along(g, p)
    comps = cut.components()
    if len(comps) == 1:
        after = classify(cut)
        return Pseudotype(
            separating=False,
            sides=sig.genus() - after.genus(),
            orientable_after=after.orientable(),
        )
    ends = set(p.ends)
    hole_of = {}
    for f in g.holes:
        for v in g.face_vertices(f):
            hole_of.setdefault(v, set()).add(f)
    parts = []
    for comp in comps:
        csig = classify(cut.restrict(comp))
        originals = {_original(v) for v in comp}
        bverts = frozenset(v for v in originals if v in hole_of and v not in ends)
        holes = frozenset(
            h for v in originals if v in hole_of and v not in ends for h in hole_of[v]
        )
        parts.append(Part(csig, holes, bverts))
    parts.sort(key=_part_key)
    return Pseudotype(separating=True, parts=tuple(parts))


def _markers(g: EmbeddedGraph, hole, v) -> tuple:
    walk = g.face_vertices(hole)
    if len(walk) < 3:
        raise EmbeddingError("hole too short to place two marker points")
    i = walk.index(v)
    return walk[i - 1], walk[(i + 1) % len(walk)]


def _cyclic_order(walk: Sequence, points: Sequence) -> tuple:
    order = [v for v in walk if v in set(points)]
    if sorted(map(order_key, order)) != sorted(map(order_key, points)):
        raise EmbeddingError("marker points missing from the merged hole")
    return tuple(order)


def _same_cycle(a: Sequence, b: Sequence) -> bool:
    n = len(a)
    if n != len(b):
        return False
    for cand in (list(b), list(b)[::-1]):
        for r in range(n):
            if list(a) == cand[r:] + cand[:r]:
                return True
    return False


def same_type(g: EmbeddedGraph, p1: BoundaryPath, p2: BoundaryPath) -> bool:
    """Decide whether two boundary paths with the same ends have the same type."""
    if set(p1.ends) != set(p2.ends):
        raise EmbeddingError("paths do not share their ends")
    sig = classify(g)
    t1, t2 = pseudotype(g, p1), pseudotype(g, p2)
    if t1.separating != t2.separating:
        return False
    if t1.separating:
        return t1.parts == t2.parts
    if sig.orientable():
        return True
    x, y = p1.ends
    hx, hy = _hole_containing(g, x), _hole_containing(g, y)
    if hx == hy:
        return t1 == t2
    a, b = _markers(g, hx, x)
    c, d = _markers(g, hy, y)
    pts = (a, b, c, d)
    orders = []
    for p in (p1, p2):
        cut = cut_along(g, p)
        hole = next(f for f in cut.holes if a in cut.face_vertices(f))
        orders.append(_cyclic_order(cut.face_vertices(hole), pts))
    return _same_cycle(orders[0], orders[1])


# --------------------------------------------------------------------------
# constructions


def bouquet(a: int = 0, b: int = 0) -> EmbeddedGraph:
    """One-vertex, one-face embedding of the closed surface Σ(a, b, 0).

    The sphere is represented by a single untwisted loop (two faces).
    """
    edges, sign, rot = {}, {}, []
    n = 0
    for _ in range(a):
        x, y = n, n + 1
        n += 2
        rot += [(x, 0), (y, 0), (x, 1), (y, 1)]
        edges[x] = edges[y] = None
    for _ in range(b):
        x = n
        n += 1
        rot += [(x, 0), (x, 1)]
        edges[x] = None
        sign[x] = -1
    if n == 0:
        rot = [(0, 0), (0, 1)]
        edges[0] = None
    edges = {e: ("w", "w") for e in edges}
    return EmbeddedGraph(edges, {"w": tuple(rot)}, sign)


def _fresh(prefix, taken):
    i = 0
    while (prefix, i) in taken:
        i += 1
    return (prefix, i)


def subdivide_edge(g: EmbeddedGraph, e, pieces: int = 2) -> EmbeddedGraph:
    """Replace edge ``e`` by a path of ``pieces`` edges."""
    if pieces < 2:
        return g
    u, v = g.edges[e]
    edges = dict(g.edges)
    sign = dict(g.sign)
    rotation = dict(g.rotation)
    del edges[e]
    del sign[e]
    names = []
    mids = []
    for i in range(pieces):
        name = _fresh(("sub", e), set(edges) | set(names))
        names.append(name)
        edges[name] = None
    for i in range(pieces - 1):
        mid = _fresh(("mid", e), set(rotation) | set(mids))
        mids.append(mid)
        rotation[mid] = ()
    chain = [u] + mids + [v]
    for i, name in enumerate(names):
        edges[name] = (chain[i], chain[i + 1])
        sign[name] = g.sign[e] if i == 0 else 1
    for i, mid in enumerate(mids):
        rotation[mid] = ((names[i], 1), (names[i + 1], 0))

    def rename(hs, at_end, new):
        return tuple(new if h == (e, at_end) else h for h in hs)

    rotation[u] = rename(rotation[u], 0, (names[0], 0))
    rotation[v] = rename(rotation[v], 1, (names[-1], 1))
    holes = [_rename_dart(d, e, names) for d in _hole_darts(g)]
    return EmbeddedGraph(edges, rotation, sign, frozenset(holes))


def _hole_darts(g: EmbeddedGraph):
    return list(g.holes)


def _rename_dart(d, e, names):
    (f, end), eps = d
    if f != e:
        return d
    return ((names[0] if end == 0 else names[-1], end), eps)


def _insert_at_corners(rotation: dict, g: EmbeddedGraph, walk, new_half):
    """Insert ``new_half[i]`` into the corner where ``walk[i]`` departs."""
    for (h, eps), n in zip(walk, new_half):
        v = g.vertex_of(h)
        hs = list(rotation[v])
        i = hs.index(h)
        hs.insert(i if eps == 1 else i + 1, n)
        rotation[v] = tuple(hs)


def star_face(g: EmbeddedGraph, face) -> EmbeddedGraph:
    """Add a vertex inside ``face`` joined to every corner of it."""
    walk = g.faces[face]
    if face in g.holes:
        raise EmbeddingError("cannot star a hole")
    edges, sign, rotation = dict(g.edges), dict(g.sign), dict(g.rotation)
    z = _fresh("star", set(rotation))
    names = []
    for i, (h, eps) in enumerate(walk):
        name = _fresh(("spoke", z), set(edges) | set(names))
        names.append(name)
        edges[name] = (g.vertex_of(h), z)
        sign[name] = eps
    _insert_at_corners(rotation, g, walk, [(n, 0) for n in names])
    rotation[z] = tuple((n, 1) for n in reversed(names))
    return EmbeddedGraph(edges, rotation, sign, g.holes)


def inset_face(g: EmbeddedGraph, face) -> tuple:
    """Place a smaller copy of ``face`` inside it; returns (graph, inner dart)."""
    walk = g.faces[face]
    k = len(walk)
    if k < 3:
        raise EmbeddingError("inset needs a face of length >= 3")
    edges, sign, rotation = dict(g.edges), dict(g.sign), dict(g.rotation)
    taken_v = set(rotation)
    ps = []
    for _ in range(k):
        p = _fresh("inset", taken_v)
        taken_v.add(p)
        ps.append(p)
    spokes, ring = [], []
    taken_e = set(edges)
    for i, (h, eps) in enumerate(walk):
        s = _fresh("ispoke", taken_e)
        taken_e.add(s)
        spokes.append(s)
        edges[s] = (g.vertex_of(h), ps[i])
        sign[s] = eps
    for i in range(k):
        r = _fresh("iring", taken_e)
        taken_e.add(r)
        ring.append(r)
        edges[r] = (ps[i], ps[(i + 1) % k])
        sign[r] = 1
    _insert_at_corners(rotation, g, walk, [(s, 0) for s in spokes])
    for i in range(k):
        rotation[ps[i]] = ((spokes[i], 1), (ring[i - 1], 1), (ring[i], 0))
    inner = ((ring[0], 0), 1)
    out = EmbeddedGraph(edges, rotation, sign, g.holes)
    return out, inner


def add_chord(g: EmbeddedGraph, face, i: int, j: int, name=None) -> EmbeddedGraph:
    """Join corners ``i`` and ``j`` of ``face`` by a new edge drawn inside it."""
    walk = g.faces[face]
    if face in g.holes:
        raise EmbeddingError("cannot draw a chord inside a hole")
    (hi, ei), (hj, ej) = walk[i], walk[j]
    u, w = g.vertex_of(hi), g.vertex_of(hj)
    edges, sign, rotation = dict(g.edges), dict(g.sign), dict(g.rotation)
    e = name if name is not None else _fresh("chord", set(edges))
    if e in edges:
        raise EmbeddingError(f"edge id {e!r} already used")
    edges[e] = (u, w)
    sign[e] = ei * ej
    _insert_at_corners(rotation, g, [walk[i]], [(e, 0)])
    # the second corner is located in the already-updated rotation
    hs = list(rotation[w])
    k = hs.index(hj)
    hs.insert(k if ej == 1 else k + 1, (e, 1))
    rotation[w] = tuple(hs)
    return EmbeddedGraph(edges, rotation, sign, g.holes)


def relabel(g: EmbeddedGraph) -> EmbeddedGraph:
    """Rename vertices to 0..n-1 and edges to 0..m-1 in a canonical order."""
    vmap = {v: i for i, v in enumerate(g.vertices)}
    emap = {e: i for i, e in enumerate(sorted(g.edges, key=order_key))}
    edges = {emap[e]: (vmap[u], vmap[v]) for e, (u, v) in g.edges.items()}
    rotation = {vmap[v]: tuple((emap[e], end) for e, end in hs) for v, hs in g.rotation.items()}
    sign = {emap[e]: s for e, s in g.sign.items()}
    holes = [((emap[h[0]], h[1]), eps) for h, eps in g.holes]
    return EmbeddedGraph(edges, rotation, sign, frozenset(holes))


def surface_embedding(a: int, b: int, c: int) -> EmbeddedGraph:
    """A triangulated embedding of Σ(a, b, c) with c vertex-disjoint holes.

    Loops of the one-vertex bouquet are subdivided into three edges, every
    face is starred, and ``c`` faces get a hole inset into them.
    """
    g = bouquet(a, b)
    for e in list(g.edges):
        g = subdivide_edge(g, e, 3)
    # face ids shift under starring, so track each face by one of its darts
    darts = [g.faces[f][0] for f in g.faces]
    for d in darts:
        g = star_face(g, g.face_of(d))
    holes = []
    targets = [g.faces[f][0] for f in sorted(g.faces, key=dart_key)]
    if c > len(targets):
        raise EmbeddingError("not enough faces for the requested holes")
    for d in targets[:c]:
        g, inner = inset_face(g, g.face_of(d))
        holes.append(inner)
    return relabel(g.with_holes(holes))


def planar_embedding(pos: Mapping, edges: Iterable, holes: Iterable = ()) -> EmbeddedGraph:
    """Rotation system of a straight-line drawing (counter-clockwise order).

    ``holes`` lists faces as vertex cycles; each is matched against the
    traced faces.
    """
    import math

    E = {}
    for i, (u, v) in enumerate(edges):
        E[i] = (u, v)
    around = {v: [] for v in pos}
    for e, (u, v) in E.items():
        around[u].append(((e, 0), v))
        around[v].append(((e, 1), u))
    rotation = {}
    for v, items in around.items():
        x0, y0 = pos[v]
        items.sort(key=lambda it: math.atan2(pos[it[1]][1] - y0, pos[it[1]][0] - x0))
        rotation[v] = tuple(h for h, _ in items)
    g = EmbeddedGraph(E, rotation)
    return g.with_holes(find_face(g, walk) for walk in holes)


def find_face(g: EmbeddedGraph, walk: Sequence):
    """The dart of the face whose vertex cycle is ``walk`` (up to rotation/reversal)."""
    hits = [f for f in g.faces if _same_cycle(list(walk), g.face_vertices(f))]
    if len(hits) != 1:
        raise EmbeddingError(f"{len(hits)} faces match the walk {list(walk)!r}")
    return hits[0]


# --------------------------------------------------------------------------
# face regions


def face_classes(g: EmbeddedGraph, barrier: Iterable, blocked: Iterable = ()) -> dict:
    """Group faces into regions connected across edges not in ``barrier``.

    Faces in ``blocked`` (e.g. holes) are left out and never crossed.
    Returns face id -> region index.
    """
    barrier = set(barrier)
    blocked = set(blocked)
    adj = {f: set() for f in g.faces if f not in blocked}
    for e in g.edges:
        if e in barrier:
            continue
        f1, f2 = g.edge_faces(e)
        if f1 in adj and f2 in adj and f1 != f2:
            adj[f1].add(f2)
            adj[f2].add(f1)
    cls = {}
    for f in sorted(adj, key=dart_key):
        if f in cls:
            continue
        idx = len(set(cls.values()))
        cls[f] = idx
        queue = deque([f])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in cls:
                    cls[y] = idx
                    queue.append(y)
    return cls


def region_euler(g: EmbeddedGraph, faces: Iterable) -> int:
    """Euler characteristic of the closure of a set of faces."""
    faces = list(faces)
    vs, es = set(), set()
    for f in faces:
        vs.update(g.face_vertices(f))
        es.update(g.face_edges(f))
    return len(vs) - len(es) + len(faces)


def region_vertices(g: EmbeddedGraph, faces: Iterable) -> set:
    out = set()
    for f in faces:
        out.update(g.face_vertices(f))
    return out


def vertex_faces(g: EmbeddedGraph, v) -> list:
    """Faces around ``v`` in rotation order (one per corner)."""
    return [g.face_of((h, 1)) for h in g.rotation[v]]


def cycle_edges(g: EmbeddedGraph, cycle: Sequence) -> list:
    """Edge ids along a vertex cycle (unique edge per consecutive pair required)."""
    out = []
    n = len(cycle)
    for i in range(n):
        u, v = cycle[i], cycle[(i + 1) % n]
        cands = [e for e, (a, b) in g.edges.items() if {a, b} == {u, v} and a != b]
        if len(cands) != 1:
            raise EmbeddingError(f"{len(cands)} edges join {u!r} and {v!r}")
        out.append(cands[0])
    return out


__all__ = [
    "BoundaryPath",
    "EmbeddedGraph",
    "EmbeddingError",
    "Part",
    "Pseudotype",
    "Slit",
    "Split",
    "SurfaceSignature",
    "add_chord",
    "bouquet",
    "check_boundary_path",
    "classify",
    "classify_components",
    "cut_along",
    "cycle_edges",
    "face_classes",
    "find_face",
    "inset_face",
    "planar_embedding",
    "pseudotype",
    "region_euler",
    "region_vertices",
    "relabel",
    "same_type",
    "star_face",
    "subdivide_edge",
    "surface_embedding",
    "vertex_faces",
]
