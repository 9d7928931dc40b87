"""Plain-text formats for embedded graphs and patterns.

Graph files hold one record per line (``#`` starts a comment)::

    E <edge> <u> <v> [+1|-1]      edge with its two endpoints and sign
    V <vertex>: <h1> <h2> ...     rotation at the vertex, cyclic order
    HOLE <v1> <v2> ...            a hole, given by the vertex walk of its face

In a ``V`` line every token names an edge; the half-edge meant is the end
of that edge sitting at this vertex.  For a loop the two ends are written
``e`` (first end) and ``e'`` (second end).  Vertices without a ``V`` line
that occur in edges are an error; isolated vertices use an empty ``V``
line.  Identifiers that look like integers are read as ``int``; a token
with commas such as ``2,5`` is read as the tuple ``(2, 5)``.

Pattern files hold ``PAIR s t`` and ``SINGLE s`` lines.
"""
from __future__ import annotations

import re

from .pattern import Pattern
from .surface import EmbeddedGraph, EmbeddingError, find_face, order_key

_INT = re.compile(r"-?\d+$")


class FormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def parse_id(tok: str):
    """``"7"`` -> 7, ``"2,5"`` -> (2, 5), anything else stays a string."""
    if "," in tok:
        return tuple(parse_id(x) for x in tok.split(","))
    return int(tok) if _INT.match(tok) else tok


def _records(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def parse_graph(text: str) -> EmbeddedGraph:
    edges, sign, rotation, holes = {}, {}, {}, []
    vlines = []
    for n, line in _records(text):
        head, _, rest = line.partition(" ")
        if head == "E":
            parts = rest.split()
            if len(parts) not in (3, 4):
                raise FormatError(n, "expected 'E <id> <u> <v> [sign]'")
            e = parse_id(parts[0])
            if e in edges:
                raise FormatError(n, f"edge {e!r} defined twice")
            edges[e] = (parse_id(parts[1]), parse_id(parts[2]))
            s = parts[3] if len(parts) == 4 else "+1"
            if s not in ("+1", "1", "-1", "+", "-"):
                raise FormatError(n, f"bad sign {s!r}")
            sign[e] = -1 if s.startswith("-") else 1
        elif head == "V":
            name, colon, hs = rest.partition(":")
            if not colon:
                raise FormatError(n, "expected 'V <id>: <half-edges>'")
            vlines.append((n, parse_id(name.strip()), hs.split()))
        elif head == "HOLE":
            walk = [parse_id(t) for t in rest.split()]
            if not walk:
                raise FormatError(n, "empty hole walk")
            holes.append((n, walk))
        else:
            raise FormatError(n, f"unknown record {head!r}")
    seen = set()
    for n, v, toks in vlines:
        if v in rotation:
            raise FormatError(n, f"vertex {v!r} listed twice")
        hs = []
        for tok in toks:
            loop_end = tok.endswith("'")
            e = parse_id(tok[:-1] if loop_end else tok)
            if e not in edges:
                raise FormatError(n, f"unknown edge {e!r}")
            a, b = edges[e]
            if v not in (a, b):
                raise FormatError(n, f"edge {e!r} does not meet vertex {v!r}")
            if a == b:
                end = 1 if loop_end else 0
            elif loop_end:
                raise FormatError(n, f"{tok!r}: primes are only for loops")
            else:
                end = 0 if a == v else 1
            if (e, end) in seen:
                raise FormatError(n, f"half-edge {tok!r} used twice")
            seen.add((e, end))
            hs.append((e, end))
        rotation[v] = tuple(hs)
    for e, (a, b) in edges.items():
        for end, x in ((0, a), (1, b)):
            if (e, end) not in seen:
                raise EmbeddingError(f"half-edge of {e!r} at {x!r} missing from rotations")
    try:
        g = EmbeddedGraph(edges, rotation, sign)
    except EmbeddingError as exc:
        raise EmbeddingError(f"invalid embedding: {exc}") from None
    darts = []
    for n, walk in holes:
        try:
            darts.append(find_face(g, walk))
        except EmbeddingError as exc:
            raise FormatError(n, str(exc)) from None
    return g.with_holes(darts)


def _tok(x) -> str:
    if isinstance(x, tuple):
        parts = [_tok(y) for y in x]
        if len(parts) < 2 or any("," in y for y in parts):
            raise ValueError(f"identifier {x!r} cannot be written")
        return ",".join(parts)
    s = str(x)
    if not s or any(c.isspace() or c in "#:'," for c in s):
        raise ValueError(f"identifier {x!r} cannot be written")
    return s


def format_graph(g: EmbeddedGraph) -> str:
    out = []
    for e in sorted(g.edges, key=order_key):
        u, v = g.edges[e]
        out.append(f"E {_tok(e)} {_tok(u)} {_tok(v)} {'+1' if g.sign[e] > 0 else '-1'}")
    for v in sorted(g.rotation, key=order_key):
        toks = []
        for e, end in g.rotation[v]:
            a, b = g.edges[e]
            toks.append(_tok(e) + ("'" if a == b and end == 1 else ""))
        out.append(f"V {_tok(v)}: " + " ".join(toks))
    for walk in g.hole_walks().values():
        out.append("HOLE " + " ".join(map(_tok, walk)))
    return "\n".join(out) + "\n"


def parse_pattern(text: str, convert=parse_id) -> Pattern:
    items = []
    for n, line in _records(text):
        parts = line.split()
        if parts[0] == "PAIR" and len(parts) == 3:
            items.append((convert(parts[1]), convert(parts[2])))
        elif parts[0] == "SINGLE" and len(parts) == 2:
            items.append((convert(parts[1]),))
        else:
            raise FormatError(n, "expected 'PAIR s t' or 'SINGLE s'")
    try:
        return Pattern(tuple(items))
    except ValueError as exc:
        raise FormatError(0, str(exc)) from None


def format_pattern(p: Pattern) -> str:
    lines = []
    for item in p:
        if len(item) == 1:
            lines.append(f"SINGLE {_tok(item[0])}")
        else:
            lines.append(f"PAIR {_tok(item[0])} {_tok(item[1])}")
    return "\n".join(lines) + "\n"


def stringify(g: EmbeddedGraph) -> EmbeddedGraph:
    """Copy of ``g`` with every vertex and edge id replaced by a string token."""
    vmap = {v: _tok(v) for v in g.rotation}
    emap = {e: _tok(e) for e in g.edges}
    if len(set(vmap.values())) != len(vmap) or len(set(emap.values())) != len(emap):
        raise ValueError("identifiers collide once written as text")
    edges = {emap[e]: (vmap[u], vmap[v]) for e, (u, v) in g.edges.items()}
    rotation = {vmap[v]: tuple((emap[e], end) for e, end in hs) for v, hs in g.rotation.items()}
    sign = {emap[e]: s for e, s in g.sign.items()}
    holes = [((emap[h[0]], h[1]), eps) for h, eps in g.holes]
    return EmbeddedGraph(edges, rotation, sign, frozenset(holes))


__all__ = [
    "FormatError",
    "format_graph",
    "format_pattern",
    "parse_graph",
    "parse_id",
    "parse_pattern",
    "stringify",
]
