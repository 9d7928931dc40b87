import itertools
import math
import random
from types import SimpleNamespace

import pytest

from linkage_lab.generators import (
    STRIP_FIXTURES,
    bumpy_linkage,
    random_linkage,
    random_planar,
    strip_fixture,
    web,
)
from linkage_lab.insulation import (
    HillError,
    InsulationError,
    LeveledDisk,
    decompose,
    eliminate_hills,
    find_hills,
    is_decreasing,
    is_hill_free,
    layer_count,
    make_decreasing,
    protection_depth,
)
from linkage_lab.pattern import Linkage, Pattern, cross_free, verify
from linkage_lab.surface import SurfaceSignature, classify, planar_embedding

from oracles import cap_by_cutting, homotopic_by_cutting, nested_cycle_depth


def rings(m, t):
    return [[(i, j) for j in range(m)] for i in range(1, t + 1)]


def nested_polygons(t, s=3):
    pos, edges = {"v": (0.0, 0.0)}, []
    for i in range(t):
        for j in range(s):
            ang = 2 * math.pi * j / s
            pos[(i, j)] = ((i + 1) * math.cos(ang), (i + 1) * math.sin(ang))
            edges.append(((i, j), (i, (j + 1) % s)))
            edges.append(("v" if i == 0 else (i - 1, j), (i, j)))
    return planar_embedding(pos, edges)


# -- protection depth


def test_no_separating_cycle():
    # the only cycle has the terminal 1 strictly on v's side
    pos = {"v": (0, 0), 1: (1, 0), 2: (2, 0), 3: (3, 1), 4: (3, -1)}
    g = planar_embedding(pos, [("v", 1), (1, 2), (2, 3), (3, 4), (4, 2)])
    assert protection_depth(g, "v", Pattern(((1,),)))[0] == 0


def test_terminals_may_sit_on_the_outer_cycle():
    pos = {"v": (0, 0), 1: (1, 0), 2: (-1, 1), 3: (-1, -1)}
    g = planar_embedding(pos, [("v", 1), (1, 2), (2, 3), (3, 1)])
    assert protection_depth(g, "v", Pattern(((1,),)))[0] == 1


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_nested_triangles(t):
    g = nested_polygons(t)
    p = Pattern((((t - 1, 0),),))
    depth, cycles = protection_depth(g, "v", p)
    assert depth == t == nested_cycle_depth(g, "v", [(t - 1, 0)])  # terminal on C_t
    assert protection_depth(g, "v")[0] == t == layer_count(g, "v")
    assert len(cycles) == depth
    assert all(len(c) == 3 for c in cycles)


def test_layers_sharing_a_vertex_count_once():
    pos, edges = {"v": (0, 0)}, []
    for i in range(3):
        for j in range(4):
            ang = math.pi / 2 * j
            pos[(i, j)] = ((i + 1) * math.cos(ang), (i + 1) * math.sin(ang))
            edges.append(((i, j), (i, (j + 1) % 4)))
    edges += [("v", (0, j)) for j in range(4)]
    # ring 1 touches ring 0 at (0, 0)
    edges = [tuple((0, 0) if x == (1, 0) else x for x in e) for e in edges]
    del pos[(1, 0)]
    edges += [((0, 2), (1, 2)), ((1, 2), (2, 2))]
    g = planar_embedding(pos, edges)
    depth, cycles = protection_depth(g, "v")
    assert depth == nested_cycle_depth(g, "v")
    flat = [x for c in cycles for x in c]
    assert len(flat) == len(set(flat))


def test_depth_matches_nested_cycle_oracle():
    rng = random.Random(1)
    for _ in range(60):
        n = rng.randint(4, 11)
        g = random_planar(n, rng, density=rng.choice([0.5, 0.8, 1.0]))
        v = rng.randrange(n)
        others = [x for x in range(n) if x != v]
        terms = rng.sample(others, rng.randint(0, min(3, len(others))))
        t, cycles = protection_depth(g, v, Pattern(tuple((x,) for x in terms)))
        assert t == nested_cycle_depth(g, v, terms)
        used = set()
        for c in cycles:
            assert used.isdisjoint(c)
            used.update(c)
        for c in cycles[:-1]:
            assert not set(terms) & set(c)  # only C_t may carry terminals


def test_terminal_has_no_depth():
    g = web(5, 2)
    with pytest.raises(ValueError):
        protection_depth(g, "v", Pattern((("v", (2, 0)),)))


# -- levels


def test_levels_on_a_web():
    g = web(6, 3)
    d = LeveledDisk(g, "v", rings(6, 3))
    assert d.t == 3 and d.level["v"] == 1
    for i in range(1, 4):
        assert all(d.level[(i, j)] == i for j in range(6))
    for e, (a, b) in g.edges.items():
        assert abs(d.level[a] - d.level[b]) <= 1


def test_leveled_disk_rejects_bad_cycles():
    g = web(6, 3)
    with pytest.raises(InsulationError):
        LeveledDisk(g, "v", [rings(6, 3)[1], rings(6, 3)[0]])  # not nested outward
    with pytest.raises((InsulationError, ValueError)):
        LeveledDisk(g, "v", [[(1, 0), (2, 0), (2, 1)]])  # not a cycle of the graph


# -- hills


def bump_instance():
    g = web(8, 3)
    d = LeveledDisk(g, "v", rings(8, 3))
    p = Pattern((((3, 0), (3, 4)),))
    return g, d, p


def test_hill_free_input_is_unchanged():
    g, d, p = bump_instance()
    l = Linkage((((3, 0), (3, 1), (3, 2), (3, 3), (3, 4)),))
    assert is_hill_free(d, l)
    assert eliminate_hills(d, p, l) == l


def test_single_bump():
    g, d, p = bump_instance()
    path = ((3, 0), (2, 0), (1, 0), (1, 1), (2, 1), (2, 2), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4))
    l = Linkage((path,))
    hills = find_hills(d, l)
    assert [(h.sea_level, h.cap) for h in hills] == [(1, ((1, 1), (1, 2)))]
    log = []
    out = eliminate_hills(d, p, l, log=log)
    assert verify(g, p, out) and is_hill_free(d, out)
    assert out.paths[0] == ((3, 0), (2, 0), (1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4))
    assert [s.potential_after < s.potential_before for s in log] == [True]


def test_nested_hills_go_lowest_first():
    g, d, p = bump_instance()
    path = ((3, 0), (2, 0), (1, 0), (1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (2, 3), (1, 3),
            (1, 4), (2, 4), (3, 4))
    l = Linkage((path,))
    levels = sorted(h.sea_level for h in find_hills(d, l))
    assert levels == [1, 2]
    log = []
    out = eliminate_hills(d, p, l, log=log)
    assert log[0].hill.sea_level == 1
    assert verify(g, p, out) and is_hill_free(d, out)
    assert all(s.potential_after < s.potential_before for s in log)


def test_invalid_linkage_rejected():
    g, d, p = bump_instance()
    with pytest.raises(ValueError):
        eliminate_hills(d, p, Linkage((((3, 0), (3, 2)),)))


def test_single_edge_in_a_strip_end_is_a_hill():
    g, p, v, cycles = strip_fixture("sphere")
    d = LeveledDisk(g, v, cycles)
    chord = next(e for e, ends in g.edges.items() if set(ends) == {(2, 1), (2, 3)})
    fake = SimpleNamespace(disk=d, edge_ends={
        chord: (frozenset({(2, 1), (2, 2), (2, 3)}), frozenset({(2, 9)})),
    })
    q = Pattern((((2, 0), (2, 4)),))
    l = Linkage((((2, 0), (2, 1), (2, 3), (2, 4)),))
    hills = find_hills(fake, l)
    assert len(hills) == 1 and hills[0].strip and hills[0].cap == ((2, 1), (2, 2), (2, 3))
    out = eliminate_hills(fake, q, l)
    assert out.paths == (((2, 0), (2, 1), (2, 2), (2, 3), (2, 4)),)
    # without strip information the chord is not classified
    assert find_hills(d, l) == []


def test_bumpy_corpus():
    rng = random.Random(5)
    with_hills = 0
    for _ in range(40):
        g, p, l, cycles = bumpy_linkage(rng.randint(8, 14), rng.randint(3, 5), rng,
                                        k=rng.randint(1, 2))
        assert verify(g, p, l)
        d = LeveledDisk(g, "v", cycles)
        with_hills += bool(find_hills(d, l))
        log = []
        out = eliminate_hills(d, p, l, log=log)
        assert verify(g, p, out) and is_hill_free(d, out)
        assert all(s.potential_after < s.potential_before for s in log)
    assert with_hills >= 5


def test_random_linkages_on_webs():
    rng = random.Random(3)
    for _ in range(30):
        m, t = rng.randint(5, 9), rng.randint(2, 4)
        g = web(m, t)
        ring = [(t, j) for j in range(m)]
        k = rng.randint(1, 2)
        while True:
            pick = rng.sample(ring, 2 * k)
            p = Pattern(tuple((pick[2 * i], pick[2 * i + 1]) for i in range(k)))
            if cross_free(p, ring):
                break
        l = random_linkage(g, p, rng)
        d = LeveledDisk(g, "v", rings(m, t))
        try:
            out = eliminate_hills(d, p, l)
        except HillError:
            continue
        assert verify(g, p, out) and is_hill_free(d, out)


# -- decreasing paths


def test_spokes_on_a_clean_web():
    g = web(6, 4)
    d = LeveledDisk(g, "v", rings(6, 4))
    a = [(4, 0), (4, 2), (4, 3)]
    paths = make_decreasing(d, a, 1)
    assert sorted(paths) == sorted([[(4, j), (3, j), (2, j), (1, j)] for j in (0, 2, 3)])


def test_decreasing_families():
    rng = random.Random(2)
    removed = 0
    for _ in range(60):
        m, t = rng.randint(5, 10), rng.randint(2, 5)
        d = LeveledDisk(web(m, t), "v", rings(m, t))
        a = rng.sample([(t, j) for j in range(m)], rng.randint(1, m))
        i = rng.randint(1, t)
        stats = {}
        paths = make_decreasing(d, a, i, rng=rng, stats=stats)
        assert sorted(P[0] for P in paths) == sorted(a)
        assert all(is_decreasing(d, P) and d.level[P[-1]] == i for P in paths)
        assert len({x for P in paths for x in P}) == sum(map(len, paths))
        removed += stats["hills_removed"]
    assert removed > 0  # some wandering flows were straightened


def test_rank_deficient_sources():
    m, t = 6, 3
    g = web(m, t)
    spokes = [e for e, (a, b) in g.edges.items()
              if {a[0] if isinstance(a, tuple) else 0, b[0] if isinstance(b, tuple) else 0} == {2, 3}
              and a[1] == b[1] and a[1] not in (0, 3)]
    g = g.delete_edges(spokes)
    d = LeveledDisk(g, "v", rings(m, t))
    with pytest.raises(ValueError, match="rank deficient"):
        make_decreasing(d, [(3, 0), (3, 1), (3, 3)], 1)
    assert len(make_decreasing(d, [(3, 0), (3, 3)], 1)) == 2


def test_bad_decreasing_requests():
    d = LeveledDisk(web(6, 3), "v", rings(6, 3))
    with pytest.raises(ValueError):
        make_decreasing(d, [(3, 0)], 4)
    with pytest.raises(ValueError):
        make_decreasing(d, [(2, 0)], 1)


# -- disk with strips


EXPECTED_SURFACE = {
    "sphere": SurfaceSignature(0, 0, 0),
    "sphere-bundles": SurfaceSignature(0, 0, 0),
    "torus": SurfaceSignature(1, 0, 0),
    "torus-split": SurfaceSignature(1, 0, 0),
    "projective": SurfaceSignature(0, 1, 0),
    "projective-mixed": SurfaceSignature(0, 1, 0),
}


@pytest.mark.parametrize("name", sorted(STRIP_FIXTURES))
def test_fixture_decomposition(name):
    g, p, v, cycles = strip_fixture(name)
    dws = decompose(g, p, v, cycles)
    assert dws.signature == classify(g) == EXPECTED_SURFACE[name]
    assert dws.ok, dws.violations
    assert dws.contractible_classes <= 2 * p.k
    assert dws.noncontractible_classes <= 3 * dws.signature.genus()
    ext = dws.disk.exterior_edges
    listed = [e for s in dws.strips for e in s.edges]
    assert sorted(listed, key=repr) == sorted(ext, key=repr)
    for s in dws.strips:
        ends = [set(x) for x in s.ends]
        seen = set()
        for e in s.edges:
            a, b = g.edges[e]
            assert a not in seen and b not in seen  # a matching
            seen |= {a, b}
            assert (a in ends[0] and b in ends[1]) or (a in ends[1] and b in ends[0])


@pytest.mark.parametrize("name", sorted(STRIP_FIXTURES))
def test_classes_agree_with_cutting(name):
    g, p, v, cycles = strip_fixture(name)
    dws = decompose(g, p, v, cycles, split=False)
    cls = {e: s.homotopy_class for s in dws.strips for e in s.edges}
    kind = {e: s.kind for s in dws.strips for e in s.edges}
    caps = {e: cap_by_cutting(g, cycles, e) for e in cls}
    for e in cls:
        assert (caps[e] is None) == (kind[e] != "contractible")
    for e, f in itertools.combinations(sorted(cls, key=repr), 2):
        if caps[e] is not None and caps[f] is not None:
            nested = caps[e] <= caps[f] or caps[f] <= caps[e]
            if nested:
                assert cls[e] == cls[f]
        elif caps[e] is None and caps[f] is None:
            assert homotopic_by_cutting(g, cycles, e, f) == (cls[e] == cls[f])
        else:
            assert cls[e] != cls[f]


def test_single_contractible_bundle():
    g, p, v, cycles = strip_fixture("sphere")
    sub = decompose(g, p, v, cycles)
    assert sub.noncontractible_classes == 0
    assert sub.contractible_classes == 2


def test_two_transverse_bundles_on_the_torus():
    g, p, v, cycles = strip_fixture("torus")
    dws = decompose(g, p, v, cycles)
    assert dws.noncontractible_classes == 2 <= 3 * 2


def test_terminal_inside_a_strip_end_splits_it():
    g, p, v, cycles = strip_fixture("torus-split")
    whole = decompose(g, p, v, cycles, split=False)
    split = decompose(g, p, v, cycles)
    assert len(split.strips) == len(whole.strips) + 1
    term = (2, 15)
    assert any(term in s.corners for s in split.strips)
    for s in split.strips:
        for end in s.ends:
            assert term not in end[1:-1]


def test_invalid_insulation():
    g, p, v, cycles = strip_fixture("sphere")
    with pytest.raises(InsulationError):
        decompose(g, Pattern((((1, 0), (2, 5)),)), v, cycles)  # terminal inside
    with pytest.raises((InsulationError, ValueError)):
        decompose(g, p, v, cycles[:1])  # vertices outside the last cycle
