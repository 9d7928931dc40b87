import random

import networkx as nx
import pytest

from linkage_lab.generators import random_pattern, random_planar, web
from linkage_lab.pattern import Pattern, feasible
from linkage_lab.reducer import (
    SAFE,
    TRUSTING,
    depths,
    hunt_counterexample,
    reduce,
    redundancy_probe,
)
from linkage_lab.surface import planar_embedding

from oracles import linkable


def outer_pairs(crossing):
    if crossing:
        return Pattern((((4, 0), (4, 3)), ((4, 1), (4, 4))))
    return Pattern((((4, 0), (4, 1)), ((4, 3), (4, 4))))


def test_nothing_protected_leaves_graph_alone():
    g = planar_embedding({0: (0, 0), 1: (1, 0), 2: (2, 0), 3: (3, 0)}, [(0, 1), (1, 2), (2, 3)])
    p = Pattern(((0, 3),))
    out, log = reduce(g, p, 1)
    assert out is g and log.steps == [] and log.deleted == []
    assert log.initial_feasibility == log.final_feasibility == "feasible"


@pytest.mark.parametrize("crossing", [False, True])
def test_onion_centre_is_deleted_first(crossing):
    g, p = web(6, 4), outer_pairs(crossing)
    assert depths(g, p)["v"] >= 3
    before = feasible(g, p)
    out, log = reduce(g, p, 3)
    assert log.deleted[0] == "v" and "v" not in out.rotation
    assert feasible(out, p) == before
    for s in log.steps:
        assert s.before == s.after == before
    assert all(d < 3 for d in depths(out, p).values())


def test_steps_go_deepest_first():
    g, p = web(6, 4), outer_pairs(False)
    _, log = reduce(g, p, 2, mode=TRUSTING)
    ds = [s.depth for s in log.steps]
    assert ds[0] == max(depths(g, p).values())
    assert len(ds) > 1


def test_safe_mode_is_idempotent():
    rng = random.Random(3)
    for _ in range(15):
        g = random_planar(rng.randint(7, 12), rng, density=1.0)
        p = random_pattern(list(g.rotation), 2, rng)
        once, log1 = reduce(g, p, 1)
        twice, log2 = reduce(once, p, 1)
        assert log2.deleted == []
        assert set(twice.rotation) == set(once.rotation)
        assert log1.final_feasibility == log1.initial_feasibility


def test_safe_mode_preserves_feasibility_on_random_plane_graphs():
    rng = random.Random(17)
    for _ in range(40):
        g = random_planar(rng.randint(6, 12), rng, density=rng.choice((0.7, 1.0)))
        p = random_pattern(list(g.rotation), rng.randint(1, 2), rng)
        out, log = reduce(g, p, 1, mode=SAFE)
        assert not log.discrepancy
        assert feasible(out, p) == feasible(g, p)
        for s in log.steps:
            if s.action == "deleted":
                assert s.before == s.after


def nx_graph(g):
    G = nx.Graph()
    G.add_nodes_from(g.rotation)
    G.add_edges_from((u, v) for u, v in g.edges.values() if u != v)
    return G


def test_trusting_mode_reports_a_flip():
    # oracle search for a small plane instance where depth-1 deletions break it
    rng = random.Random(0)
    for _ in range(300):
        g = random_planar(rng.randint(6, 10), rng, density=rng.choice((0.6, 0.9, 1.0)))
        p = random_pattern(list(g.rotation), 2, rng)
        out, log = reduce(g, p, 1, mode=TRUSTING)
        if log.discrepancy:
            break
    else:
        pytest.fail("no depth-1 flip found")
    pairs = list(p.pairs)
    assert linkable(nx_graph(g), pairs) != linkable(nx_graph(out), pairs)
    _, safe = reduce(g, p, 1, mode=SAFE)
    assert not safe.discrepancy


def test_hunt_finds_a_shallow_counterexample():
    ce = hunt_counterexample(random.Random(0), depth=1, tries=300)
    assert ce is not None and ce.depth >= 1
    assert not redundancy_probe(ce.graph, ce.pattern, ce.vertex)


def test_probe_isolated_vertex_is_redundant():
    g = planar_embedding({0: (0, 0), 1: (1, 0), 9: (5, 5)}, [(0, 1)])
    assert redundancy_probe(g, Pattern(((0, 1),)), 9)


def test_probe_cut_vertex_is_not_redundant():
    g = planar_embedding({0: (0, 0), 1: (1, 0), 2: (2, 0)}, [(0, 1), (1, 2)])
    assert not redundancy_probe(g, Pattern(((0, 2),)), 1)


def test_probe_rejects_terminals():
    g = planar_embedding({0: (0, 0), 1: (1, 0)}, [(0, 1)])
    with pytest.raises(ValueError):
        redundancy_probe(g, Pattern(((0, 1),)), 0)


@pytest.mark.parametrize("t", [1, 2, 3])
def test_probe_onion_centre(t):
    g = web(6, t + 1)
    ring = t + 1
    for p in (Pattern((((ring, 0), (ring, 3)),)), Pattern((((ring, 0), (ring, 2)), ((ring, 3), (ring, 5))))):
        assert depths(g, p)["v"] >= t
        assert redundancy_probe(g, p, "v")


def test_reduce_argument_checks():
    g, p = web(5, 2), Pattern((((2, 0), (2, 2)),))
    with pytest.raises(ValueError):
        reduce(g, p, 0)
    with pytest.raises(ValueError):
        reduce(g, p, 1, mode="bold")
    with pytest.raises(ValueError):
        reduce(g, Pattern((("nope", (2, 2)),)), 1)


def test_log_serialises():
    g, p = web(6, 4), outer_pairs(False)
    _, log = reduce(g, p, 3)
    d = log.to_dict()
    assert d["mode"] == "safe" and d["threshold"] == 3
    assert d["steps"][0]["vertex"] == repr("v")
    assert not d["discrepancy"]
