"""Irrelevant-vertex reduction driven by protection depth.

A vertex deep inside nested cycles is deleted.  In safe mode the oracle
confirms, before each deletion is committed, that the pattern stays exactly
as (in)feasible as before.  Trusting mode deletes without asking and can be
cross-checked afterwards.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .insulation import protection_depth
from .pattern import BudgetExceeded, Pattern, feasible, solve_bruteforce
from .surface import EmbeddedGraph, order_key

SAFE, TRUSTING = "safe", "trusting"


def _verdict(x: bool | None) -> str:
    return {True: "feasible", False: "infeasible", None: "unknown"}[x]


@dataclass
class ReductionStep:
    vertex: object
    depth: int
    mode: str
    action: str  # deleted | rejected | skipped-unknown
    before: bool | None = None
    after: bool | None = None


@dataclass
class ReductionLog:
    mode: str
    threshold: int
    steps: list = field(default_factory=list)
    final_graph: EmbeddedGraph | None = None
    initial_feasibility: str = "unknown"
    final_feasibility: str = "unknown"

    @property
    def deleted(self) -> list:
        return [s.vertex for s in self.steps if s.action == "deleted"]

    @property
    def discrepancy(self) -> bool:
        """Did the reduction change the oracle's answer?"""
        known = {"feasible", "infeasible"}
        return (self.initial_feasibility in known and self.final_feasibility in known
                and self.initial_feasibility != self.final_feasibility)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "threshold": self.threshold,
            "initial_feasibility": self.initial_feasibility,
            "final_feasibility": self.final_feasibility,
            "discrepancy": self.discrepancy,
            "steps": [
                {"vertex": repr(s.vertex), "depth": s.depth, "action": s.action,
                 "before": _verdict(s.before), "after": _verdict(s.after)}
                for s in self.steps
            ],
        }


def depths(g: EmbeddedGraph, p: Pattern) -> dict:
    """Protection depth of every non-terminal vertex."""
    terms = p.terminals
    return {v: protection_depth(g, v, p)[0] for v in g.rotation if v not in terms}


def _ranked(g, p, threshold, skip=()):
    found = [(d, v) for v, d in depths(g, p).items() if d >= threshold and v not in skip]
    found.sort(key=lambda dv: (-dv[0], order_key(dv[1])))
    return found


def reduce(g: EmbeddedGraph, p: Pattern, threshold: int, mode: str = SAFE,
           budget: int | None = None, cross_check: bool = True):
    """Delete protected vertices until none at depth ``>= threshold`` remains.

    Returns ``(reduced graph, ReductionLog)``.  Safe mode only commits a
    deletion when the oracle gives the same decided answer before and
    after; anything else is logged as rejected or skipped.
    """
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    if mode not in (SAFE, TRUSTING):
        raise ValueError(f"unknown mode {mode!r}")
    missing = [v for v in p.terminals if v not in g.rotation]
    if missing:
        raise ValueError(f"terminals not in the graph: {missing!r}")
    log = ReductionLog(mode, threshold)
    start = feasible(g, p, budget) if (mode == SAFE or cross_check) else None
    log.initial_feasibility = _verdict(start)
    cur = g
    if mode == SAFE:
        current = start
        tested: set = set()
        while True:
            ranked = _ranked(cur, p, threshold, tested)
            if not ranked:
                break
            depth, v = ranked[0]
            tested.add(v)
            nxt = cur.delete_vertices([v])
            after = feasible(nxt, p, budget)
            if current is None or after is None:
                log.steps.append(ReductionStep(v, depth, mode, "skipped-unknown", current, after))
            elif after != current:
                log.steps.append(ReductionStep(v, depth, mode, "rejected", current, after))
            else:
                log.steps.append(ReductionStep(v, depth, mode, "deleted", current, after))
                cur = nxt
                tested.clear()  # depths changed, so every vertex is fair game again
        log.final_feasibility = _verdict(current)
    else:
        while True:
            ranked = _ranked(cur, p, threshold)
            if not ranked:
                break
            depth, v = ranked[0]
            nxt = cur.delete_vertices([v])
            if cross_check:
                before, after = feasible(cur, p, budget), feasible(nxt, p, budget)
            else:
                before = after = None
            log.steps.append(ReductionStep(v, depth, mode, "deleted", before, after))
            cur = nxt
        if cross_check:
            log.final_feasibility = _verdict(feasible(cur, p, budget))
    log.final_graph = cur
    return cur, log


def redundancy_probe(g: EmbeddedGraph, p: Pattern, v, budget: int | None = None) -> bool:
    """Does ``G - v`` have a linkage exactly when ``G`` does?"""
    if v in p.terminals:
        raise ValueError(f"{v!r} is a terminal")
    with_v = solve_bruteforce(g, p, budget) is not None
    without = solve_bruteforce(g.delete_vertices([v]), p, budget) is not None
    return with_v == without


@dataclass
class Counterexample:
    graph: EmbeddedGraph
    pattern: Pattern
    vertex: object
    depth: int


def hunt_counterexample(rng: random.Random, *, depth: int = 1, tries: int = 500,
                        sizes=(5, 10), k: int = 2, budget: int | None = 200_000):
    """Search random plane graphs for a vertex at protection depth ``>= depth``
    whose deletion changes feasibility.  Returns a :class:`Counterexample`
    or ``None``."""
    from .generators import random_pattern, random_planar

    for _ in range(tries):
        n = rng.randint(*sizes)
        g = random_planar(n, rng, density=rng.choice((0.6, 0.9, 1.0)))
        if n < 2 * k + 1:
            continue
        p = random_pattern(list(g.rotation), k, rng)
        for v, d in sorted(depths(g, p).items(), key=lambda kv: order_key(kv[0])):
            if d < depth:
                continue
            try:
                if not redundancy_probe(g, p, v, budget):
                    return Counterexample(g, p, v, d)
            except BudgetExceeded:
                continue
    return None


__all__ = [
    "Counterexample",
    "ReductionLog",
    "ReductionStep",
    "SAFE",
    "TRUSTING",
    "depths",
    "hunt_counterexample",
    "reduce",
    "redundancy_probe",
]
