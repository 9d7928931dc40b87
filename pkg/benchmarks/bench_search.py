"""Compare the compiled and pure-Python oracle kernels.

    python3 benchmarks/bench_search.py [--instances N] [--seed S]

Two corpora: random plane graphs with random patterns (mostly easy) and
webs carrying two interleaved pairs on the outer ring, which are
infeasible and force the search to exhaust every routing.  Both kernels
must return the same verdicts and node counts; only wall time differs.
"""
from __future__ import annotations

import argparse
import random
import time

from linkage_lab import pattern
from linkage_lab.generators import random_pattern, random_planar, web
from linkage_lab.pattern import Pattern


def corpus(n_instances, rng, sizes):
    out = []
    for _ in range(n_instances):
        n = rng.choice(sizes)
        g = random_planar(n, rng, density=rng.choice((0.5, 0.8, 1.0)))
        out.append((g, random_pattern(list(g.rotation), rng.choice((2, 3)), rng)))
    return out


def webs(shapes):
    out = []
    for m, t in shapes:
        h = m // 2
        out.append((web(m, t), Pattern((((t, 0), (t, h)), ((t, 1), (t, h + 1))))))
    return out


def run(kernel, instances, budget):
    verdicts, nodes = [], 0
    start = time.perf_counter()
    for g, p in instances:
        stats = {}
        try:
            found = pattern.solve_bruteforce(g, p, budget, stats=stats, kernel=kernel)
            verdicts.append(found is not None)
        except pattern.BudgetExceeded:
            verdicts.append(None)
        nodes += stats.get("nodes", budget or 0)
    return time.perf_counter() - start, verdicts, nodes


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=60)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--budget", type=int, default=2_000_000)
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 14, 18, 22])
    args = ap.parse_args(argv)
    rc = 0
    for name, instances in (
        ("random plane", corpus(args.instances, random.Random(args.seed), args.sizes)),
        ("interleaved webs", webs([(6, 3), (8, 3), (7, 4), (8, 4)])),
    ):
        print(f"== {name}: {len(instances)} instances, budget {args.budget}")
        rc |= compare(instances, args.budget)
    return rc


def compare(instances, budget):
    t_py, v_py, n_py = run("python", instances, budget)
    print(f"python : {t_py:8.3f} s  {n_py:>9} nodes  {n_py / max(t_py, 1e-9):>12,.0f} nodes/s")
    if pattern._csearch is None:
        print("cython : not built (install Cython and a C++ compiler, then reinstall)")
        return 0
    t_cy, v_cy, n_cy = run("cython", instances, budget)
    print(f"cython : {t_cy:8.3f} s  {n_cy:>9} nodes  {n_cy / max(t_cy, 1e-9):>12,.0f} nodes/s")
    print(f"speedup: {t_py / max(t_cy, 1e-9):.1f}x")
    if v_py != v_cy or n_py != n_cy:
        print("MISMATCH between kernels")
        return 1
    print("verdicts and node counts agree")
    return 0

if __name__ == "__main__":
    raise SystemExit(main())
