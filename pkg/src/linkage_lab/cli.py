"""Command-line entry point ``linkage-lab``.

Exit codes: 0 success, 1 negative answer (infeasible, violated
precondition, bound check failed), 2 unknown (oracle budget exhausted),
3 input error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import bounds, cylgrid, gammoid, insulation, reducer
from .pattern import BudgetExceeded, solve_bruteforce, verify
from .surface import EmbeddingError, SurfaceSignature, classify, classify_components, order_key
from .textio import FormatError, parse_graph, parse_id, parse_pattern

OK, NEGATIVE, UNKNOWN, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _graph(path):
    return parse_graph(_read(path))


def _pattern(path):
    return parse_pattern(_read(path))


def _ids(tokens) -> list:
    return [parse_id(t) for t in tokens]


def _fmt(v) -> str:
    return ",".join(map(str, v)) if isinstance(v, tuple) else str(v)


class Out:
    """Collects a result; prints it as text lines or one JSON document."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.data: dict = {}
        self.lines: list = []

    def text(self, line: str = ""):
        self.lines.append(line)

    def flush(self):
        if self.fmt == "json":
            print(json.dumps(self.data, indent=2, default=_json_default))
        else:
            for line in self.lines:
                print(line)


def _json_default(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x, key=order_key)
    return str(x)


# --------------------------------------------------------------------------
# subcommands


def cmd_classify(args, out: Out) -> int:
    g = _graph(args.graph)
    sig = classify(g)
    out.data = {"signature": str(sig), "a": sig.a, "b": sig.b, "c": sig.c,
                "euler_genus": sig.genus(), "euler_characteristic": sig.euler(),
                "vertices": len(g.rotation), "edges": len(g.edges), "faces": len(g.faces)}
    out.text(f"signature: {sig}")
    out.text(f"euler genus: {sig.genus()}  orientable: {'yes' if sig.orientable() else 'no'}")
    out.text(f"V={len(g.rotation)} E={len(g.edges)} F={len(g.faces)} holes={sig.c}")
    if args.components:
        comps = classify_components(g)
        out.data["components"] = [{"vertices": sorted(vs, key=order_key), "signature": str(s)}
                                  for vs, s in comps]
        for vs, s in comps:
            out.text(f"component of {len(vs)} vertices: {s}")
    return OK


def cmd_solve(args, out: Out) -> int:
    g, p = _graph(args.graph), _pattern(args.pattern)
    missing = [v for v in p.terminals if v not in g.rotation]
    if missing:
        raise InputError(f"terminals not in the graph: {', '.join(map(_fmt, missing))}")
    try:
        found = solve_bruteforce(g, p, args.budget)
    except BudgetExceeded as exc:
        out.data = {"verdict": "unknown", "nodes": exc.nodes}
        out.text(f"unknown: {exc}")
        return UNKNOWN
    if found is None:
        out.data = {"verdict": "infeasible"}
        out.text("infeasible")
        return NEGATIVE
    out.data = {"verdict": "feasible", "paths": [list(P) for P in found.paths]}
    for P in found.paths:
        out.text(" ".join(map(_fmt, P)))
    return OK


def cmd_grid(args, out: Out) -> int:
    grid = cylgrid.build(args.m, args.n)
    p = _pattern(args.pattern)
    try:
        l = cylgrid.realize(grid, p)
    except cylgrid.PreconditionError as exc:
        out.data = {"realized": False, "reason": str(exc)}
        out.text(f"precondition violated: {exc}")
        return NEGATIVE
    ok = verify(grid.graph, p, l)
    out.data = {"realized": True, "verified": ok, "paths": [list(P) for P in l.paths]}
    for P in l.paths:
        out.text(" ".join(map(_fmt, P)))
    return OK if ok else NEGATIVE


def cmd_rank(args, out: Out) -> int:
    g = _graph(args.graph)
    M = gammoid.Gammoid(g, _ids(args.v1), _ids(args.v2))
    subset = _ids(args.set) if args.set is not None else sorted(M.ground, key=order_key)
    res = M.flow(subset)
    indep = res.value == len(set(subset))
    out.data = {"rank": res.value, "size": len(set(subset)), "independent": indep,
                "paths": [list(P) for P in res.paths],
                "separator": sorted(res.separator, key=order_key)}
    out.text(f"rank: {res.value} of {len(set(subset))} ({'independent' if indep else 'dependent'})")
    for P in res.paths:
        out.text("  " + " ".join(map(_fmt, P)))
    out.text("separator: " + " ".join(_fmt(v) for v in sorted(res.separator, key=order_key)))
    return OK


def cmd_intersect(args, out: Out) -> int:
    ground = _ids(args.ground)
    g0 = gammoid.Gammoid(_graph(args.graph0), ground, _ids(args.targets0))
    g1 = gammoid.Gammoid(_graph(args.graph1), ground, _ids(args.targets1))
    cert = gammoid.matroid_intersection(g0, g1, args.target)
    srt = lambda xs: sorted(xs, key=order_key)  # noqa: E731
    out.data = {"size": cert.size, "common": srt(cert.common), "A": srt(cert.A), "B": srt(cert.B),
                "r0_A": cert.r0_A, "r1_B": cert.r1_B, "separator0": srt(cert.T),
                "separator1": srt(cert.U), "target": cert.target,
                "reaches_target": cert.reaches_target}
    out.text(f"maximum common independent set ({cert.size}): "
             + " ".join(_fmt(x) for x in srt(cert.common)))
    out.text(f"certificate: r0(A) + r1(B) = {cert.r0_A} + {cert.r1_B} = {cert.bound}")
    out.text("  A = " + " ".join(_fmt(x) for x in srt(cert.A)))
    out.text("  B = " + " ".join(_fmt(x) for x in srt(cert.B)))
    if args.target is not None:
        out.text(f"target {args.target}: {'reached' if cert.reaches_target else 'not reached'}")
    return OK if cert.reaches_target else NEGATIVE


def cmd_bounds(args, out: Out) -> int:
    limit = args.exact_limit
    kind = args.kind
    if kind == "theta":
        d = bounds.theta(args.k, args.n, limit)
    elif kind == "t":
        d = bounds.t_bound(SurfaceSignature(args.a, args.b, 0), args.k, limit)
    else:
        if kind == "m":
            val = bounds.m_bound(args.k, args.n)
        elif kind == "untangle":
            val = bounds.untangle_bound(args.k, args.n)
        else:
            val = bounds.omega_bound(args.k, args.n, args.C)
        out.data = {"bound": kind, "form": "exact", "value": str(val)}
        out.text(str(val))
        return OK
    out.data = {"bound": kind, "form": d.form, "value": str(d.exact) if d.exact is not None else None,
                "expression": bounds.render(d.expr, 2000), "log10": d.log10_text(),
                "digits_bound": d.digits_bound}
    out.text(str(d))
    return OK


def cmd_protect(args, out: Out) -> int:
    g = _graph(args.graph)
    p = _pattern(args.pattern) if args.pattern else None
    v = parse_id(args.vertex)
    if v not in g.rotation:
        raise InputError(f"vertex {args.vertex} not in the graph")
    t, cycles = insulation.protection_depth(g, v, p)
    out.data = {"vertex": v, "depth": t, "cycles": [list(c) for c in cycles]}
    out.text(f"protection depth of {_fmt(v)}: {t}")
    for i, c in enumerate(cycles, 1):
        out.text(f"  C{i}: " + " ".join(map(_fmt, c)))
    return OK


def cmd_decompose(args, out: Out) -> int:
    from .generators import strip_fixture

    if args.fixture:
        g, p, v, cycles = strip_fixture(args.fixture)
    else:
        if not (args.graph and args.pattern and args.vertex and args.cycles):
            raise InputError("give --fixture, or all of --graph --pattern --vertex --cycles")
        g, p, v = _graph(args.graph), _pattern(args.pattern), parse_id(args.vertex)
        cycles = [_ids(c.split()) for c in args.cycles]
    dws = insulation.decompose(g, p, v, cycles)
    k = dws.k
    out.data = {
        "signature": str(dws.signature), "k": k,
        "contractible_classes": dws.contractible_classes,
        "noncontractible_classes": dws.noncontractible_classes,
        "contractible_limit": 2 * k, "noncontractible_limit": 3 * dws.signature.genus(),
        "strips": [{"kind": s.kind, "class": s.homotopy_class, "edges": list(s.edges),
                    "ends": [list(e) for e in s.ends]} for s in dws.strips],
        "violations": list(dws.violations),
    }
    out.text(f"surface: {dws.signature}  k={k}  strips: {len(dws.strips)}")
    for s in dws.strips:
        ends = " | ".join(" ".join(map(_fmt, e)) for e in s.ends)
        out.text(f"  class {s.homotopy_class} {s.kind}: {len(s.edges)} edges, ends {ends}")
    out.text(f"contractible classes: {dws.contractible_classes} (limit {2 * k})")
    out.text(f"non-contractible classes: {dws.noncontractible_classes} "
             f"(limit {3 * dws.signature.genus()})")
    for msg in dws.violations:
        out.text(f"VIOLATION: {msg}")
    return OK if dws.ok else NEGATIVE


def _reduce_one(g, p, args):
    return reducer.reduce(g, p, args.threshold, args.mode, budget=args.budget)


def cmd_reduce(args, out: Out) -> int:
    if args.random:
        return _reduce_corpus(args, out)
    if not (args.graph and args.pattern):
        raise InputError("give --graph and --pattern, or --random N")
    g, p = _graph(args.graph), _pattern(args.pattern)
    reduced, log = _reduce_one(g, p, args)
    out.data = log.to_dict()
    out.data["remaining_vertices"] = len(reduced.rotation)
    out.text(f"mode {log.mode}, threshold {log.threshold}: "
             f"{len(log.deleted)} deleted, {len(reduced.rotation)} vertices left")
    for s in log.steps:
        out.text(f"  {s.action:16} {_fmt(s.vertex)} (depth {s.depth})")
    out.text(f"feasibility: {log.initial_feasibility} -> {log.final_feasibility}")
    if log.discrepancy:
        out.text("DISCREPANCY: the reduction changed the answer")
        return NEGATIVE
    return UNKNOWN if log.final_feasibility == "unknown" else OK


def _reduce_corpus(args, out: Out) -> int:
    from .generators import random_pattern, random_planar

    rng = random.Random(args.seed)
    rows, bad = [], 0
    for i in range(args.random):
        n = rng.randint(6, args.max_vertices)
        g = random_planar(n, rng, density=rng.choice((0.6, 0.9, 1.0)))
        p = random_pattern(list(g.rotation), rng.randint(1, 2), rng)
        _, log = _reduce_one(g, p, args)
        bad += log.discrepancy
        rows.append({"instance": i, "vertices": n, "deleted": len(log.deleted),
                     "initial": log.initial_feasibility, "final": log.final_feasibility,
                     "discrepancy": log.discrepancy})
        out.text(f"#{i}: n={n} deleted={len(log.deleted)} "
                 f"{log.initial_feasibility}->{log.final_feasibility}"
                 + ("  DISCREPANCY" if log.discrepancy else ""))
    out.data = {"seed": args.seed, "mode": args.mode, "threshold": args.threshold,
                "instances": rows, "discrepancies": bad}
    out.text(f"{bad} discrepancies over {args.random} instances")
    return NEGATIVE if bad else OK


# --------------------------------------------------------------------------
# parser


GLOBAL_DEFAULTS = {"format": "text", "seed": 0, "budget": None}


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--seed", type=int, help="seed for generated corpora (default 0)")
    common.add_argument("--budget", type=int,
                        help="node budget for the exhaustive oracle (default: unlimited)")
    ap = argparse.ArgumentParser(prog="linkage-lab", parents=[common],
                                 description="Disjoint-path routing on surface-embedded graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    sp = command("classify", "surface signature of an embedded graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--components", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = command("solve", "decide a pattern with the exhaustive oracle")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--pattern", required=True)
    sp.set_defaults(func=cmd_solve)

    sp = command("grid", "route a boundary pattern on a cylindrical grid")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--pattern", required=True, help="terminals written as ring,position")
    sp.set_defaults(func=cmd_grid)

    sp = command("rank", "gammoid rank of a set")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--v1", nargs="+", required=True, help="ground set")
    sp.add_argument("--v2", nargs="+", required=True, help="target set")
    sp.add_argument("--set", nargs="*", help="subset of the ground (default: all)")
    sp.set_defaults(func=cmd_rank)

    sp = command("intersect", "matroid intersection of two gammoids")
    sp.add_argument("--graph0", required=True)
    sp.add_argument("--graph1", required=True)
    sp.add_argument("--ground", nargs="+", required=True, help="shared ground set")
    sp.add_argument("--targets0", nargs="+", required=True)
    sp.add_argument("--targets1", nargs="+", required=True)
    sp.add_argument("--target", type=int, default=None, help="size to reach")
    sp.set_defaults(func=cmd_intersect)

    sp = command("bounds", "evaluate a bound function")
    sp.add_argument("kind", choices=("theta", "t", "m", "untangle", "omega"))
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--a", type=int, default=0, help="handles (for t)")
    sp.add_argument("--b", type=int, default=0, help="crosscaps (for t)")
    sp.add_argument("--C", type=int, default=None, help="the constant C (for omega)")
    sp.add_argument("--exact-limit", type=int, default=bounds.DEFAULT_DIGIT_LIMIT,
                    help="largest digit count evaluated exactly")
    sp.set_defaults(func=cmd_bounds)

    sp = command("protect", "protection depth of a vertex")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--pattern")
    sp.set_defaults(func=cmd_protect)

    sp = command("decompose", "disk-with-strips view around an insulated vertex")
    sp.add_argument("--fixture", choices=sorted(_fixture_names()))
    sp.add_argument("--graph")
    sp.add_argument("--pattern")
    sp.add_argument("--vertex")
    sp.add_argument("--cycles", nargs="+", metavar="CYCLE",
                    help="one quoted vertex list per cycle, innermost first")
    sp.set_defaults(func=cmd_decompose)

    sp = command("reduce", "delete protected vertices")
    sp.add_argument("--graph")
    sp.add_argument("--pattern")
    sp.add_argument("--threshold", type=int, default=3)
    sp.add_argument("--mode", choices=(reducer.SAFE, reducer.TRUSTING), default=reducer.SAFE)
    sp.add_argument("--random", type=int, default=0, metavar="N",
                    help="run on N random planar instances instead")
    sp.add_argument("--max-vertices", type=int, default=12)
    sp.set_defaults(func=cmd_reduce)
    return ap


def _fixture_names():
    from .generators import STRIP_FIXTURES

    return STRIP_FIXTURES


def _check_args(args):
    if args.command == "bounds" and args.kind != "t" and args.n is None:
        raise InputError(f"bounds {args.kind} needs --n")
    if args.command == "bounds" and args.kind == "omega" and args.C is None:
        raise InputError("bounds omega needs --C")


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else INPUT_ERROR
    # not set_defaults: the actions are shared with every subparser, which
    # would then overwrite a flag given before the subcommand
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    out = Out(args.format)
    try:
        _check_args(args)
        code = args.func(args, out)
    except (InputError, FormatError, EmbeddingError, insulation.InsulationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except BudgetExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return UNKNOWN
    out.flush()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
