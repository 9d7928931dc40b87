"""Disjoint-path routing on graphs embedded in surfaces.

The package is split by topic: :mod:`surface` (rotation systems, cutting,
classification), :mod:`pattern` (patterns, linkages, the exhaustive oracle),
:mod:`cylgrid`, :mod:`gammoid` and :mod:`buffer` (routing tools),
:mod:`insulation` (nested cycles, levels, hills, strips), :mod:`bounds`
and :mod:`reducer`.  The most used names are re-exported here.
"""
from .bounds import m_bound, omega_bound, t_bound, theta, untangle_bound
from .buffer import BufferPartition, buffer_route
from .cylgrid import CylGrid, realize
from .gammoid import Gammoid, matroid_intersection
from .insulation import decompose, eliminate_hills, make_decreasing, protection_depth
from .pattern import KERNEL, Linkage, Pattern, cross_free, feasible, solve_bruteforce, verify
from .reducer import reduce, redundancy_probe
from .surface import EmbeddedGraph, SurfaceSignature, classify, cut_along
from .textio import format_graph, parse_graph, parse_pattern

__version__ = "0.1.0"

__all__ = [
    "BufferPartition", "CylGrid", "EmbeddedGraph", "Gammoid", "KERNEL", "Linkage",
    "Pattern", "SurfaceSignature", "buffer_route", "classify", "cross_free", "cut_along",
    "decompose", "eliminate_hills", "feasible", "format_graph", "m_bound",
    "make_decreasing", "matroid_intersection", "omega_bound", "parse_graph",
    "parse_pattern", "protection_depth", "realize", "reduce", "redundancy_probe",
    "solve_bruteforce", "t_bound", "theta", "untangle_bound", "verify",
]
