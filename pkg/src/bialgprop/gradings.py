"""Genus, path grading and vertex grading of monomials."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import graph as G
from .graph import Monomial


@dataclass(frozen=True)
class GradingReport:
    degree: int
    genus: int
    path_grading: int
    vertex_count: int

    def __str__(self):
        return f"degree {self.degree}, genus {self.genus}, pth {self.path_grading}, vertices {self.vertex_count}"


@lru_cache(maxsize=None)
def genus(x: Monomial) -> int:
    """First Betti number of the graph with legs pruned."""
    nv = len(x.verts)
    if not nv:
        return 0
    internal = sum(1 for row in x.ins for u, _ in row if u >= 0)
    comps = sum(1 for vs, _, _ in G.connected_components(x) if vs)
    return internal - nv + comps


@lru_cache(maxsize=None)
def path_grading(x: Monomial) -> int:
    """Number of directed paths from input legs to output legs."""
    ways: dict[int, int] = {}
    for v in G.topological_order(x):
        ways[v] = sum(1 if u < 0 else ways[u] for u, _ in x.ins[v])
    # each output port of v carries ways[v] paths
    return sum(1 if u < 0 else ways[u] for u, _ in x.outs)


def vertex_count(x: Monomial) -> int:
    return len(x.verts)


def degree(x: Monomial) -> int:
    return x.degree


def report(x: Monomial) -> GradingReport:
    return GradingReport(x.degree, genus(x), path_grading(x), len(x.verts))


def is_half_prop_monomial(x: Monomial) -> bool:
    m, n = x.arity
    return genus(x) == 0 and path_grading(x) == m * n


def check_path_genus_inequality(x: Monomial) -> bool:
    m, n = x.arity
    return path_grading(x) <= m * n * (genus(x) + 1)
