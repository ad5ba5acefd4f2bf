"""Brute-force graph deciders used as test oracles.

These exist for desk-scale equivalence checks against the generated election
instances; past the documented size caps they refuse to run instead of
stalling.
"""

from __future__ import annotations

import itertools
import math

from electiongame.graphs import ColoredGraph, GraphError

DS_MAX_VERTICES = 16
MCC_MAX_PRODUCT = 10**6


class OracleScaleError(RuntimeError):
    """Instance is beyond the oracle's documented brute-force scale."""


def is_dominating_set(graph: ColoredGraph, vertices) -> bool:
    covered = set()
    for v in vertices:
        covered |= graph.closed_neighborhood(v)
    return covered == set(range(graph.n))


def dominating_set_exists(graph: ColoredGraph, k: int):
    """Exhaustive search for a dominating set of size at most k, by
    increasing size then lexicographically.  Returns (decision, witness)."""
    if graph.n > DS_MAX_VERTICES:
        raise OracleScaleError(
            f"dominating-set oracle is capped at {DS_MAX_VERTICES} vertices"
        )
    if graph.n == 0:
        return True, frozenset()
    for size in range(min(k, graph.n) + 1):
        for subset in itertools.combinations(range(graph.n), size):
            if is_dominating_set(graph, subset):
                return True, frozenset(subset)
    return False, None


def is_multicolored_clique(graph: ColoredGraph, vertices) -> bool:
    vertices = sorted(vertices)
    if graph.coloring is None:
        raise GraphError("multicolored clique check needs a coloring")
    colors = {graph.coloring[v] for v in vertices}
    if len(vertices) != graph.k or len(colors) != graph.k:
        return False
    return all(graph.has_edge(u, v) for u, v in itertools.combinations(vertices, 2))


def multicolored_clique_exists(graph: ColoredGraph):
    """Exhaustive search over the class product for a clique with one vertex
    per color class.  Returns (decision, witness)."""
    if graph.coloring is None:
        raise GraphError("multicolored clique oracle needs a coloring")
    classes = graph.classes()
    if any(not cls for cls in classes):
        return False, None
    if math.prod(len(cls) for cls in classes) > MCC_MAX_PRODUCT:
        raise OracleScaleError(
            f"multicolored-clique oracle is capped at a class product of {MCC_MAX_PRODUCT}"
        )
    edge_set = set(graph.edges)
    for combo in itertools.product(*classes):
        ok = True
        for u, v in itertools.combinations(combo, 2):
            if (min(u, v), max(u, v)) not in edge_set:
                ok = False
                break
        if ok:
            return True, frozenset(combo)
    return False, None
