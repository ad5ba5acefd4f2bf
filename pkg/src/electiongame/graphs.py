"""Simple undirected graphs, optionally with a proper vertex coloring."""

from __future__ import annotations

import dataclasses
from typing import Iterable, Optional


class GraphError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class ColoredGraph:
    """Vertices 0..n-1, edge list of sorted pairs, optional total coloring
    into classes 0..k-1."""

    n: int
    edges: tuple[tuple[int, int], ...]
    coloring: Optional[tuple[int, ...]] = None
    k: Optional[int] = None

    def __post_init__(self):
        edges = []
        seen = set()
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u},{v}) out of range")
            u, v = (u, v) if u < v else (v, u)
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            edges.append((u, v))
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        if self.coloring is not None:
            coloring = tuple(int(c) for c in self.coloring)
            object.__setattr__(self, "coloring", coloring)
            if self.k is None:
                raise GraphError("a colored graph needs its class count k")
            if len(coloring) != self.n:
                raise GraphError("coloring must assign a class to every vertex")
            if any(not 0 <= c < self.k for c in coloring):
                raise GraphError("coloring classes must lie in [0, k)")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for u, w in self.edges if v in (u, w))

    def neighbors(self, v: int) -> frozenset:
        out = set()
        for u, w in self.edges:
            if u == v:
                out.add(w)
            elif w == v:
                out.add(u)
        return frozenset(out)

    def closed_neighborhood(self, v: int) -> frozenset:
        return self.neighbors(v) | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in set(self.edges)

    def classes(self) -> list[list[int]]:
        if self.coloring is None:
            raise GraphError("graph has no coloring")
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.coloring):
            out[c].append(v)
        return out

    def is_properly_colored(self) -> bool:
        if self.coloring is None:
            return False
        return all(self.coloring[u] != self.coloring[v] for u, v in self.edges)
