"""Non-repetitive coloring families: no path may read a block twice.

The type-j event is a colored repetition on a 2j-object simple path through
the anchor; both variants uncolor the half containing the anchor and rebuild
by mirroring the surviving half, which pins the anchor's erased color because
repetition pairs positions i and i+j.
"""

from __future__ import annotations

from ..engine import EventTypeMeta
from ..graphs import Graph
from .base import RepetitionFamily, clamped, edge_paths_through, vertex_paths_through


class _NonrepVertexFamily(RepetitionFamily):
    def __init__(self, g: Graph):
        d = g.max_degree
        metas = [
            EventTypeMeta(j, clamped(j * d ** (2 * j - 1)), j)
            for j in range(1, g.n // 2 + 1)
        ]
        super().__init__("nonrepetitive-vertex", g.n, metas,
                         rank=g.rank.__getitem__)
        self.g = g

    def _enumerate(self, v, j):
        return vertex_paths_through(self.g, v, 2 * j)


def nonrepetitive_vertex_family(g: Graph) -> _NonrepVertexFamily:
    """Type j: a 2j-vertex path through the anchor colored as two equal
    halves; j*Delta^(2j-1) bounds the anchor's path count (j essentially
    distinct anchor positions, Delta^(2j-1) extensions)."""
    return _NonrepVertexFamily(g)


class _NonrepEdgeFamily(RepetitionFamily):
    def __init__(self, g: Graph):
        d = g.max_degree
        metas = [
            EventTypeMeta(j, clamped(2 * j * d ** (2 * j - 1)), j)
            for j in range(1, g.n // 2 + 1)
        ]
        super().__init__("nonrepetitive-edge", g.m, metas)
        self.g = g

    def _enumerate(self, e, j):
        return edge_paths_through(self.g, e, 2 * j)


def nonrepetitive_edge_family(g: Graph) -> _NonrepEdgeFamily:
    """As the vertex variant with edges as the colored objects (paths of 2j
    edges, vertex-simple); the anchor may sit at 2j edge positions, doubling
    the ceiling to 2j*Delta^(2j-1)."""
    return _NonrepEdgeFamily(g)
