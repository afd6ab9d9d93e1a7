"""Facially non-repetitive families on plane graphs.

The vertex variant is a plain repetition family whose witnesses live on face
boundaries.  The edge variant trades generality for sharper ceilings: the
coloring order is constrained so every anchor has an uncolored facially
adjacent edge e', and classes count only witness paths avoiding e' (at most
one on the face shared with e', 2j on the anchor's other face).  That
requires one distinguished edge to stay uncolored forever and the uncolored
edge set to stay connected in the medial graph; the traversal maintains both
by coloring leaves of a medial spanning tree rooted at the reserved edge.
"""

from __future__ import annotations

from collections import deque

from ..engine import EventTypeMeta
from ..graphs import Graph
from ..planar import PlaneGraph, facial_paths_through, medial_graph
from .base import RepetitionFamily, canonical, clamped


class MedialConnectivityError(RuntimeError):
    """Uncolored edges no longer induce a connected medial subgraph."""


class _FacialVertexFamily(RepetitionFamily):
    def __init__(self, pg: PlaneGraph):
        g = pg.graph
        d = g.max_degree
        metas = [EventTypeMeta(1, clamped(d), 1)]
        metas += [
            EventTypeMeta(j, clamped(2 * j * d), j)
            for j in range(2, g.n // 2 + 1)
        ]
        super().__init__("facial-thue-vertex", g.n, metas,
                         rank=g.rank.__getitem__)
        self.pg = pg
        self.g = g

    def _enumerate(self, v, j):
        windows = {
            canonical(w, self.g.rank)
            for w in facial_paths_through(self.pg, v, 2 * j)
        }
        return sorted(windows, key=lambda p: [self.g.rank[x] for x in p])


def facial_thue_vertex_family(pg: PlaneGraph) -> _FacialVertexFamily:
    """Type j: a repetition on a facial 2j-vertex path through the anchor;
    the anchor sees at most Delta faces and 2j window positions per face."""
    return _FacialVertexFamily(pg)


class _FacialEdgeFamily(RepetitionFamily):
    def __init__(self, pg: PlaneGraph, e_star: int):
        g = pg.graph
        if not 1 <= e_star <= g.m:
            raise ValueError(f"reserved edge id {e_star} out of range")
        metas = [EventTypeMeta(j, 1 + 2 * j, j) for j in range(1, g.n // 2 + 1)]
        super().__init__("facial-thue-edge", g.m, metas)
        self.pg = pg
        self.g = g
        self.e_star = e_star
        self.medial = medial_graph(pg)

    def _enumerate(self, e, j):
        rows = set()
        for window in facial_paths_through(self.pg, self.g.endpoints(e), 2 * j):
            row = tuple(self.g.edge_index[pair] for pair in window)
            rows.add(min(row, row[::-1]))
        return sorted(rows)

    def _uncolored_neighbor(self, e: int, colored) -> int | None:
        for u in self.medial.adj[e]:
            if u not in colored:
                return u
        return None

    def next_uncolored(self, colored):
        """Smallest-index leaf of the breadth-first spanning tree of the
        medial subgraph induced by the uncolored edges, rooted at the
        reserved edge; coloring a leaf keeps the rest connected."""
        if self.e_star in colored:
            raise MedialConnectivityError("the reserved edge must stay uncolored")
        uncolored = set(range(1, self.n_objects + 1)) - set(colored)
        if uncolored == {self.e_star}:
            return None
        reached = {self.e_star}
        interior = set()
        queue = deque([self.e_star])
        while queue:
            x = queue.popleft()
            for y in self.medial.adj[x]:
                if y in uncolored and y not in reached:
                    reached.add(y)
                    interior.add(x)
                    queue.append(y)
        if reached != uncolored:
            raise MedialConnectivityError(
                "uncolored edges induce a disconnected medial subgraph"
            )
        return min(reached - interior - {self.e_star})

    def _class_index(self, e, j, idx, colored):
        paths, _ = self.witness_rows(e, j)
        ep = self._uncolored_neighbor(e, colored)
        if ep is None:
            raise MedialConnectivityError(
                f"anchor edge {e} has no uncolored facial neighbor"
            )
        return 1 + sum(1 for row in paths[:idx] if ep not in row)

    def _row_for(self, j, e, colored, k):
        ep = self._uncolored_neighbor(e, colored)
        if ep is None:
            raise MedialConnectivityError(
                f"anchor edge {e} has no uncolored facial neighbor"
            )
        seen = 0
        for row in self.witness_rows(e, j)[0]:
            if ep not in row:
                seen += 1
                if seen == k:
                    return row
        raise ValueError(f"type {j} class {k} at edge {e} has no witness path")


def facial_thue_edge_family(pg: PlaneGraph, e_star: int) -> _FacialEdgeFamily:
    """Facial edge repetitions with the reserved edge e_star never colored:
    a completed run colors every other edge.  Classes are ranked among the
    witness paths that avoid the anchor's smallest-index uncolored facial
    neighbor, giving the 1+2j ceiling independent of Delta."""
    return _FacialEdgeFamily(pg, e_star)
