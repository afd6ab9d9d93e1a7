"""Combinatorial plane embeddings: face tracing, facial paths, medial graphs.

An embedding is a rotation system, the counterclockwise neighbor order around
each vertex.  Faces are traced with the next-edge rule: the successor of the
directed edge (u, v) is (v, w) where w follows u in the rotation at v.  Every
directed edge lies on exactly one face walk, and for connected embeddings the
walk count satisfies Euler's formula.

Nothing here tests planarity; the rotation system is taken at face value, so
embeddings on other surfaces work too (faces are just the traced walks).
"""

from __future__ import annotations

import random

from .graphs import Graph, GraphFormatError, _clean_lines


class EmbeddingError(ValueError):
    """Rotation lists inconsistent with the underlying graph."""


class PlaneGraph:
    """A graph together with a rotation system and its traced faces.

    ``faces`` is a tuple of boundary walks, each a tuple of directed edges,
    canonicalized to start at the lexicographically smallest directed edge
    and sorted, so equal embeddings trace equal face lists.
    """

    __slots__ = ("graph", "rotation", "faces", "_vertex_walks", "_face_edge_sets")

    def __init__(self, graph: Graph, rotation: dict[int, tuple[int, ...]]):
        for v in range(1, graph.n + 1):
            rot = tuple(rotation.get(v, ()))
            if sorted(rot) != list(graph.adj[v]):
                raise EmbeddingError(
                    f"rotation at vertex {v} is not a permutation of its neighbors"
                )
        self.graph = graph
        self.rotation = {v: tuple(rotation.get(v, ())) for v in range(1, graph.n + 1)}
        self.faces = self._trace()
        self._vertex_walks = tuple(
            tuple(e[0] for e in face) for face in self.faces
        )
        self._face_edge_sets = tuple(
            frozenset(self.graph.edge_index[(min(u, v), max(u, v))] for u, v in face)
            for face in self.faces
        )
        if self._connected() and self.graph.m > 0:
            euler = self.graph.n - self.graph.m + len(self.faces)
            if euler != 2:
                raise EmbeddingError(
                    f"face tracing gave n - m + f = {euler}, expected 2 "
                    "for a connected plane embedding"
                )

    def _next(self, u: int, v: int) -> tuple[int, int]:
        rot = self.rotation[v]
        i = rot.index(u)
        return v, rot[(i + 1) % len(rot)]

    def _trace(self):
        darts = {(u, v) for u in range(1, self.graph.n + 1) for v in self.graph.adj[u]}
        faces = []
        while darts:
            start = min(darts)
            walk = []
            e = start
            while True:
                walk.append(e)
                darts.remove(e)
                e = self._next(*e)
                if e == start:
                    break
            # canonical start keeps the face list stable across trace order
            k = walk.index(min(walk))
            faces.append(tuple(walk[k:] + walk[:k]))
        return tuple(sorted(faces))

    def _connected(self) -> bool:
        if self.graph.n == 0:
            return True
        seen = {1}
        stack = [1]
        while stack:
            u = stack.pop()
            for w in self.graph.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.graph.n

    def to_text(self) -> str:
        lines = [f"{self.graph.n} {self.graph.m}"]
        for v in range(1, self.graph.n + 1):
            lines.append(f"{v}: " + " ".join(map(str, self.rotation[v])))
        return "\n".join(lines) + "\n"


def load_rotation(text: str, graph: Graph | None = None) -> PlaneGraph:
    """Parse a rotation system: "n m" header, then one "v: w1 w2 ..." line
    per vertex (counterclockwise).  Edges are derived from the lists; when
    ``graph`` is supplied it must match them."""
    lines = list(_clean_lines(text))
    if not lines:
        raise GraphFormatError("empty document")
    no, header = lines[0]
    try:
        n, m = map(int, header.split())
    except ValueError:
        raise GraphFormatError("expected header 'n m'", no) from None
    rotation: dict[int, tuple[int, ...]] = {}
    for no, line in lines[1:]:
        if ":" not in line:
            raise GraphFormatError("expected 'v: w1 w2 ...'", no)
        head, _, tail = line.partition(":")
        try:
            v = int(head)
            nbrs = tuple(int(x) for x in tail.split())
        except ValueError:
            raise GraphFormatError("expected integers in rotation line", no) from None
        if v in rotation:
            raise GraphFormatError(f"vertex {v} listed twice", no)
        rotation[v] = nbrs
    edges = set()
    for v, nbrs in rotation.items():
        for w in nbrs:
            edges.add((min(v, w), max(v, w)))
    derived = Graph(n, edges)
    if derived.m != m:
        raise GraphFormatError(f"header announced {m} edges, rotations give {derived.m}")
    for v, nbrs in rotation.items():
        if len(nbrs) != len(set(nbrs)):
            raise GraphFormatError(f"rotation at {v} repeats a neighbor")
        for w in nbrs:
            if v not in rotation.get(w, ()):
                raise GraphFormatError(f"edge ({v},{w}) missing from rotation at {w}")
    if graph is not None:
        if graph.n != derived.n or graph.edges != derived.edges:
            raise GraphFormatError("rotation system does not match the graph file")
        derived = graph
    return PlaneGraph(derived, rotation)


def facial_paths_through(pg: PlaneGraph, x, length: int) -> list[tuple]:
    """All simple windows of ``length`` consecutive elements on some face
    boundary containing ``x``.

    When ``x`` is a vertex the windows are vertex paths (tuples of vertices);
    when ``x`` is an edge pair ``(u, v)`` they are edge paths (tuples of
    sorted edge pairs).  The same geometric path shows up once per containing
    (face, offset), in face order then offset order; callers that need the
    distinct-path set deduplicate.
    """
    if length < 2:
        raise ValueError("a path needs at least 2 elements")
    out = []
    if isinstance(x, int):
        for walk in pg._vertex_walks:
            f = len(walk)
            if f < length:
                continue
            for off in range(f):
                window = tuple(walk[(off + i) % f] for i in range(length))
                if x in window and len(set(window)) == length:
                    out.append(window)
    else:
        u, v = x
        target = (min(u, v), max(u, v))
        for face in pg.faces:
            f = len(face)
            if f < length:
                continue
            for off in range(f):
                darts = [face[(off + i) % f] for i in range(length)]
                verts = [darts[0][0]] + [d[1] for d in darts]
                if len(set(verts)) != length + 1:
                    continue
                window = tuple((min(a, b), max(a, b)) for a, b in darts)
                if target in window:
                    out.append(window)
    return out


def medial_graph(pg: PlaneGraph) -> Graph:
    """Graph on the edge ids of the base graph; two ids are adjacent when
    the edges share an endpoint and lie on a common face."""
    g = pg.graph
    medial_edges = set()
    for face_set in pg._face_edge_sets:
        ids = sorted(face_set)
        for i, a in enumerate(ids):
            ua, va = g.endpoints(a)
            for b in ids[i + 1:]:
                ub, vb = g.endpoints(b)
                if {ua, va} & {ub, vb}:
                    medial_edges.add((a, b))
    return Graph(g.m, medial_edges)


def random_triangulation(n: int, rng: random.Random) -> PlaneGraph:
    """Random stacked triangulation on n >= 3 vertices.

    Starts from a triangle and repeatedly drops a new vertex into a uniformly
    random face, connecting it to the three corners.  Every face stays a
    triangle, so the result is a maximal plane graph.
    """
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rotation = {1: [2, 3], 2: [3, 1], 3: [1, 2]}
    # directed triangles; both orientations of the starting triangle are faces
    faces = [(1, 2, 3), (1, 3, 2)]
    for w in range(4, n + 1):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        rotation[w] = [c, b, a]
        for x, y in ((a, b), (b, c), (c, a)):
            rot = rotation[y]
            rot.insert(rot.index(x) + 1, w)
        faces.extend([(a, b, w), (b, c, w), (c, a, w)])
    edges = {(min(v, w), max(v, w)) for v, rot in rotation.items() for w in rot}
    g = Graph(n, edges)
    return PlaneGraph(g, {v: tuple(rot) for v, rot in rotation.items()})
