"""Simple undirected graphs with a fixed total vertex order.

Vertices are the integers ``1..n``.  The total order defaults to the index
order but can be overridden by a permutation, which matters because the
coloring engine picks "the smallest uncolored vertex" and several event
families orient their witnesses by this order.  The module also provides the
distance-2 machinery (common-neighbor counts and the per-vertex special set
``S(v)``) that the acyclic event families use to cap their class counts.
"""

from __future__ import annotations

import hashlib
from collections import deque
from math import floor


class GraphFormatError(ValueError):
    """Malformed graph, rotation, list, or coloring document."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


def _clean_lines(text: str):
    """Yield (line_no, content) with comments and blank lines removed."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


class Graph:
    """Immutable simple graph on vertices 1..n.

    ``adj[v]`` is the neighbor tuple of v sorted ascending by index, and
    ``edges`` lists each edge once as ``(u, v)`` with ``u < v``, sorted
    lexicographically; ``edge_index`` maps an edge to its 1-based position in
    that list (edge-colored families use these positions as object ids).
    """

    __slots__ = (
        "n",
        "m",
        "adj",
        "nbr",
        "order",
        "rank",
        "edges",
        "edge_index",
        "max_degree",
    )

    def __init__(self, n: int, edges, order=None):
        if n < 0:
            raise GraphFormatError("vertex count must be nonnegative")
        seen = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"edge ({u},{v}) out of range 1..{n}")
            if u == v:
                raise GraphFormatError(f"loop edge at vertex {u}")
            seen.add((min(u, v), max(u, v)))
        self.n = n
        self.edges = tuple(sorted(seen))
        self.m = len(self.edges)
        self.edge_index = {e: i for i, e in enumerate(self.edges, start=1)}
        adj = [[] for _ in range(n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.nbr = tuple(frozenset(a) for a in self.adj)
        self.max_degree = max((len(a) for a in self.adj[1:]), default=0)
        if order is None:
            order = tuple(range(1, n + 1))
        else:
            order = tuple(order)
            if sorted(order) != list(range(1, n + 1)):
                raise GraphFormatError("order line is not a permutation of 1..n")
        self.order = order
        rank = [0] * (n + 1)
        for pos, v in enumerate(order):
            rank[v] = pos
        self.rank = tuple(rank)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbr[u]

    def prec(self, u: int, v: int) -> bool:
        """True when u comes strictly before v in the vertex order."""
        return self.rank[u] < self.rank[v]

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        return self.edges[edge_id - 1]

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        if self.order != tuple(range(1, self.n + 1)):
            lines.append("order: " + " ".join(map(str, self.order)))
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.n, self.edges, self.order))


def load_graph(text: str) -> Graph:
    """Parse the edge-list format: a "n m" header, then m lines "u v".

    Lines may carry '#' comments.  An optional "order: p1 p2 ... pn" line
    anywhere after the header overrides the vertex order.
    """
    lines = list(_clean_lines(text))
    if not lines:
        raise GraphFormatError("empty document")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphFormatError("expected header 'n m'", no)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError("expected integers in header 'n m'", no) from None
    edges = []
    order = None
    for no, line in lines[1:]:
        if line.startswith("order:"):
            try:
                order = [int(x) for x in line[len("order:"):].split()]
            except ValueError:
                raise GraphFormatError("order line must list integers", no) from None
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected edge 'u v', got {line!r}", no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected integers, got {line!r}", no) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"edge ({u},{v}) out of range 1..{n}", no)
        if u == v:
            raise GraphFormatError(f"loop edge at vertex {u}", no)
        edges.append((u, v))
    if len(edges) != m:
        raise GraphFormatError(f"header announced {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges, order=order)
    except GraphFormatError:
        raise
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def bfs_distances(g: Graph, source: int, cutoff: int | None = None) -> dict[int, int]:
    """Distances from source, optionally truncated at ``cutoff``."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if cutoff is not None and dist[u] >= cutoff:
            continue
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def neighbors2(g: Graph, v: int) -> list[int]:
    """Vertices at distance exactly 2 from v, sorted by the vertex order."""
    out = {w for u in g.adj[v] for w in g.adj[u]}
    out.discard(v)
    out.difference_update(g.nbr[v])
    return sorted(out, key=lambda w: g.rank[w])


def common_degree(g: Graph, u: int, v: int) -> int:
    """Number of common neighbors of the non-adjacent pair u, v."""
    return len(g.nbr[u] & g.nbr[v])


class SpecialStructure:
    """Distance-2 structure for a graph at a given alpha.

    For each vertex v the distance-2 vertices are ordered by their
    common-neighbor count with v (ties by vertex order), and ``special(v)``
    returns the top ``min(floor(alpha * max_degree^(4/3)), |N2(v)|)`` of them,
    best first.  Event families use membership and rank in this list, so the
    ordering is part of the contract.
    """

    __slots__ = ("g", "alpha", "cap", "_special")

    def __init__(self, g: Graph, alpha: float):
        if not 0 < alpha <= 1:
            raise ValueError(f"alpha must be in (0, 1], got {alpha}")
        self.g = g
        self.alpha = alpha
        self.cap = floor(alpha * g.max_degree ** (4 / 3))
        special = [()] * (g.n + 1)
        for v in range(1, g.n + 1):
            n2 = neighbors2(g, v)
            size = min(self.cap, len(n2))
            if size > 0:
                ranked = sorted(
                    n2, key=lambda u: (common_degree(g, v, u), g.rank[u])
                )
                special[v] = tuple(reversed(ranked[-size:]))
        self._special = tuple(special)

    def special(self, v: int) -> tuple[int, ...]:
        return self._special[v]

    def is_special(self, v: int, u: int) -> bool:
        """True when u sits in S(v); note this relation is not symmetric."""
        return u in self._special[v]


def special_set(g: Graph, ss: SpecialStructure, v: int) -> tuple[int, ...]:
    if ss.g is not g:
        raise ValueError("special structure was built for a different graph")
    return ss.special(v)
