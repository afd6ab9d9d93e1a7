"""Acyclicity-driven bad-event families.

All three share the neighbor event (the fresh color equals a neighbor's) and
differ in how they cover bicolored cycles: a global cycle-count budget, an
induced-4-cycle/6-path pair over a special-pair structure, or a cycle ladder
over the same structure.  Cycle witnesses are stored in traversal order, so
uncoloring is always a prefix of the row and rebuilding alternates the two
colors still readable at the row's tail.
"""

from __future__ import annotations

from array import array

from .._kernels import first_bicolored, first_equal
from ..engine import EventTypeMeta
from ..graphs import Graph, SpecialStructure
from .base import Family, arms, bicolored_rebuild, clamped, neighbor_meta


def _cycles_anchor_first(g: Graph, v: int, length: int) -> list[tuple[int, ...]]:
    """Cycles (v, u2, ..., u_length), one orientation each (second vertex
    order-below the last), sorted by vertex order."""
    rank = g.rank
    rows: list[tuple[int, ...]] = []
    path = [v]
    used = {v}

    def dfs():
        if len(path) == length:
            if g.has_edge(path[-1], v) and rank[path[1]] < rank[path[-1]]:
                rows.append(tuple(path))
            return
        for w in g.adj[path[-1]]:
            if w not in used:
                used.add(w)
                path.append(w)
                dfs()
                path.pop()
                used.discard(w)

    dfs()
    rows.sort(key=lambda r: [rank[x] for x in r])
    return rows


class _NeighborEventMixin:
    """Type-1 detection and rebuild: class = conflicting neighbor's position
    in the anchor's index-sorted neighbor list."""

    def _neighbor_hit(self, coloring, v):
        idx = first_equal(coloring.colors, coloring.color_of(v), self._adj[v])
        return None if idx < 0 else (1, idx + 1)

    def _neighbor_rebuild(self, v, k, after):
        return {v: after.color_of(self.g.adj[v][k - 1])}


class _GammaFamily(_NeighborEventMixin, Family):
    def __init__(self, g: Graph, gamma: int):
        if gamma < 1:
            raise ValueError("gamma must be a positive integer")
        d = g.max_degree
        metas = [neighbor_meta(g)]
        metas += [
            EventTypeMeta(k, clamped(0.5 * gamma * d ** (2 * k - 2)), 2 * k - 2)
            for k in range(2, g.n // 2 + 1)
        ]
        super().__init__(f"acyclic-gamma({gamma})", g.n, metas,
                         rank=g.rank.__getitem__)
        self.g = g
        self.gamma = gamma
        self._adj = tuple(array("i", g.adj[v]) for v in range(g.n + 1))

    def _enumerate(self, v, j):
        return _cycles_anchor_first(self.g, v, 2 * j)

    def detect(self, coloring, v):
        hit = self._neighbor_hit(coloring, v)
        if hit:
            return hit
        for meta in self.metas[1:]:
            k = meta.type_id
            if 2 * k > len(coloring.colored):
                break
            rows, flat = self.witness_rows(v, k)
            if rows:
                idx = first_bicolored(coloring.colors, flat, 2 * k)
                if idx >= 0:
                    return k, idx + 1
        return None

    def uncolor_set(self, j, v, colored, k):
        if j == 1:
            return (v,)
        return self.witness_rows(v, j)[0][k - 1][: 2 * j - 2]

    def rebuild_event(self, j, v, colored_before, k, after):
        if j == 1:
            return self._neighbor_rebuild(v, k, after)
        row = self.witness_rows(v, j)[0][k - 1]
        return bicolored_rebuild(row, 2 * j - 2, after)


def acyclic_gamma_family(g: Graph, gamma: int) -> _GammaFamily:
    """Events: monochromatic edge at the anchor, or a bicolored 2k-cycle with
    the anchor first.  Type-k ceilings gamma*Delta^(2k-2)/2 presume the host
    graph keeps per-vertex 2k-cycle counts within that budget; this is the
    caller's obligation and is not checked here."""
    return _GammaFamily(g, gamma)


class _SpecialPairFamily(_NeighborEventMixin, Family):
    """Common core of the two special-pair variants: neighbor event, then a
    same-color event against the anchor's special set."""

    S_TYPE = 2

    @staticmethod
    def _check_alpha(alpha: float) -> float:
        if not 0 < alpha <= 1:
            raise ValueError(f"alpha must be in (0, 1], got {alpha}")
        return alpha

    def __init__(self, g: Graph, alpha: float, name: str, metas):
        super().__init__(name, g.n, metas, rank=g.rank.__getitem__)
        self.g = g
        self.alpha = alpha
        self.special = SpecialStructure(g, alpha)
        self._adj = tuple(array("i", g.adj[v]) for v in range(g.n + 1))
        self._special_rows = tuple(
            array("i", self.special.special(v)) for v in range(g.n + 1)
        )

    def _special_hit(self, coloring, v):
        idx = first_equal(coloring.colors, coloring.color_of(v), self._special_rows[v])
        return None if idx < 0 else (self.S_TYPE, idx + 1)

    def _anchor_pairs(self, v):
        rank = self.g.rank
        nb = self.g.adj[v]
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                yield (a, b) if rank[a] < rank[b] else (b, a)


class _V1Family(_SpecialPairFamily):
    C_TYPE, P_TYPE = 3, 4

    def __init__(self, g: Graph, alpha: float):
        self._check_alpha(alpha)
        d = g.max_degree
        metas = (
            neighbor_meta(g),
            EventTypeMeta(2, clamped(alpha * d ** (4 / 3)), 1),
            EventTypeMeta(3, clamped(d ** (8 / 3) / (8 * alpha)), 2),
            EventTypeMeta(4, clamped(0.5 * d * (d - 1) ** 4), 4),
        )
        super().__init__(g, alpha, f"acyclic-v1({alpha})", metas)

    def _enumerate(self, v, j):
        g, rank = self.g, self.g.rank
        rows = []
        if j == self.C_TYPE:
            # induced 4-cycles (v, u2, u3, u4): the anchor's antipode u3 sits
            # at distance two outside S(v), and u2, u4 are non-adjacent
            s_v = set(self.special.special(v))
            for u2, u4 in self._anchor_pairs(v):
                if g.has_edge(u2, u4):
                    continue
                for u3 in sorted(g.nbr[u2] & g.nbr[u4] - g.nbr[v] - {v}):
                    if u3 not in s_v:
                        rows.append((v, u2, u3, u4))
        else:
            # 6-vertex paths with the anchor second
            for u1, u3 in self._anchor_pairs(v):
                for ext in arms(g.adj, u3, 3, {u1, v, u3}):
                    rows.append((u1, v, u3) + ext)
        rows.sort(key=lambda r: [rank[x] for x in r])
        return rows

    def detect(self, coloring, v):
        hit = self._neighbor_hit(coloring, v) or self._special_hit(coloring, v)
        if hit:
            return hit
        for j, width in ((self.C_TYPE, 4), (self.P_TYPE, 6)):
            if width > len(coloring.colored):
                break
            rows, flat = self.witness_rows(v, j)
            if rows:
                idx = first_bicolored(coloring.colors, flat, width)
                if idx >= 0:
                    return j, idx + 1
        return None

    def uncolor_set(self, j, v, colored, k):
        if j in (1, 2):
            return (v,)
        row = self.witness_rows(v, j)[0][k - 1]
        return row[:2] if j == self.C_TYPE else row[:4]

    def rebuild_event(self, j, v, colored_before, k, after):
        if j == 1:
            return self._neighbor_rebuild(v, k, after)
        if j == 2:
            return {v: after.color_of(self.special.special(v)[k - 1])}
        row = self.witness_rows(v, j)[0][k - 1]
        return bicolored_rebuild(row, 2 if j == self.C_TYPE else 4, after)


def acyclic_v1_family(g: Graph, alpha: float) -> _V1Family:
    """Events in priority order: neighbor conflict, special-pair conflict,
    bicolored induced 4-cycle avoiding S(anchor), bicolored 6-vertex path
    with the anchor second.  Only the anchor's own special set matters: a
    one-way special pair may legitimately share a color."""
    return _V1Family(g, alpha)


class _V2Family(_SpecialPairFamily):
    def __init__(self, g: Graph, alpha: float):
        self._check_alpha(alpha)
        d = g.max_degree
        metas = [neighbor_meta(g), EventTypeMeta(2, clamped(alpha * d ** (4 / 3)), 1)]
        for k in range(2, g.n // 2 + 1):
            cost = d ** (8 / 3) / (8 * alpha) if k == 2 \
                else d ** (2 * k - 4 / 3) / (2 * alpha)
            metas.append(EventTypeMeta(k + 1, clamped(cost), 2 * k - 2))
        super().__init__(g, alpha, f"acyclic-v2({alpha})", metas)

    def _enumerate(self, v, j):
        g, rank = self.g, self.g.rank
        k = j - 1
        rows = []
        if k == 2:
            s_v = set(self.special.special(v))
            for u1, u3 in self._anchor_pairs(v):
                if g.has_edge(u1, u3):
                    continue
                for u4 in sorted(g.nbr[u1] & g.nbr[u3] - g.nbr[v] - {v}):
                    if u4 not in s_v:
                        rows.append((u1, v, u3, u4))
        else:
            # 2k-cycles with the anchor second; cycles whose color-matched
            # endpoints u1, u_{2k-1} are special both ways cannot survive the
            # special event and are excluded from the class count
            sp = self.special.is_special
            for u1, u3 in self._anchor_pairs(v):
                for ext in arms(g.adj, u3, 2 * k - 3, {u1, v, u3}):
                    if g.has_edge(ext[-1], u1) and \
                            not (sp(u1, ext[-2]) and sp(ext[-2], u1)):
                        rows.append((u1, v, u3) + ext)
        rows.sort(key=lambda r: [rank[x] for x in r])
        return rows

    def detect(self, coloring, v):
        hit = self._neighbor_hit(coloring, v) or self._special_hit(coloring, v)
        if hit:
            return hit
        for meta in self.metas[2:]:
            width = meta.uncolor_size + 2
            if width > len(coloring.colored):
                break
            rows, flat = self.witness_rows(v, meta.type_id)
            if rows:
                idx = first_bicolored(coloring.colors, flat, width)
                if idx >= 0:
                    return meta.type_id, idx + 1
        return None

    def uncolor_set(self, j, v, colored, k):
        if j in (1, 2):
            return (v,)
        return self.witness_rows(v, j)[0][k - 1][: 2 * (j - 1) - 2]

    def rebuild_event(self, j, v, colored_before, k, after):
        if j == 1:
            return self._neighbor_rebuild(v, k, after)
        if j == 2:
            return {v: after.color_of(self.special.special(v)[k - 1])}
        row = self.witness_rows(v, j)[0][k - 1]
        return bicolored_rebuild(row, 2 * (j - 1) - 2, after)


def acyclic_v2_family(g: Graph, alpha: float) -> _V2Family:
    """Events: neighbor conflict, special-pair conflict, then bicolored
    2k-cycles with the anchor second (k >= 2); the 4-cycle case additionally
    keeps its antipode outside S(anchor), mirroring the priority of the
    special event."""
    return _V2Family(g, alpha)
