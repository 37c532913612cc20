"""Disjointness graphs D(P), Kneser graphs KG(n, k) and DIMACS graph files.

Adjacency rows are Python ints used as bitsets: bit ``u`` of ``adj[v]`` is set
iff ``u`` and ``v`` are adjacent. The exact solver's inner loop is row AND and
popcount on these.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .geometry import (GeometryError, PointSet, Relation, Segment, crossing_pairs,
                       require_general_position, segment_relation)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1`` with bitset rows."""

    adj: tuple[int, ...]
    names: tuple[str, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            row >>= u + 1
            v = u + 1
            while row:
                if row & 1:
                    yield u, v
                row >>= 1
                v += 1

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    @classmethod
    def from_edges(cls, n: int, edges, names=None) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(tuple(adj), None if names is None else tuple(names))

    def subgraph(self, vertices: Sequence[int]) -> Graph:
        pos = {v: k for k, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            row = 0
            for u in bits(self.adj[v]):
                if u in pos:
                    row |= 1 << pos[u]
            adj.append(row)
        names = None if self.names is None else tuple(self.names[v] for v in vertices)
        return Graph(tuple(adj), names)


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class DisjointnessGraph(Graph):
    """D(P): vertices are the segments of ``owner`` in lexicographic (i, j) order.

    ``point_map[k]`` is the index in the parent point set of owner point ``k``;
    it is the identity for graphs built directly and records the relabeling for
    induced graphs.
    """

    owner: PointSet = field(default=None)
    point_map: tuple[int, ...] = ()

    @property
    def vertices(self) -> list[Segment]:
        return self.owner.segments()

    def vertex(self, e: Segment) -> int:
        i, j = e
        n = len(self.owner)
        # lexicographic rank of (i, j) among pairs of range(n)
        return i * n - i * (i + 1) // 2 + (j - i - 1)

    def segment(self, v: int) -> Segment:
        return self.vertices[v]

    def parent_segment(self, v: int) -> Segment:
        i, j = self.segment(v)
        a, b = self.point_map[i], self.point_map[j]
        return Segment(min(a, b), max(a, b))


@dataclass(frozen=True)
class KneserGraph(Graph):
    """KG(n, k): k-subsets of {1..n}, adjacent iff disjoint."""

    n_points: int = 0
    k: int = 0
    subsets: tuple[tuple[int, ...], ...] = ()


def build_disjointness(P: PointSet) -> DisjointnessGraph:
    if len(P) < 2:
        raise GeometryError("D(P) needs at least two points")
    require_general_position(P)
    segs = P.segments()
    adj = [0] * len(segs)
    for u, v in itertools.combinations(range(len(segs)), 2):
        if segment_relation(P, segs[u], segs[v]) is Relation.DISJOINT:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    names = tuple(P.segment_name(e) for e in segs)
    return DisjointnessGraph(tuple(adj), names, owner=P, point_map=tuple(range(len(P))))


def build_kneser(n: int, k: int) -> KneserGraph:
    if not (1 <= k and 2 * k <= n):
        raise ValueError(f"KG({n},{k}) needs 1 <= k <= n/2")
    subsets = tuple(itertools.combinations(range(1, n + 1), k))
    adj = [0] * len(subsets)
    for u, v in itertools.combinations(range(len(subsets)), 2):
        if not set(subsets[u]) & set(subsets[v]):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    names = tuple("{" + ",".join(map(str, s)) + "}" for s in subsets)
    return KneserGraph(tuple(adj), names, n_points=n, k=k, subsets=subsets)


def induced(G: DisjointnessGraph, Q: Sequence[int]) -> DisjointnessGraph:
    """D(Q) for a subset Q of G's points, re-indexed 0..|Q|-1 in the order of ``sorted(Q)``."""
    Q = sorted(set(Q))
    if len(Q) < 2:
        raise GeometryError("induced graph needs |Q| >= 2")
    sub = G.owner.subset(Q)
    vertices = [G.vertex(Segment(a, b)) for a, b in itertools.combinations(Q, 2)]
    base = G.subgraph(vertices)
    parent = tuple(G.point_map[q] for q in Q)
    return DisjointnessGraph(base.adj, base.names, owner=sub, point_map=parent)


def kg_embedding_gap(P: PointSet) -> int:
    """|E(KG(n,2))| - |E(D(P))|, after checking D(P) embeds in KG(n,2) via i -> p_i."""
    n = len(P)
    D = build_disjointness(P)
    for u, v in D.edges():
        if set(D.segment(u)) & set(D.segment(v)):
            raise AssertionError(f"D-edge {D.segment(u)}-{D.segment(v)} is not a KG edge")
    kg_edges = math.comb(n, 2) * math.comb(n - 2, 2) // 2 if n >= 4 else 0
    gap = kg_edges - D.edge_count
    if gap != len(crossing_pairs(P)):
        raise AssertionError("KG/D edge gap differs from the crossing count")
    return gap


def export_dimacs(G: Graph, path) -> Path:
    path = Path(path)
    lines = [f"p edge {G.n} {G.edge_count}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in G.edges()]
    path.write_text("\n".join(lines) + "\n")
    return path


def read_dimacs(path) -> Graph:
    n = None
    edges = []
    for raw in Path(path).read_text().splitlines():
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise ValueError(f"bad problem line: {raw!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise ValueError("edge line before problem line")
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise ValueError(f"unrecognised DIMACS line: {raw!r}")
    if n is None:
        raise ValueError("missing problem line")
    return Graph.from_edges(n, edges)
