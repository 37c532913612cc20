"""Colorings of D(P) and the structural vocabulary used to reason about them.

A coloring of D(P) is read as an edge-coloring of the complete geometric graph
on P in which two same-colored segments always cross or share an endpoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .geometry import PointSet, Relation, Segment, seg, segment_relation
from .graphs import DisjointnessGraph, Graph, build_disjointness, induced


class ColoringError(ValueError):
    """Improper or malformed coloring handed to an operation that needs a proper one."""


@dataclass(frozen=True)
class Coloring:
    graph: Graph
    assignment: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(c) for c in self.assignment)
        object.__setattr__(self, "assignment", a)
        if len(a) != self.graph.n:
            raise ColoringError(f"assignment covers {len(a)} of {self.graph.n} vertices")
        if any(c < 0 for c in a):
            raise ColoringError("colors must be non-negative")

    @property
    def num_colors(self) -> int:
        return len(set(self.assignment))

    @property
    def is_compact(self) -> bool:
        return set(self.assignment) == set(range(self.num_colors))

    def compacted(self) -> Coloring:
        """Relabel colors monotonically onto 0..c-1."""
        ranks = {c: r for r, c in enumerate(sorted(set(self.assignment)))}
        return Coloring(self.graph, tuple(ranks[c] for c in self.assignment))

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.assignment):
            out.setdefault(c, []).append(v)
        return dict(sorted(out.items()))

    def monochromatic_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.graph.edges() if self.assignment[u] == self.assignment[v]]

    # the helpers below need a disjointness graph

    def color_of(self, e: Segment) -> int:
        return self.assignment[self.graph.vertex(seg(*e))]

    def colors_on(self, Q: Iterable[int]) -> set[int]:
        """gamma(Q): colors present on segments with both endpoints in Q."""
        Q = sorted(set(Q))
        return {self.color_of((a, b)) for a, b in itertools.combinations(Q, 2)}

    def restrict(self, Q: Sequence[int]) -> Coloring:
        """gamma|Q as a coloring of the induced graph D(Q)."""
        H = induced(self.graph, Q)
        Qs = sorted(set(Q))
        return Coloring(H, tuple(self.color_of((Qs[i], Qs[j])) for i, j in H.vertices))


def is_proper(G: Graph, coloring: Coloring | Sequence[int]) -> bool:
    a = coloring.assignment if isinstance(coloring, Coloring) else tuple(coloring)
    if len(a) != G.n:
        raise ColoringError(f"assignment covers {len(a)} of {G.n} vertices")
    return all(a[u] != a[v] for u, v in G.edges())


def colorings_of(G: Graph, k: int) -> Iterator[Coloring]:
    """Every proper coloring of G with at most k colors, once per renaming of colors.

    Colors are numbered by first appearance in vertex order.
    """
    n = G.n
    a = [0] * n

    def rec(v: int, used: int):
        if v == n:
            yield Coloring(G, tuple(a))
            return
        for c in range(min(used + 1, k)):
            if all(a[u] != c for u in G.neighbors(v) if u < v):
                a[v] = c
                yield from rec(v + 1, max(used, c + 1))

    yield from rec(0, 0)


def write_coloring(coloring: Coloring, path, trailer: str | None = None) -> Path:
    """Certificate text: ``colors c`` then ``i j color`` per segment in lexicographic order."""
    G = coloring.graph
    lines = [f"colors {coloring.num_colors}"]
    if isinstance(G, DisjointnessGraph):
        lines += [f"{i} {j} {c}" for (i, j), c in zip(G.vertices, coloring.assignment)]
    else:
        lines += [f"{v} {c}" for v, c in enumerate(coloring.assignment)]
    if trailer:
        lines.append(trailer)
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    return path


def read_coloring(G: Graph, path) -> tuple[Coloring, list[str]]:
    """Parse a certificate for graph ``G``; returns the coloring and any trailing lines."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "colors" or len(head) != 2:
        raise ValueError(f"bad header {lines[0]!r}")
    body, rest = lines[1:G.n + 1], lines[G.n + 1:]
    if len(body) != G.n:
        raise ValueError(f"expected {G.n} vertex lines, found {len(body)}")
    assignment = []
    for v, ln in enumerate(body):
        parts = [int(t) for t in ln.split()]
        if isinstance(G, DisjointnessGraph):
            if tuple(parts[:2]) != tuple(G.segment(v)):
                raise ValueError(f"line {v + 2}: expected segment {tuple(G.segment(v))}")
        elif parts[0] != v:
            raise ValueError(f"line {v + 2}: expected vertex {v}")
        assignment.append(parts[-1])
    col = Coloring(G, tuple(assignment))
    if col.num_colors != int(head[1]):
        raise ValueError(f"header says {head[1]} colors, body uses {col.num_colors}")
    return col, rest


# ---------------------------------------------------------------- classes

THRACKLE = "thrackle"
STAR = "star"


@dataclass(frozen=True)
class ClassInfo:
    """One chromatic class. ``apices`` is empty for a triangle class."""

    color: int
    kind: str
    members: tuple[Segment, ...]
    incident_points: frozenset[int]
    apices: frozenset[int]

    @property
    def m(self) -> int:
        return len(self.incident_points)


def classify_classes(coloring: Coloring) -> list[ClassInfo]:
    G = coloring.graph
    P = G.owner
    if not is_proper(G, coloring):
        raise ColoringError("classify_classes needs a proper coloring")
    out = []
    for c, vs in coloring.classes().items():
        segs = tuple(G.segment(v) for v in vs)
        crossing = any(segment_relation(P, e, f) is Relation.CROSSING
                       for e, f in itertools.combinations(segs, 2))
        points = frozenset(p for e in segs for p in e)
        if crossing:
            out.append(ClassInfo(c, THRACKLE, segs, points, frozenset()))
            continue
        if len(segs) == 1:
            apices = points
        else:
            apices = frozenset.intersection(*(frozenset(e) for e in segs))
        out.append(ClassInfo(c, STAR, segs, points, apices))
    return out


def star_apices(coloring: Coloring) -> set[int]:
    return {p for info in classify_classes(coloring) for p in info.apices}


def gamma_star(coloring: Coloring, Q: Iterable[int]) -> int:
    """Number of points of Q that are apices of a star of the restriction to Q."""
    Qs = sorted(set(Q))
    sub = coloring.restrict(Qs)
    return len(star_apices(sub))


# ---------------------------------------------------------------- separability

def q_plus(P: PointSet, Q: Iterable[int]) -> set[Segment]:
    """Segments with no endpoint in Q that cross a segment spanned by Q."""
    Qset = set(Q)
    inner = [seg(a, b) for a, b in itertools.combinations(sorted(Qset), 2)]
    out = set()
    for e in P.segments():
        if Qset & set(e):
            continue
        if any(segment_relation(P, e, f) is Relation.CROSSING for f in inner):
            out.add(e)
    return out


def is_separable_wrt(coloring: Coloring, Q: Iterable[int]) -> bool:
    Q = sorted(set(Q))
    outside = q_plus(coloring.graph.owner, Q)
    inside = coloring.colors_on(Q)
    return all(coloring.color_of(e) not in inside for e in outside)


def is_clean(P: PointSet, Q: Iterable[int], e: Segment) -> bool:
    """True iff no segment spanned by Q crosses ``e``."""
    Qset = set(Q)
    if not set(e) <= Qset:
        raise ColoringError(f"segment {tuple(e)} is not spanned by Q")
    e = seg(*e)
    return not any(segment_relation(P, e, seg(a, b)) is Relation.CROSSING
                   for a, b in itertools.combinations(sorted(Qset), 2) if seg(a, b) != e)


# ---------------------------------------------------------------- constructions

def _disjointness(P_or_G) -> DisjointnessGraph:
    return P_or_G if isinstance(P_or_G, DisjointnessGraph) else build_disjointness(P_or_G)


def greedy_star_coloring(P_or_G, order: Sequence[int] | None = None) -> Coloring:
    """Triangle on the first three points gets color 0, then point j of the order opens star j-2."""
    G = _disjointness(P_or_G)
    n = len(G.owner)
    if n < 3:
        raise ColoringError("greedy star coloring needs at least three points")
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise ColoringError("order must be a permutation of the points")
    rank = {p: r for r, p in enumerate(order)}
    assignment = []
    for i, j in G.vertices:
        assignment.append(max(max(rank[i], rank[j]) - 2, 0))
    return Coloring(G, tuple(assignment))


def extend_coloring(G: DisjointnessGraph, sub_points: Sequence[int], sub: Coloring,
                    order: Sequence[int] | None = None) -> Coloring:
    """Extend a coloring of D(P') to D(P), one fresh star per added point."""
    Qs = sorted(set(sub_points))
    if len(Qs) < 3:
        raise ColoringError("need |P'| >= 3")
    if sub.graph.n != len(Qs) * (len(Qs) - 1) // 2 or not is_proper(sub.graph, sub):
        raise ColoringError("sub-coloring must be a proper coloring of D(P')")
    rest = [p for p in range(len(G.owner)) if p not in set(Qs)]
    if order is not None:
        if sorted(order) != rest:
            raise ColoringError("order must list exactly the added points")
        rest = list(order)
    inner = {(Qs[i], Qs[j]): c for (i, j), c in zip(sub.graph.vertices, sub.assignment)}
    top = max(sub.assignment) + 1
    rank = {p: r for r, p in enumerate(rest)}
    assignment = []
    for i, j in G.vertices:
        if (i, j) in inner:
            assignment.append(inner[(i, j)])
        else:
            # the later of the two endpoints owns the segment's star
            assignment.append(top + max(rank.get(i, -1), rank.get(j, -1)))
    return Coloring(G, tuple(assignment))


def hexagon_upper_coloring(P_or_G) -> Coloring:
    """3-color a convex hexagon of P, then add one star per remaining point: |P| - 3 colors."""
    from .exact import Verdict, k_colorable
    from .geometry import convex_k_subsets

    G = _disjointness(P_or_G)
    P = G.owner
    hexagon = next(iter(convex_k_subsets(P, 6)), None) if len(P) >= 6 else None
    if hexagon is None:
        raise ColoringError("point set has no convex hexagon")
    H = induced(G, hexagon)
    res = k_colorable(H, 3)
    if res.verdict is not Verdict.YES:
        raise AssertionError("a convex hexagon must be 3-colorable")
    return extend_coloring(G, hexagon, res.coloring.compacted())


# ---------------------------------------------------------------- Definition 1

@dataclass(frozen=True)
class Def1Result:
    """U_l, the distance order of the remaining T points and the triangles built on it.

    Fields that the guards leave undefined are None. ``ties`` lists index pairs
    whose distances to l are equal; the order breaks them by point index.
    """

    ell: Segment
    U: frozenset[int]
    order: tuple[int, ...] | None
    ties: tuple[tuple[int, int], ...]
    delta_ell: tuple[int, int, int] | None
    ell1: Segment | None
    ell2: Segment | None
    delta1: tuple[int, int, int] | None
    delta2: tuple[int, int, int] | None


def def1_analyze(coloring: Coloring, ell: Segment) -> Def1Result:
    import functools

    from .geometry import dist_cmp

    G = coloring.graph
    P = G.owner
    ell = seg(*ell)
    A, B = set(P.role("A")), set(P.role("B"))
    if not ((ell.i in A and ell.j in B) or (ell.i in B and ell.j in A)):
        raise ColoringError(f"{P.segment_name(ell)} is not an A-B segment")
    if not is_proper(G, coloring):
        raise ColoringError("def1_analyze needs a proper coloring")
    a = ell.i if ell.i in A else ell.j
    b = ell.j if a == ell.i else ell.i
    T = sorted(P.role("T1") + P.role("T2"))
    c_ell = coloring.color_of(ell)
    U = frozenset(v for v in T
                  if coloring.color_of(seg(v, a)) == coloring.color_of(seg(v, b)) != c_ell)
    if len(U) == len(T):
        return Def1Result(ell, U, None, (), None, None, None, None, None)

    def cmp(p, q):
        return dist_cmp(P, p, q, ell) or (p > q) - (p < q)

    rest = sorted((v for v in T if v not in U), key=functools.cmp_to_key(cmp))
    ties = tuple((p, q) for p, q in itertools.combinations(sorted(rest), 2)
                 if dist_cmp(P, p, q, ell) == 0)
    v0 = rest[0]
    l1, l2 = seg(a, v0), seg(b, v0)
    d1 = d2 = None
    if len(U) < len(T) - 1:
        v1 = rest[1]
        d1 = tuple(sorted((a, v0, v1)))
        d2 = tuple(sorted((b, v0, v1)))
    return Def1Result(ell, U, tuple(rest), ties, tuple(sorted((a, b, v0))), l1, l2, d1, d2)


# ---------------------------------------------------------------- Proposition 4

# segments that are not a side of any convex pentagon of X, by point name
EXCLUDED_SEGMENTS = frozenset(frozenset(pair) for pair in [
    ("t1^1", "t2^3"), ("b1", "t2^3"), ("b1", "t2^2"), ("b1", "t2^1"), ("b1", "a5"),
    ("b2", "a5"), ("b3", "a1"), ("b3", "a2"), ("b3", "a3"), ("b3", "a4"),
    ("b3", "a5"), ("b4", "a1"), ("b4", "a2"), ("b4", "a3"), ("b4", "a4"),
    ("b4", "a5"), ("b5", "t1^1"), ("b5", "t1^2"), ("b5", "t2^1"), ("b5", "a1"),
])


def is_excluded(P: PointSet, e: Segment) -> bool:
    return frozenset((P.name(e.i), P.name(e.j))) in EXCLUDED_SEGMENTS


def pentagons_with_side(P: PointSet, e: Segment):
    """Convex 5-subsets (lexicographic) having ``e`` as a hull side."""
    from .geometry import hull_indices

    e = seg(*e)
    others = [p for p in range(len(P)) if p not in e]
    for extra in itertools.combinations(others, 3):
        sub = tuple(sorted(extra + tuple(e)))
        hull = hull_indices(P, sub)
        if len(hull) != 5:
            continue
        k = hull.index(e.i)
        if e.j in (hull[k - 1], hull[(k + 1) % 5]):
            yield sub


def unique_color_3colorings(H: DisjointnessGraph, v: int) -> list[tuple[int, ...]]:
    """All proper 3-colorings of H (colors as a canonical partition) where v's color is unique.

    Colorings are counted up to renaming colors: each is listed once, with
    colors numbered by first appearance in vertex order.
    """
    out = []
    for a in itertools.product(range(3), repeat=H.n):
        # canonical numbering: color 0 first, 1 appears before 2, all three used
        if a[0] != 0 or 1 not in a or 2 not in a or a.index(1) > a.index(2):
            continue
        if sum(1 for c in a if c == a[v]) != 1:
            continue
        if is_proper(H, a):
            out.append(a)
    return out


def prop4_coloring(G: DisjointnessGraph, e: Segment) -> Coloring:
    """14-coloring of D(X) in which the color of ``e`` appears on ``e`` only."""
    P = G.owner
    e = seg(*e)
    if is_excluded(P, e):
        raise ColoringError(f"{P.segment_name(e)} is in the excluded list")
    X5 = next(pentagons_with_side(P, e), None)
    if X5 is None:
        raise ColoringError(f"{P.segment_name(e)} is not a side of a convex pentagon")
    H = induced(G, X5)
    v = H.vertex(seg(X5.index(e.i), X5.index(e.j)))
    options = unique_color_3colorings(H, v)
    if not options:
        raise ColoringError("no 3-coloring of the pentagon isolates the segment's color")
    return extend_coloring(G, X5, Coloring(H, options[0]))
