"""Exact planar predicates over integer point sets.

Every predicate works on Python integers, so orientation determinants and
squared-distance comparisons never round. Coordinates are bounded by
``COORD_LIMIT`` which keeps every intermediate inside 128 signed bits.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

COORD_LIMIT = 2**30

ROLES = ("A", "B", "T1", "T2")
UNLABELED = "U"


class GeometryError(ValueError):
    """Raised for invalid geometric input (bad indices, degenerate sets)."""


class BudgetError(RuntimeError):
    """Raised when an exhaustive search is asked to exceed its size cap."""


@dataclass(frozen=True, order=True)
class Point:
    x: int
    y: int

    def __post_init__(self):
        if not (isinstance(self.x, int) and isinstance(self.y, int)):
            raise TypeError(f"coordinates must be int, got {self.x!r}, {self.y!r}")
        if abs(self.x) > COORD_LIMIT or abs(self.y) > COORD_LIMIT:
            raise GeometryError(f"coordinate out of range: ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


class Segment(NamedTuple):
    """Unordered index pair ``i < j`` into a point set; the vertex identity of D(P)."""

    i: int
    j: int


def seg(i: int, j: int) -> Segment:
    if i == j:
        raise GeometryError(f"degenerate segment ({i}, {i})")
    return Segment(i, j) if i < j else Segment(j, i)


@dataclass(frozen=True)
class PointSet:
    """Ordered integer points with optional role labels (A, B, T1, T2 or U)."""

    points: tuple[Point, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise GeometryError("points must be pairwise distinct")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(pts):
                raise GeometryError(f"{len(labels)} labels for {len(pts)} points")
            bad = set(labels) - set(ROLES) - {UNLABELED}
            if bad:
                raise GeometryError(f"unknown labels {sorted(bad)}")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def of(cls, coords: Iterable[Sequence[int]], labels: Iterable[str] | None = None) -> PointSet:
        return cls(tuple(Point(int(x), int(y)) for x, y in coords),
                   None if labels is None else tuple(labels))

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def segments(self) -> list[Segment]:
        return [Segment(i, j) for i, j in itertools.combinations(range(len(self)), 2)]

    def role(self, role: str) -> list[int]:
        """Indices carrying ``role``, in point order."""
        if self.labels is None:
            return []
        return [i for i, lab in enumerate(self.labels) if lab == role]

    def subset(self, indices: Sequence[int]) -> PointSet:
        labels = None if self.labels is None else tuple(self.labels[i] for i in indices)
        return PointSet(tuple(self.points[i] for i in indices), labels)

    def name(self, i: int) -> str:
        """Paper-style point name: ``a3``, ``b1``, ``t1^2``; ``p<i>`` when unlabeled."""
        if self.labels is None or self.labels[i] == UNLABELED:
            return f"p{i}"
        role = self.labels[i]
        rank = self.role(role).index(i) + 1
        if role in ("A", "B"):
            return f"{role.lower()}{rank}"
        return f"t{role[1]}^{rank}"

    def index_of(self, name: str) -> int:
        for i in range(len(self)):
            if self.name(i) == name:
                return i
        raise KeyError(name)

    def segment_name(self, e: Segment) -> str:
        return self.name(e.i) + self.name(e.j)


class Relation(enum.Enum):
    INCIDENT = "incident"
    CROSSING = "crossing"
    DISJOINT = "disjoint"


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of det(q - p, r - p): +1 counterclockwise, -1 clockwise, 0 collinear."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (d > 0) - (d < 0)


def _on_closed_segment(p: Point, q: Point, r: Point) -> bool:
    # r collinear with pq assumed
    return min(p.x, q.x) <= r.x <= max(p.x, q.x) and min(p.y, q.y) <= r.y <= max(p.y, q.y)


def closed_segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool:
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and _on_closed_segment(a, b, c)) or (o2 == 0 and _on_closed_segment(a, b, d))
            or (o3 == 0 and _on_closed_segment(c, d, a)) or (o4 == 0 and _on_closed_segment(c, d, b)))


def segment_relation(P: PointSet, e: Segment, f: Segment) -> Relation:
    if set(e) == set(f):
        raise GeometryError(f"segment_relation needs two distinct segments, got {e} twice")
    if set(e) & set(f):
        return Relation.INCIDENT
    if closed_segments_meet(P[e[0]], P[e[1]], P[f[0]], P[f[1]]):
        return Relation.CROSSING
    return Relation.DISJOINT


def in_general_position(P: PointSet) -> bool:
    if len(set(P.points)) != len(P):
        return False
    return all(orient(p, q, r) != 0 for p, q, r in itertools.combinations(P.points, 3))


def require_general_position(P: PointSet) -> None:
    for i, j, k in itertools.combinations(range(len(P)), 3):
        if orient(P[i], P[j], P[k]) == 0:
            raise GeometryError(f"points {i}, {j}, {k} are collinear")


def crossing_pairs(P: PointSet) -> list[tuple[Segment, Segment]]:
    """All unordered pairs of crossing segments, by brute force."""
    segs = P.segments()
    return [(e, f) for e, f in itertools.combinations(segs, 2)
            if segment_relation(P, e, f) is Relation.CROSSING]


def hull_indices(P: PointSet, indices: Sequence[int] | None = None) -> list[int]:
    """Convex hull vertices (counterclockwise, strict) by monotone chain."""
    idx = list(range(len(P))) if indices is None else list(indices)
    idx.sort(key=lambda i: (P[i].x, P[i].y))
    if len(idx) <= 2:
        return idx

    def half(order):
        chain: list[int] = []
        for i in order:
            while len(chain) >= 2 and orient(P[chain[-2]], P[chain[-1]], P[i]) <= 0:
                chain.pop()
            chain.append(i)
        return chain

    lower, upper = half(idx), half(reversed(idx))
    return lower[:-1] + upper[:-1]


def in_convex_position(P: PointSet, indices: Sequence[int] | None = None) -> bool:
    n = len(P) if indices is None else len(indices)
    return len(hull_indices(P, indices)) == n


def convex_k_subset_exists(P: PointSet, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """Brute-force search for ``k`` points in convex position; returns (found, witness)."""
    if not 3 <= k <= len(P):
        raise GeometryError(f"k={k} out of range for {len(P)} points")
    witness = next(iter(convex_k_subsets(P, k)), None)
    return witness is not None, witness


def convex_k_subsets(P: PointSet, k: int):
    """Yield every k-subset in convex position, lexicographically."""
    for sub in itertools.combinations(range(len(P)), k):
        if in_convex_position(P, sub):
            yield sub


def _left_counts(P: PointSet) -> list[tuple[int, ...]]:
    # per point: sorted numbers of points left of each directed line p->q
    n = len(P)
    sig = []
    for p in range(n):
        counts = sorted(sum(1 for r in range(n) if r not in (p, q) and orient(P[p], P[q], P[r]) > 0)
                        for q in range(n) if q != p)
        sig.append(tuple(counts))
    return sig


def same_order_type(P: PointSet, Q: PointSet, max_n: int = 12) -> dict[int, int] | None:
    """Orientation-preserving bijection P -> Q as an index map, or None.

    Backtracks over partial bijections and checks every triple that gains its
    last point. Mirror images do not count as the same order type.
    """
    if len(P) != len(Q):
        return None
    n = len(P)
    if n > max_n:
        raise BudgetError(f"same_order_type is capped at {max_n} points, got {n}")
    if n <= 2:
        return {i: i for i in range(n)}
    if len(hull_indices(P)) != len(hull_indices(Q)):
        return None
    op = {t: orient(P[t[0]], P[t[1]], P[t[2]]) for t in itertools.permutations(range(n), 3)}
    oq = {t: orient(Q[t[0]], Q[t[1]], Q[t[2]]) for t in itertools.permutations(range(n), 3)}
    sp, sq = _left_counts(P), _left_counts(Q)
    if sorted(sp) != sorted(sq):
        return None
    cands = [[j for j in range(n) if sq[j] == sp[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(cands[i]))
    image: dict[int, int] = {}
    used = set()

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        placed = order[:pos]
        for j in cands[i]:
            if j in used:
                continue
            ok = all(op[(a, b, i)] == oq[(image[a], image[b], j)]
                     for a, b in itertools.combinations(placed, 2))
            if not ok:
                continue
            image[i] = j
            used.add(j)
            if extend(pos + 1):
                return True
            del image[i]
            used.discard(j)
        return False

    return dict(sorted(image.items())) if extend(0) else None


def leftmost(P: PointSet, e: Segment) -> int:
    """l(e): the endpoint with the smaller x-coordinate."""
    a, b = e
    if P[a].x == P[b].x:
        raise GeometryError(f"segment {e} is vertical")
    return a if P[a].x < P[b].x else b


def rightmost(P: PointSet, e: Segment) -> int:
    a, b = e
    return b if leftmost(P, e) == a else a


def sq_dist_to_segment(P: PointSet, p: int, e: Segment) -> Fraction:
    """Squared distance from point ``p`` to the closed segment ``e``, exactly."""
    a, b, r = P[e[0]], P[e[1]], P[p]
    dx, dy = b.x - a.x, b.y - a.y
    t = Fraction((r.x - a.x) * dx + (r.y - a.y) * dy, dx * dx + dy * dy)
    t = min(max(t, Fraction(0)), Fraction(1))
    px, py = a.x + t * dx - r.x, a.y + t * dy - r.y
    return px * px + py * py


def dist_cmp(P: PointSet, p: int, q: int, e: Segment) -> int:
    """Compare d(p, e) with d(q, e): -1 less, 0 equal, +1 greater."""
    if p in e or q in e:
        raise GeometryError("dist_cmp points must not be endpoints of the segment")
    dp, dq = sq_dist_to_segment(P, p, e), sq_dist_to_segment(P, q, e)
    return (dp > dq) - (dp < dq)
