"""Point families: convex sets, double chains and the 16-point set X.

The point-set text format is ``n`` on the first line, then ``x y`` per point,
optionally followed by a ``labels ...`` line. Lines starting with ``#`` are
comments.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from pathlib import Path

from .geometry import (ROLES, GeometryError, PointSet, convex_k_subset_exists,
                       in_convex_position, in_general_position, orient, same_order_type)

DATA_ENV = "DLAB_DATA"
DEFAULT_X_PATH = Path(__file__).resolve().parents[2] / "data" / "x16.pts"
X_ROLE_SIZES = {"A": 5, "B": 5, "T1": 3, "T2": 3}


def make_convex(n: int) -> PointSet:
    """n points on the parabola y = x^2 + x (no two share an x or a y)."""
    if n < 3:
        raise GeometryError("convex position needs n >= 3")
    return PointSet.of((i, i * i + i) for i in range(n))


def make_double_chain(k: int, l: int) -> PointSet:
    """C_{k,l}: a lower cap of k points (indices 0..k-1) under an upper cup of l points.

    Lower x-coordinates are 1 mod 4 and upper ones 3 mod 4, so no segment is
    vertical, and no two lower (or upper) |x| agree, so none is horizontal.
    """
    if k < 1 or l < 1:
        raise GeometryError("both chains need at least one point")
    lower_x = [4 * (i - k // 2) + 1 for i in range(k)]
    upper_x = [4 * (j - l // 2) - 1 for j in range(l)]
    gap = 4 * (k + l) ** 2
    while True:
        P = PointSet.of([(x, -gap - x * x) for x in lower_x] + [(x, gap + x * x) for x in upper_x])
        if in_general_position(P) and is_double_chain(P, k, l):
            return P
        gap += 1


def _chain_shape(P: PointSet, idx, sign: int) -> bool:
    # consecutive triples by x turn the same way: sign -1 cap, +1 cup
    idx = sorted(idx, key=lambda i: P[i].x)
    return all(orient(P[a], P[b], P[c]) == sign for a, b, c in zip(idx, idx[1:], idx[2:]))


def is_double_chain(P: PointSet, k: int, l: int) -> bool:
    """First k points form the lower chain, the last l the upper one.

    Besides the below/above conditions, the lower chain must be a cap and the
    upper chain a cup (the chains bulge toward each other). The below/above
    conditions alone also admit a convex polygon cut in two.
    """
    if len(P) != k + l:
        raise GeometryError(f"{len(P)} points for a {k}+{l} double chain")
    lower, upper = list(range(k)), list(range(k, k + l))

    def below_all(pts, chain, side):
        for a, b in itertools.combinations(chain, 2):
            p, q = (a, b) if P[a].x < P[b].x else (b, a)
            if any(orient(P[p], P[q], P[r]) != side for r in pts):
                return False
        return True

    return (below_all(lower, upper, -1) and below_all(upper, lower, +1)
            and in_convex_position(P, lower) and in_convex_position(P, upper)
            and _chain_shape(P, lower, -1) and _chain_shape(P, upper, +1))


# ---------------------------------------------------------------- file format

def write_pointset(P: PointSet, path, comment: str | None = None) -> Path:
    lines = [f"# {ln}" for ln in (comment or "").splitlines()]
    lines.append(str(len(P)))
    lines += [f"{p.x} {p.y}" for p in P]
    if P.labels is not None:
        lines.append("labels " + " ".join(P.labels))
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    return path


def read_pointset(path) -> PointSet:
    rows = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        text = raw.strip()
        if text and not text.startswith("#"):
            rows.append((lineno, text))
    if not rows:
        raise GeometryError(f"{path}: empty point file")
    lineno, head = rows[0]
    try:
        n = int(head)
    except ValueError:
        raise GeometryError(f"{path}:{lineno}: expected point count, got {head!r}") from None
    labels = None
    if rows[-1][1].startswith("labels"):
        labels = rows[-1][1].split()[1:]
        rows = rows[:-1]
    body = rows[1:]
    if len(body) != n:
        raise GeometryError(f"{path}: header says {n} points, found {len(body)}")
    coords = []
    for lineno, text in body:
        parts = text.split()
        if len(parts) != 2:
            raise GeometryError(f"{path}:{lineno}: expected 'x y', got {text!r}")
        try:
            coords.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GeometryError(f"{path}:{lineno}: non-integer coordinate in {text!r}") from None
    if len(set(coords)) != len(coords):
        raise GeometryError(f"{path}: duplicate point")
    return PointSet.of(coords, labels)


# ---------------------------------------------------------------- X

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class PropertyReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.passed else 'FAIL'} {c.name} {c.detail}".rstrip() for c in self.checks]


@dataclass
class XCandidate:
    points: PointSet
    seed: int | None = None
    trace: list[str] = field(default_factory=list)
    report: PropertyReport | None = None


def require_x_labels(P: PointSet) -> None:
    if P.labels is None:
        raise GeometryError("X candidate needs A/B/T1/T2 labels")
    for role, size in X_ROLE_SIZES.items():
        if len(P.role(role)) != size:
            raise GeometryError(f"X candidate needs {size} points labeled {role}")
    if set(P.labels) - set(ROLES):
        raise GeometryError("X candidate points must all carry a role")


SEPARABLE_SETS = (("A",), ("B",), ("T1",), ("T2",), ("A", "B"), ("T1", "T2"))


def verify_x_properties(P: PointSet, fast_fail: bool = False) -> PropertyReport:
    """Check the listed properties of X in order; ``fast_fail`` stops at the first failure."""
    from .coloring import q_plus

    require_x_labels(P)
    report = PropertyReport()
    role = {r: P.role(r) for r in ROLES}

    def add(name, ok, detail=""):
        report.checks.append(CheckResult(name, bool(ok), detail))
        return ok or not fast_fail

    gp = in_general_position(P)
    if not add("general-position", gp) or not gp:
        return report
    found, hexagon = convex_k_subset_exists(P, 6)
    if not add("no-convex-hexagon", not found, "" if not found else f"hexagon {hexagon}"):
        return report
    axis = [P.segment_name(e) for e in P.segments()
            if P[e.i].x == P[e.j].x or P[e.i].y == P[e.j].y]
    if not add("no-axis-parallel-segment", not axis, " ".join(axis[:3])):
        return report
    bad = []
    for r in ("T1", "T2"):
        for a, b in itertools.combinations(role[r], 2):
            if (P[a].y - P[b].y) * (P[a].x - P[b].x) >= 0:
                bad.append(P.name(a) + P.name(b))
    if not add("T-segments-negative-slope", not bad, " ".join(bad)):
        return report
    for name, idx, ref in [("A+B~C5,5", role["A"] + role["B"], make_double_chain(5, 5)),
                           ("A+T1~C5,3", role["A"] + role["T1"], make_double_chain(5, 3)),
                           ("T2+B~C3,5", role["T2"] + role["B"], make_double_chain(3, 5)),
                           ("T1+T2~C3,3", role["T1"] + role["T2"], make_double_chain(3, 3))]:
        if not add(name, same_order_type(P.subset(idx), ref) is not None):
            return report
    mirror = same_order_type(P.subset(role["A"] + role["T2"]), P.subset(role["B"] + role["T1"]))
    if not add("A+T2~B+T1", mirror is not None):
        return report
    for group in SEPARABLE_SETS:
        Q = [i for r in group for i in role[r]]
        plus = q_plus(P, Q)
        names = " ".join(sorted(P.segment_name(e) for e in plus)[:3])
        if not add("separable-" + "+".join(group), not plus, names):
            return report
    return report


def canonical_x_path() -> Path:
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else DEFAULT_X_PATH


def load_canonical_x() -> PointSet:
    path = canonical_x_path()
    if not path.exists():
        raise FileNotFoundError(f"canonical X not found at {path} (set {DATA_ENV} to override)")
    P = read_pointset(path)
    require_x_labels(P)
    return P


def search_x(seed: int, budget: int) -> XCandidate:
    """Seeded template-plus-hill-climb search for X; see :mod:`dlab.xsearch`."""
    from .xsearch import search_x as run

    return run(seed, budget)
