"""Randomized search for the 16-point set X.

A template places A and B as the two chains of a C_{5,5} and the two small
triangles T1 (a cap) and T2 (a cup) side by side, low between the chains.
Hill climbing then moves one point (or one T-group) at a time. It minimizes
a score that counts failed structural checks and, once those all pass, the
disagreement with two finer targets:

* the set of segments that are not a side of any convex pentagon must equal
  the excluded list used by the Proposition 4 colorings;
* for every a in A, the triangle a b_p b_q contains T1 + T2 exactly when
  p <= 3 < q.

A climb that reaches score 0 is then screened exactly (all bullets, chi = 6
on A+T2 and B+T1, and no 5-coloring for the 25 sets T1+{a,b}+T2). Every
random draw comes from one ``random.Random(seed)``, so seed and budget fix
the result bit for bit.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .coloring import EXCLUDED_SEGMENTS
from .constructions import (PropertyReport, XCandidate, make_double_chain,
                            verify_x_properties)
from .geometry import GeometryError, PointSet, same_order_type

LABELS = ["A"] * 5 + ["B"] * 5 + ["T1"] * 3 + ["T2"] * 3
IDX = {"A": list(range(5)), "B": list(range(5, 10)), "T1": [10, 11, 12], "T2": [13, 14, 15]}
_S4 = np.array(list(itertools.combinations(range(16), 4)))
_S5 = np.array(list(itertools.combinations(range(16), 5)))
_S6 = list(itertools.combinations(range(16), 6))
_REF = {kl: make_double_chain(*kl) for kl in ((5, 5), (5, 3), (3, 5), (3, 3))}
# coordinates stay far below this, so int64 orientation products cannot overflow
_SEARCH_LIMIT = 1 << 29


class SearchFailure(RuntimeError):
    def __init__(self, message: str, best: PropertyReport | None, trace: list[str]):
        super().__init__(message)
        self.best = best
        self.trace = trace


@dataclass
class SearchConfig:
    seed: int = 12
    budget: int = 200_000          # total hill-climbing steps over all attempts
    stall: int = 1500              # steps without improvement before restarting
    screen_budget: int = 5_000_000
    trace: list[str] = field(default_factory=list)


def template(rnd: random.Random, W=4_000_000, H=10_000_000, c=1_500_000, jit=200_000,
             D=20000, r=6000, s=0.3, h=1500, center=(0, 0), dy=0) -> PointSet:
    A = [((i - 2) * W + rnd.randint(-jit, jit), H + c * (i - 2) ** 2 + rnd.randint(-jit, jit))
         for i in range(5)]
    B = [((i - 2) * W + rnd.randint(-jit, jit), -H - c * (i - 2) ** 2 + rnd.randint(-jit, jit))
         for i in range(5)]
    cx, cy = center

    def chain(ox, oy, sign):
        pts = []
        for u in (-1, 0, 1):
            uu = u * r + rnd.randint(-r // 10, r // 10)
            w = sign * (h if u == 0 else 0) + rnd.randint(-h // 10, h // 10)
            pts.append((round(ox + uu), round(oy - s * uu + w)))
        return sorted(pts)

    T1 = chain(cx - D, cy - dy, +1)
    T2 = chain(cx + D, cy + dy, -1)
    return PointSet.of(A + B + T1 + T2, LABELS)


# ---------------------------------------------------------------- scoring

def orientation_table(P: PointSet) -> np.ndarray:
    X = np.array([p.x for p in P], dtype=np.int64)
    Y = np.array([p.y for p in P], dtype=np.int64)
    dx = X[None, :, None] - X[:, None, None]
    dy = Y[None, :, None] - Y[:, None, None]
    ex = X[None, None, :] - X[:, None, None]
    ey = Y[None, None, :] - Y[:, None, None]
    return np.sign(dx * ey - dy * ex)


def _inside(O, p, x, y, z):
    return (O[x, y, p] == O[y, z, p]) & (O[y, z, p] == O[z, x, p])


def non_pentagon_sides(P: PointSet, O: np.ndarray | None = None) -> set[frozenset[str]]:
    """Names of segments that are not a hull side of any convex 5-subset."""
    O = orientation_table(P) if O is None else O
    S = _S5
    convex = np.ones(len(S), bool)
    for p in range(5):
        rest = [q for q in range(5) if q != p]
        for a, b, c in itertools.combinations(rest, 3):
            convex &= ~_inside(O, S[:, p], S[:, a], S[:, b], S[:, c])
    C = S[convex]
    sides = set()
    for x, y in itertools.combinations(range(5), 2):
        rest = [k for k in range(5) if k not in (x, y)]
        s = [O[C[:, x], C[:, y], C[:, k]] for k in rest]
        ok = (s[0] == s[1]) & (s[1] == s[2])
        for a, b in C[ok][:, [x, y]]:
            sides.add((min(a, b), max(a, b)))
    return {frozenset((P.name(a), P.name(b)))
            for a, b in itertools.combinations(range(len(P)), 2) if (a, b) not in sides}


def containment_violations(O: np.ndarray) -> int:
    """Pairs (a, b_p b_q) where 'triangle contains T' disagrees with p <= 3 < q."""
    T = IDX["T1"] + IDX["T2"]
    bad = 0
    for a in IDX["A"]:
        for p, q in itertools.combinations(range(5), 2):
            x, y = IDX["B"][p], IDX["B"][q]
            inside = all(O[a, x, t] == O[x, y, t] == O[y, a, t] for t in T)
            bad += inside != (p <= 2 < q)
    return bad


def bullet_failures(P: PointSet, O: np.ndarray) -> list[str]:
    """Cheap version of the structural checks; at most one entry per failing group."""
    I, J, K = np.array(list(itertools.combinations(range(16), 3))).T
    if (O[I, J, K] == 0).any():
        return ["general-position"]
    fails = []
    if len({p.x for p in P}) < 16 or len({p.y for p in P}) < 16:
        fails.append("axis-parallel")
    for r in ("T1", "T2"):
        for a, b in itertools.combinations(IDX[r], 2):
            if (P[a].y - P[b].y) * (P[a].x - P[b].x) >= 0:
                fails.append("slope")
    a, b, c, d = _S4.T
    cv4 = ~(_inside(O, a, b, c, d) | _inside(O, b, a, c, d) | _inside(O, c, a, b, d)
            | _inside(O, d, a, b, c))
    convex4 = set(map(tuple, _S4[cv4]))
    for s6 in _S6:
        if all(q in convex4 for q in itertools.combinations(s6, 4)):
            fails.append("hexagon")
            break
    for tag, idx, ref in (("A+B", IDX["A"] + IDX["B"], (5, 5)), ("A+T1", IDX["A"] + IDX["T1"], (5, 3)),
                          ("T2+B", IDX["T2"] + IDX["B"], (3, 5)),
                          ("T1+T2", IDX["T1"] + IDX["T2"], (3, 3))):
        if same_order_type(P.subset(idx), _REF[ref]) is None:
            fails.append(tag)
    if same_order_type(P.subset(IDX["A"] + IDX["T2"]), P.subset(IDX["B"] + IDX["T1"])) is None:
        fails.append("A+T2~B+T1")

    def cross(e, f):
        (p, q), (r, s) = e, f
        return O[p, q, r] != O[p, q, s] and O[r, s, p] != O[r, s, q]

    for tag, Q in (("A", IDX["A"]), ("B", IDX["B"]), ("T1", IDX["T1"]), ("T2", IDX["T2"]),
                   ("A+B", IDX["A"] + IDX["B"]), ("T1+T2", IDX["T1"] + IDX["T2"])):
        inner = list(itertools.combinations(Q, 2))
        outer = [e for e in itertools.combinations(range(16), 2) if not set(e) & set(Q)]
        if any(cross(e, f) for e in outer for f in inner):
            fails.append("separable-" + tag)
            break
    return fails


def score(P: PointSet) -> tuple[int, list[str]]:
    O = orientation_table(P)
    fails = bullet_failures(P, O)
    if fails:
        return 1000 + len(fails), fails
    miss = non_pentagon_sides(P, O) ^ EXCLUDED_SEGMENTS
    return len(miss) + containment_violations(O), []


# ---------------------------------------------------------------- exact screen

def lemma_screen(P: PointSet, budget: int) -> list[str]:
    """Failed names among: chi(D(A+T2)) = chi(D(B+T1)) = 6, and no 5-coloring of D(T1+{a,b}+T2)."""
    from .exact import Verdict, chromatic_number, k_colorable
    from .graphs import build_disjointness, induced

    G = build_disjointness(P)
    fails = []
    for tag, Q in (("prop10-A+T2", IDX["A"] + IDX["T2"]), ("prop10-B+T1", IDX["B"] + IDX["T1"])):
        cert = chromatic_number(induced(G, Q), budget=budget)
        if not (cert.exact and cert.chi == 6):
            fails.append(tag)
    for a in IDX["A"]:
        for b in IDX["B"]:
            H = induced(G, IDX["T1"] + [a, b] + IDX["T2"])
            if k_colorable(H, 5, budget=budget).verdict is not Verdict.NO:
                fails.append(f"lemma14-{P.name(a)}{P.name(b)}")
    return fails


# ---------------------------------------------------------------- search

def _start(rnd: random.Random) -> tuple[PointSet, int]:
    while True:
        fy = rnd.uniform(-0.9, 0.3)
        P = template(rnd, center=(rnd.uniform(-1e6, 3e6), fy * 1e7),
                     s=rnd.choice([0.1, 0.3, 0.6]), D=rnd.choice([5000, 20000, 80000]),
                     r=rnd.choice([2000, 6000, 20000]), h=rnd.choice([300, 1500, 5000]),
                     dy=rnd.choice([0, 3000, -3000]))
        sc, _ = score(P)
        if sc < 1000:
            return P, sc


def _move(rnd: random.Random, pts: list[tuple[int, int]]) -> list[tuple[int, int]]:
    new = list(pts)
    k = rnd.randrange(16)
    if k < 10:
        scale = rnd.choice([1e3, 1e4, 1e5, 1e6])
    else:
        scale = rnd.choice([10, 100, 1000, 5000, 20000])
    if k >= 10 and rnd.random() < 0.25:
        grp = range(10, 13) if rnd.random() < 0.5 else range(13, 16)
        if rnd.random() < 0.5:
            grp = range(10, 16)
        dx, dy = rnd.gauss(0, scale * 10), rnd.gauss(0, scale * 10)
        for q in grp:
            new[q] = (round(new[q][0] + dx), round(new[q][1] + dy))
    else:
        new[k] = (round(new[k][0] + rnd.gauss(0, scale)), round(new[k][1] + rnd.gauss(0, scale)))
    return new


def search_x(seed: int, budget: int, cfg: SearchConfig | None = None) -> XCandidate:
    cfg = cfg or SearchConfig(seed=seed, budget=budget)
    rnd = random.Random(seed)
    trace = cfg.trace
    steps = 0
    attempt = 0
    best: tuple[int, PropertyReport] | None = None
    while steps < budget:
        P, cur = _start(rnd)
        pts = [(p.x, p.y) for p in P]
        stall = 0
        while cur > 0 and stall < cfg.stall and steps < budget:
            steps += 1
            stall += 1
            new = _move(rnd, pts)
            if any(abs(c) >= _SEARCH_LIMIT for xy in new for c in xy):
                continue
            try:
                Q = PointSet.of(new, LABELS)
            except GeometryError:
                continue
            sc, _ = score(Q)
            if sc <= cur:
                if sc < cur:
                    stall = 0
                cur, pts = sc, new
        P = PointSet.of(pts, LABELS)
        if cur > 0:
            _, fails = score(P)
            failed = fails[0] if fails else "pentagon-sides/containment"
            trace.append(f"{attempt} {seed} reject {failed} score={cur}")
            if best is None or cur < best[0]:
                best = (cur, verify_x_properties(P))
            attempt += 1
            continue
        report = verify_x_properties(P)
        failed = report.failed or lemma_screen(P, cfg.screen_budget)
        if failed:
            trace.append(f"{attempt} {seed} reject {failed[0]}")
            best = (0, report)
            attempt += 1
            continue
        trace.append(f"{attempt} {seed} accept -")
        return XCandidate(P, seed, trace, report)
    raise SearchFailure(f"no candidate within {budget} steps", best[1] if best else None, trace)
