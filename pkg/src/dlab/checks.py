"""Named, budgeted checks of the quantitative claims about D(P).

Each check returns :class:`CheckReport` records. Their JSON form holds only
deterministic fields (no wall time), so a rerun with the same X, seed and
budget reproduces the same bytes.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .coloring import (Coloring, ColoringError, EXCLUDED_SEGMENTS, classify_classes,
                       colorings_of, gamma_star, greedy_star_coloring, hexagon_upper_coloring,
                       is_excluded, is_proper, is_separable_wrt, prop4_coloring,
                       unique_color_3colorings, STAR)
from .constructions import load_canonical_x, make_convex, make_double_chain
from .exact import (DEFAULT_BUDGET, max_disjoint_family, ChromaticCertificate, ColorConstraints, Evidence, Verdict,
                    chromatic_number, export_cnf_kcolor, k_colorable, verify_certificate,
                    write_certificate)
from .geometry import PointSet, Segment, in_general_position, orient, seg
from .graphs import DisjointnessGraph, build_disjointness, induced

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"


# ---------------------------------------------------------------- formulas

def _tri_root(x: int) -> int:
    """floor(sqrt(x + 1/4) - 1/2), i.e. the largest m with m(m+1) <= x."""
    return (math.isqrt(4 * x + 1) - 1) // 2


def convex_chi(n: int) -> int:
    """chi(D(C_n)) = n - floor(sqrt(2n + 1/4) - 1/2)."""
    return n - _tri_root(2 * n)


def double_chain_chi(k: int, l: int) -> int:
    """chi(D(C_{k,l})) = k + l - floor(sqrt(2l + 1/4) - 1/2), for l >= max(3, k)."""
    if l < max(3, k):
        raise ValueError(f"formula needs l >= max(3, k), got k={k}, l={l}")
    return k + l - _tri_root(2 * l)


def double_chain_chi_alt(k: int, l: int) -> int:
    """The variant with the 1/2 inside the root: k + l - floor(sqrt(2l - 1/4))."""
    return k + l - _floor_sqrt_frac(Fraction(8 * l - 1, 4))


def _floor_sqrt_frac(q: Fraction) -> int:
    # floor(sqrt(q)) = floor(sqrt(floor(q))) for q >= 0
    return math.isqrt(q.numerator // q.denominator)


def bounds_row(n: int) -> dict:
    """Closed-form bounds on d(n); the log in the upper bound is taken base 2."""
    if n < 3:
        raise ValueError("bounds need n >= 3")
    lower = 5 * (n // 7)
    loglog = math.floor(math.log2(math.log2(n)))
    upper_log = Fraction(2 * n + 1 - loglog, 2)
    upper = min(Fraction(n - 2), upper_log)
    dchain = n - _tri_root(n)
    return {"n": n, "lower": lower, "upper": str(upper), "upper_log_term": str(upper_log),
            "log_base": 2, "double_chain_lower": dchain,
            "alert": lower > upper or dchain > upper}


# ---------------------------------------------------------------- reports

@dataclass
class CheckReport:
    check: str
    instance: str
    claimed: object
    computed: object
    verdict: str
    nodes: int = 0
    seconds: float = 0.0
    certificates: list[str] = field(default_factory=list)
    note: str = ""
    stretch: bool = False
    parts: list[CheckReport] = field(default_factory=list, repr=False)

    @property
    def acceptable(self) -> bool:
        """Pass, or Unknown on a check that is only a stretch goal."""
        return self.verdict == PASS or (self.verdict == UNKNOWN and self.stretch)

    def to_json(self) -> str:
        data = {"check": self.check, "instance": self.instance, "claimed": self.claimed,
                "computed": self.computed, "verdict": self.verdict, "nodes": self.nodes,
                "certificates": self.certificates, "note": self.note,
                "stretch": self.stretch}
        return json.dumps(data, sort_keys=True)

    def line(self) -> str:
        return (f"{self.verdict.upper():7s} {self.check:10s} {self.instance:40s} "
                f"claimed={self.claimed} computed={self.computed} ({self.seconds:.2f}s)"
                + (f" {self.note}" if self.note else ""))


@dataclass
class CheckConfig:
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    sample: int | None = None
    cert_dir: Path | None = None
    method: str = "bnb"
    workers: int = 1


def _combine(check: str, instance: str, claimed, parts: list[CheckReport], note="") -> CheckReport:
    if any(p.verdict == FAIL for p in parts):
        verdict = FAIL
    elif any(p.verdict == UNKNOWN for p in parts):
        verdict = UNKNOWN
    else:
        verdict = PASS
    ok = sum(p.verdict == PASS for p in parts)
    return CheckReport(check, instance, claimed, f"{ok}/{len(parts)}", verdict,
                       sum(p.nodes for p in parts), sum(p.seconds for p in parts),
                       [c for p in parts for c in p.certificates], note, parts=parts)


def _slug(text: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in text)


def _cert_path(cfg: CheckConfig, name: str) -> Path | None:
    if cfg.cert_dir is None:
        return None
    cfg.cert_dir.mkdir(parents=True, exist_ok=True)
    return cfg.cert_dir / f"{name}.cert"


def _witness_certs(G, col, cfg: CheckConfig, name: str) -> list[str]:
    """Write an upper-bound certificate (witness coloring, no lower-bound evidence)."""
    path = _cert_path(cfg, _slug(name))
    if path is None:
        return []
    lower = len(max_disjoint_family(G))
    cert = ChromaticCertificate(col.num_colors, col, Evidence("none"), min(lower, col.num_colors))
    if not verify_certificate(G, cert):
        return []
    write_certificate(cert, path)
    return [str(path)]


def chi_report(check: str, instance: str, G, claimed: int, cfg: CheckConfig,
               cert_name: str | None = None) -> CheckReport:
    t0 = time.perf_counter()
    cert = chromatic_number(G, budget=cfg.budget, method=cfg.method)
    secs = time.perf_counter() - t0
    certs = []
    path = _cert_path(cfg, _slug(cert_name or f"{check}-{instance}"))
    if path is not None and isinstance(G, DisjointnessGraph):
        write_certificate(cert, path)
        certs.append(str(path))
    if not verify_certificate(G, cert):
        return CheckReport(check, instance, claimed, cert.chi, FAIL, cert.nodes, secs, certs,
                           "certificate failed verification")
    if not cert.exact:
        computed = f"[{cert.lower},{cert.chi}]"
        verdict = FAIL if not cert.lower <= claimed <= cert.chi else UNKNOWN
        return CheckReport(check, instance, claimed, computed, verdict, cert.nodes, secs, certs,
                           "budget exhausted")
    verdict = PASS if cert.chi == claimed else FAIL
    return CheckReport(check, instance, claimed, cert.chi, verdict, cert.nodes, secs, certs)


def refute_report(check: str, instance: str, G, k: int, cfg: CheckConfig,
                  constraints: ColorConstraints | None = None, claimed=None) -> CheckReport:
    """PASS when G has no k-coloring satisfying ``constraints``."""
    res = k_colorable(G, k, constraints, budget=cfg.budget, method=cfg.method)
    claimed = claimed if claimed is not None else f">={k + 1}"
    if res.verdict is Verdict.NO:
        note = res.note if res.note.startswith("inconsistent") else ""
        certs = []
        path = _cert_path(cfg, _slug(f"{check}-{instance}"))
        if path is not None:
            # witness with k+1 colors plus the exhausted search for k
            up = k_colorable(G, k + 1, constraints, budget=cfg.budget)
            if up.verdict is Verdict.YES:
                cert = ChromaticCertificate(k + 1, up.coloring,
                                            Evidence("exhausted", res.nodes), k + 1,
                                            constraints=constraints or ColorConstraints())
                if verify_certificate(G, cert):
                    write_certificate(cert, path)
                    certs.append(str(path))
        return CheckReport(check, instance, claimed, f"no {k}-coloring", PASS, res.nodes,
                           res.seconds, certs, note)
    if res.verdict is Verdict.UNKNOWN:
        return CheckReport(check, instance, claimed, "unknown", UNKNOWN, res.nodes, res.seconds,
                           [], res.note)
    return CheckReport(check, instance, claimed, f"{k}-coloring found", FAIL, res.nodes,
                       res.seconds, [], "counterexample coloring: "
                       + " ".join(map(str, res.coloring.assignment)))


# ---------------------------------------------------------------- tables

def cmd_convex_table(max_n: int, cfg: CheckConfig | None = None, min_n: int = 3) -> list[CheckReport]:
    cfg = cfg or CheckConfig()
    out = []
    for n in range(min_n, max_n + 1):
        G = build_disjointness(make_convex(n))
        out.append(chi_report("convex", f"C_{n}", G, convex_chi(n), cfg))
    return out


DOUBLE_CHAIN_PAIRS = ((1, 3), (2, 3), (3, 3), (2, 4), (3, 4), (3, 5), (4, 5), (5, 5))


def cmd_double_chain_table(pairs: Iterable[tuple[int, int]] = DOUBLE_CHAIN_PAIRS,
                           cfg: CheckConfig | None = None) -> list[CheckReport]:
    cfg = cfg or CheckConfig()
    out = []
    for k, l in pairs:
        name = f"C_{k},{l}"
        if l < max(3, k):
            out.append(CheckReport("dchain", name, None, None, UNKNOWN,
                                   note="skipped: formula needs l >= max(3, k)"))
            continue
        G = build_disjointness(make_double_chain(k, l))
        rep = chi_report("dchain", name, G, double_chain_chi(k, l), cfg)
        alt = double_chain_chi_alt(k, l)
        if alt != double_chain_chi(k, l):
            rep.note = (rep.note + " " if rep.note else "") + f"root-inside variant gives {alt}"
        out.append(rep)
    return out


def cmd_bounds(n: int) -> dict:
    return bounds_row(n)


# ---------------------------------------------------------------- X helpers

@dataclass
class XContext:
    P: PointSet
    G: DisjointnessGraph

    @classmethod
    def load(cls, P: PointSet | None = None) -> XContext:
        P = P if P is not None else load_canonical_x()
        return cls(P, build_disjointness(P))

    def role(self, r: str) -> list[int]:
        return self.P.role(r)

    def names(self, Q: Iterable[int]) -> str:
        return ",".join(self.P.name(q) for q in sorted(Q))

    def sub(self, Q: Sequence[int]) -> tuple[DisjointnessGraph, list[int]]:
        Qs = sorted(set(Q))
        return induced(self.G, Qs), Qs

    def vertex(self, H: DisjointnessGraph, Qs: list[int], a: int, b: int) -> int:
        return H.vertex(seg(Qs.index(a), Qs.index(b)))


def _sample(items: list, count: int | None, seed: int) -> list:
    if count is None or count >= len(items):
        return items
    rnd = random.Random(seed)
    picked = sorted(rnd.sample(range(len(items)), count))
    return [items[i] for i in picked]


def right_of_line(P: PointSet, a: int, b: int, p: int) -> bool:
    """p lies in the open half-plane of larger x bounded by the line ab (ab not horizontal)."""
    pa, pb, pp = P[a], P[b], P[p]
    if pa.y == pb.y:
        raise ValueError("line is horizontal")
    x_on_line = pa.x + Fraction((pp.y - pa.y) * (pb.x - pa.x), pb.y - pa.y)
    return pp.x > x_on_line


def _sq_dist_point_segment(px: Fraction, py: Fraction, P: PointSet, e: Segment) -> Fraction:
    a, b = P[e.i], P[e.j]
    dx, dy = b.x - a.x, b.y - a.y
    t = ((px - a.x) * dx + (py - a.y) * dy) / (dx * dx + dy * dy)
    t = min(max(t, Fraction(0)), Fraction(1))
    qx, qy = a.x + t * dx - px, a.y + t * dy - py
    return qx * qx + qy * qy


def closest_triangle(P: PointSet, a: int, b: int) -> dict[str, str]:
    """Which of T1, T2 is closer to segment ab, by nearest vertex and by centroid."""
    e = seg(a, b)
    out = {}
    vert = {r: min(_sq_dist_point_segment(Fraction(P[v].x), Fraction(P[v].y), P, e)
                   for v in P.role(r)) for r in ("T1", "T2")}
    cent = {}
    for r in ("T1", "T2"):
        vs = P.role(r)
        cx = Fraction(sum(P[v].x for v in vs), 3)
        cy = Fraction(sum(P[v].y for v in vs), 3)
        cent[r] = _sq_dist_point_segment(cx, cy, P, e)
    for key, d in (("vertex", vert), ("centroid", cent)):
        out[key] = "T1" if d["T1"] < d["T2"] else "T2" if d["T2"] < d["T1"] else "tie"
    return out


# ---------------------------------------------------------------- lemma families

@dataclass
class LemmaInstance:
    label: str
    points: list[int]
    k: int                      # colors that must be refuted
    constraints: Callable | None = None   # (H, Qs) -> ColorConstraints
    note: str = ""


def lemma_instances(ctx: XContext, lemma: int) -> list[LemmaInstance]:
    A, B = ctx.role("A"), ctx.role("B")
    T1, T2 = ctx.role("T1"), ctx.role("T2")
    T = T1 + T2
    name = ctx.P.name
    out: list[LemmaInstance] = []
    if lemma == 11:
        for I, tag in ((A, "A"), (B, "B")):
            Q = T1 + I + T2
            out.append(LemmaInstance(f"T1+{tag}+T2", Q, len(Q) - 3))
    elif lemma == 13:
        for a3 in itertools.combinations(A, 3):
            for b3 in itertools.combinations(B, 3):
                for t3 in itertools.combinations(T, 3):
                    Q = list(a3 + b3 + t3)
                    out.append(LemmaInstance(ctx.names(Q), Q, len(Q) - 3))
    elif lemma in (14, 16):
        for a in A:
            for b in B:
                Q = T1 + [a, b] + T2
                if lemma == 14:
                    out.append(LemmaInstance(f"{name(a)}{name(b)}", Q, 5))
                else:
                    cons = (lambda a, b: lambda H, Qs: ColorConstraints(
                        unique={ctx.vertex(H, Qs, a, b)}))(a, b)
                    out.append(LemmaInstance(f"{name(a)}{name(b)}", Q, 6, cons))
    elif lemma == 17:
        for a in A:
            for b in B:
                which = closest_triangle(ctx.P, a, b)
                if which["vertex"] != which["centroid"] or "tie" in which.values():
                    out.append(LemmaInstance(f"{name(a)}{name(b)}", [], 0,
                                             note=f"closest triangle ambiguous: {which}"))
                    continue
                Tj = ctx.role(which["vertex"])
                Tother = T2 if which["vertex"] == "T1" else T1
                for t in Tother:
                    for x in (a, b):
                        Q = Tj + [a, b, t]
                        cons = (lambda a, b, x, t: lambda H, Qs: ColorConstraints(
                            unique={ctx.vertex(H, Qs, a, b), ctx.vertex(H, Qs, x, t)}))(a, b, x, t)
                        out.append(LemmaInstance(
                            f"{name(a)}{name(b)} T{which['vertex'][1]} t={name(t)} x={name(x)}",
                            Q, 5, cons))
    elif lemma == 18:
        for a in A:
            for b in B:
                if not all(right_of_line(ctx.P, a, b, t) for t in T1):
                    continue
                for i, j in itertools.combinations(range(3), 2):
                    ti, tj = T2[i], T2[j]
                    Q = T1 + [a, b, ti, tj]
                    cons = (lambda a, b, ti, tj: lambda H, Qs: ColorConstraints(
                        fixed=[(ctx.vertex(H, Qs, a, ti), 0), (ctx.vertex(H, Qs, a, tj), 0),
                               (ctx.vertex(H, Qs, ti, tj), 0)],
                        unique={ctx.vertex(H, Qs, a, b), ctx.vertex(H, Qs, b, tj)}))(a, b, ti, tj)
                    out.append(LemmaInstance(f"{name(a)}{name(b)} i={i + 1} j={j + 1}", Q, 6, cons))
    elif lemma == 20:
        for tri in itertools.combinations(A + B, 3):
            Q = T1 + list(tri) + T2
            out.append(LemmaInstance(ctx.names(tri), Q, len(Q) - 3))
    elif lemma == 21:
        for U, V in ((A, B), (B, A)):
            for tri in itertools.combinations(U, 3):
                for y in V:
                    Q = T1 + list(tri) + [y] + T2
                    out.append(LemmaInstance(ctx.names(list(tri) + [y]), Q, len(Q) - 3))
    elif lemma == 23:
        for aa in itertools.combinations(A, 2):
            for bb in itertools.combinations(B, 2):
                Q = T1 + list(aa + bb) + T2
                out.append(LemmaInstance(ctx.names(aa + bb), Q, 7))
    elif lemma == 24:
        for U, V in ((A, B), (B, A)):
            for tri in itertools.combinations(U, 3):
                for pq in itertools.combinations(V, 2):
                    Q = T1 + list(tri + pq) + T2
                    out.append(LemmaInstance(ctx.names(tri + pq), Q, 8))
    else:
        raise ValueError(f"no instance family for lemma {lemma}")
    return out


LEMMA_IDS = (11, 13, 14, 16, 17, 18, 20, 21, 22, 23, 24)
LEMMA_CLAIMS = {11: "chi=|Q|-2", 13: "chi=|Q|-2", 14: ">=6", 16: ">=7", 17: ">=6", 18: ">=7",
                20: ">=|Q|-2", 21: ">=|Q|-2", 22: "star or >=|Q|-2", 23: ">=8", 24: ">=9"}


def _run_instance(ctx: XContext, lemma: int, inst: LemmaInstance, cfg: CheckConfig) -> CheckReport:
    check = f"lemma{lemma}"
    if not inst.points:
        return CheckReport(check, inst.label, LEMMA_CLAIMS[lemma], "undefined", FAIL, note=inst.note)
    H, Qs = ctx.sub(inst.points)
    cons = inst.constraints(H, Qs) if inst.constraints else None
    rep = refute_report(check, inst.label, H, inst.k, cfg, cons, LEMMA_CLAIMS[lemma])
    if cons is not None and rep.verdict == PASS and rep.note.startswith("inconsistent"):
        rep.verdict = FAIL
        rep.note = "hypotheses are unsatisfiable as encoded: " + rep.note
    return rep


LEMMA_DEFAULT_SAMPLE = {13: 100, 24: 20}


def _lemma_instance_list(ctx: XContext, lemma: int, cfg: CheckConfig) -> list[LemmaInstance]:
    sample = cfg.sample if cfg.sample is not None else LEMMA_DEFAULT_SAMPLE.get(lemma)
    if sample is not None and sample <= 0:
        sample = None
    return _sample(lemma_instances(ctx, lemma), sample, cfg.seed)


_WORKER: dict = {}


def _worker_init(coords, labels, lemma, cfg):
    ctx = XContext.load(PointSet.of(coords, labels))
    _WORKER.update(ctx=ctx, lemma=lemma, cfg=cfg, insts=_lemma_instance_list(ctx, lemma, cfg))


def _worker_run(index: int) -> CheckReport:
    w = _WORKER
    return _run_instance(w["ctx"], w["lemma"], w["insts"][index], w["cfg"])


def cmd_lemma(lemma: int, cfg: CheckConfig | None = None, ctx: XContext | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    ctx = ctx or XContext.load()
    if lemma == 22:
        return _prop22(ctx, cfg)
    insts = _lemma_instance_list(ctx, lemma, cfg)
    if cfg.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        coords = [(p.x, p.y) for p in ctx.P]
        with ProcessPoolExecutor(cfg.workers, initializer=_worker_init,
                                 initargs=(coords, ctx.P.labels, lemma, cfg)) as pool:
            # map keeps instance order whatever the completion order
            parts = list(pool.map(_worker_run, range(len(insts))))
    else:
        parts = [_run_instance(ctx, lemma, inst, cfg) for inst in insts]
    rep = _combine(f"lemma{lemma}", f"{len(insts)} instances", LEMMA_CLAIMS[lemma], parts)
    if lemma == 11 and rep.verdict == PASS:
        rep.computed = "chi=9 on both"
    if lemma == 17:
        rep.note = "closest triangle: nearest vertex and centroid distance must agree"
    rep.stretch = lemma in STRETCH_LEMMAS
    return rep


STRETCH_LEMMAS = (24,)


def _prop22(ctx: XContext, cfg: CheckConfig) -> CheckReport:
    """For every convex quadrilateral of A+B around T1+T2 and every A-B side l of it:
    l lies in a star of the optimal coloring found, or chi(D(Q)) >= |Q| - 2."""
    from .geometry import hull_indices

    P = ctx.P
    A, B = set(ctx.role("A")), set(ctx.role("B"))
    T = ctx.role("T1") + ctx.role("T2")
    parts = []
    for quad in itertools.combinations(sorted(A | B), 4):
        hull = hull_indices(P, quad)
        if len(hull) != 4:
            continue
        if not all(_inside_polygon(P, hull, t) for t in T):
            continue
        Q = T + list(quad)
        H, Qs = ctx.sub(Q)
        cert = chromatic_number(H, budget=cfg.budget, method=cfg.method)
        label = ctx.names(quad)
        path = _cert_path(cfg, _slug(f"prop22-{label}"))
        if path is not None:
            write_certificate(cert, path)
        if not cert.exact:
            parts.append(CheckReport("prop22", label, LEMMA_CLAIMS[22], "unknown", UNKNOWN, cert.nodes))
            continue
        if cert.chi >= len(Q) - 2:
            parts.append(CheckReport("prop22", label, LEMMA_CLAIMS[22], cert.chi, PASS, cert.nodes))
            continue
        sides = [seg(hull[k], hull[(k + 1) % 4]) for k in range(4)]
        ab_sides = [e for e in sides if (e.i in A) != (e.j in A)]
        stars = {tuple(info.members) for info in classify_classes(cert.witness) if info.kind == STAR}
        ok = True
        for e in ab_sides:
            v = ctx.vertex(H, Qs, e.i, e.j)
            member = H.segment(v)
            ok &= any(member in members for members in stars)
        parts.append(CheckReport("prop22", label, LEMMA_CLAIMS[22], cert.chi, PASS if ok else FAIL,
                                 cert.nodes))
    return _combine("lemma22", f"{len(parts)} quadrilaterals", LEMMA_CLAIMS[22], parts)


def _inside_polygon(P: PointSet, hull: list[int], p: int) -> bool:
    # hull is counterclockwise
    return all(orient(P[hull[k]], P[hull[(k + 1) % len(hull)]], P[p]) > 0 for k in range(len(hull)))


# ---------------------------------------------------------------- propositions

PROP_IDS = (3, 4, 5, 6, 7, 10)


def random_general_position(n: int, rnd: random.Random, span: int = 10**6) -> PointSet:
    while True:
        pts = set()
        while len(pts) < n:
            pts.add((rnd.randrange(span), rnd.randrange(span)))
        P = PointSet.of(sorted(pts))
        if in_general_position(P):
            return P


def cmd_prop(prop: int, cfg: CheckConfig | None = None, ctx: XContext | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    if prop == 3:
        return _prop3(cfg, ctx)
    if prop == 4:
        return _prop4(cfg, ctx or XContext.load())
    if prop == 5:
        return _prop5(cfg, ctx or XContext.load())
    if prop in (6, 7):
        return _prop67(prop)
    if prop == 10:
        ctx = ctx or XContext.load()
        parts = []
        for tag, Q in (("A+T2", ctx.role("A") + ctx.role("T2")), ("B+T1", ctx.role("B") + ctx.role("T1"))):
            H, _ = ctx.sub(Q)
            parts.append(chi_report("prop10", tag, H, 6, cfg, f"prop10-{tag}"))
        rep = _combine("prop10", "A+T2, B+T1", 6, parts)
        rep.computed = [p.computed for p in parts]
        return rep
    raise ValueError(f"no check for proposition {prop}")


def _prop3(cfg: CheckConfig, ctx: XContext | None) -> CheckReport:
    rnd = random.Random(cfg.seed)
    parts = []
    instances = [(f"random n={n}", random_general_position(n, rnd)) for n in range(3, 17)]
    if ctx is not None:
        instances.append(("X", ctx.P))
    for label, P in instances:
        G = ctx.G if ctx is not None and P is ctx.P else build_disjointness(P)
        order = list(range(len(P)))
        rnd.shuffle(order)
        col = greedy_star_coloring(G, order)
        ok = is_proper(G, col) and col.num_colors == len(P) - 2
        parts.append(CheckReport("prop3", label, len(P) - 2, col.num_colors, PASS if ok else FAIL,
                                 certificates=_witness_certs(G, col, cfg, f"prop3-{label}")))
    return _combine("prop3", f"{len(parts)} point sets", "n-2 colors, proper", parts)


def _prop4(cfg: CheckConfig, ctx: XContext) -> CheckReport:
    P, G = ctx.P, ctx.G
    parts = []
    eligible = [e for e in P.segments() if not is_excluded(P, e)]
    for e in eligible:
        label = P.segment_name(e)
        try:
            col = prop4_coloring(G, e)
        except ColoringError as exc:
            parts.append(CheckReport("prop4", label, 14, "none", FAIL, note=str(exc)))
            continue
        v = G.vertex(e)
        unique = sum(1 for c in col.assignment if c == col.assignment[v]) == 1
        ok = is_proper(G, col) and col.num_colors == 14 and unique
        # dropping v leaves a proper 13-coloring of D(X) - v
        rest = [c for u, c in enumerate(col.assignment) if u != v]
        ok &= len(set(rest)) == 13
        parts.append(CheckReport("prop4", label, 14, col.num_colors, PASS if ok else FAIL,
                                 certificates=_witness_certs(G, col, cfg, f"prop4-{label}")))
    rep = _combine("prop4", f"{len(eligible)} eligible segments", "14 colors, unique", parts)
    listed = sum(1 for e in P.segments() if is_excluded(P, e))
    if listed != len(EXCLUDED_SEGMENTS):
        rep.verdict = FAIL
        rep.note = f"only {listed} of the {len(EXCLUDED_SEGMENTS)} excluded names resolve on X"
    return rep


def _prop5(cfg: CheckConfig, ctx: XContext) -> CheckReport:
    """(i) on subsets of X, (ii) and (iii) on optimal colorings of small random sets."""
    rnd = random.Random(cfg.seed)
    parts = []
    # (i): chi(D(P)) = |P| - 2 passes to every P' of size >= 3
    for trial in range(5):
        Pidx = sorted(rnd.sample(range(len(ctx.P)), 7))
        H, _ = ctx.sub(Pidx)
        if chromatic_number(H, budget=cfg.budget).chi != 5:
            parts.append(CheckReport("prop5i", ctx.names(Pidx), 5, "other", FAIL))
            continue
        for size in (3, 4, 5, 6):
            Q = sorted(rnd.sample(Pidx, size))
            H2, _ = ctx.sub(Q)
            chi = chromatic_number(H2, budget=cfg.budget).chi
            parts.append(CheckReport("prop5i", ctx.names(Q), size - 2, chi,
                                     PASS if chi == size - 2 else FAIL))
    # (ii) and (iii) on random point sets with at most 8 points
    for trial in range(10):
        n = rnd.randint(5, 8)
        P = random_general_position(n, rnd)
        G = build_disjointness(P)
        cert = chromatic_number(G, budget=cfg.budget)
        gamma = cert.witness
        chi = cert.chi
        label = f"random n={n} #{trial}"
        ok = True
        for size in (2, 3):
            for Pp in itertools.combinations(range(n), size):
                if len(gamma.colors_on(Pp)) != size or not is_separable_wrt(gamma, Pp):
                    continue
                rest = [p for p in range(n) if p not in Pp]
                chi_rest = chromatic_number(induced(G, rest)).chi if len(rest) >= 2 else 0
                ok &= chi >= chi_rest + size
        parts.append(CheckReport("prop5ii", label, "holds", "holds" if ok else "violated",
                                 PASS if ok else FAIL))
        chosen: list[int] = []
        for info in classify_classes(gamma):
            free = sorted(info.apices - set(chosen))
            if info.kind == STAR and free:
                chosen.append(free[0])
        rest = [p for p in range(n) if p not in chosen]
        if chosen and len(rest) >= 2:
            chi_rest = chromatic_number(induced(G, rest)).chi
            parts.append(CheckReport("prop5iii", label, chi - len(chosen), chi_rest,
                                     PASS if chi_rest == chi - len(chosen) else FAIL))
    return _combine("prop5", f"{len(parts)} instances", "(i)-(iii)", parts)


def _prop67(prop: int) -> CheckReport:
    t0 = time.perf_counter()
    G = build_disjointness(make_convex(5))
    counter = 0
    total = 0
    k = 4 if prop == 6 else 3
    for col in colorings_of(G, k):
        if col.num_colors != k:
            continue
        total += 1
        if prop == 7:
            if gamma_star(col, range(5)) > 2:
                counter += 1
        else:
            if gamma_star(col, range(5)) == 5 and not _prop6_pair(col):
                counter += 1
    secs = time.perf_counter() - t0
    verdict = PASS if counter == 0 else FAIL
    return CheckReport(f"prop{prop}", "D(C_5)", "0 counterexamples", counter, verdict, total, secs,
                       note=f"{total} colorings with exactly {k} colors")


def _prop6_pair(col: Coloring) -> bool:
    infos = classify_classes(col)
    for info in infos:
        if info.kind == STAR and len(info.members) == 1:
            p, q = info.members[0]
            others = set()
            for other in infos:
                if other is not info:
                    others |= other.apices
            if p not in others and q not in others:
                return True
    return False


# ---------------------------------------------------------------- Theorem 2

def cmd_theorem2(mode: str, cfg: CheckConfig | None = None, ctx: XContext | None = None,
                 count: int | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    ctx = ctx or XContext.load()
    rnd = random.Random(cfg.seed)
    if mode == "upper":
        parts = []
        col = greedy_star_coloring(ctx.G)
        ok = is_proper(ctx.G, col) and col.num_colors == 14
        parts.append(CheckReport("thm2-upper", "greedy on X", 14, col.num_colors, PASS if ok else FAIL,
                                 certificates=_witness_certs(ctx.G, col, cfg, "thm2-upper-X")))
        for trial in range(count or 100):
            P = random_general_position(17, rnd)
            G = build_disjointness(P)
            try:
                col = hexagon_upper_coloring(G)
            except ColoringError as exc:
                parts.append(CheckReport("thm2-upper", f"random17 #{trial}", 14, "none", FAIL,
                                         note=str(exc)))
                continue
            ok = is_proper(G, col) and col.num_colors == 14
            parts.append(CheckReport("thm2-upper", f"random17 #{trial}", 14, col.num_colors,
                                     PASS if ok else FAIL,
                                     certificates=_witness_certs(G, col, cfg, f"thm2-upper-{trial}")))
        return _combine("thm2-upper", f"X + {len(parts) - 1} random 17-sets", "14 colors", parts)
    if mode == "subsets":
        parts = []
        for trial in range(count or 50):
            size = rnd.randint(3, 9)
            Q = sorted(rnd.sample(range(len(ctx.P)), size))
            H, _ = ctx.sub(Q)
            parts.append(chi_report("thm2-sub", ctx.names(Q), H, size - 2, cfg, f"thm2-sub-{trial}"))
        return _combine("thm2-sub", f"{len(parts)} subsets", "|X'|-2", parts)
    if mode == "full":
        certs = []
        if cfg.cert_dir is not None:
            cfg.cert_dir.mkdir(parents=True, exist_ok=True)
            cnf = cfg.cert_dir / "dx-13.cnf"
            export_cnf_kcolor(ctx.G, 13, cnf)
            certs.append(str(cnf))
        rep = refute_report("thm2-full", "D(X) 13 colors", ctx.G, 13, cfg, claimed=">=14")
        rep.certificates = certs
        rep.stretch = True
        if rep.verdict == PASS:
            rep.computed = "chi=14"
        return rep
    raise ValueError(f"unknown mode {mode!r}")
