"""Exact chromatic numbers with certificates.

The workhorse is :func:`k_colorable`, a DSATUR-ordered branch and bound with
forward checking. Symmetry between interchangeable colors is broken by only
ever opening the lowest unused free color, and the search starts by coloring
a maximum clique (a largest family of pairwise disjoint segments), which with
that rule amounts to pre-coloring the clique with distinct colors.

Lemma hypotheses are passed in as :class:`ColorConstraints`. Only colors that
no constraint mentions are treated as interchangeable.

A "no" answer is reported only after the whole tree was exhausted. Running
out of budget gives ``UNKNOWN``.
"""

from __future__ import annotations

import enum
import itertools
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .coloring import Coloring, is_proper, read_coloring, write_coloring
from .graphs import Graph, bits

DEFAULT_BUDGET = 50_000_000


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ColorConstraints:
    """Hypotheses on a coloring.

    ``fixed`` pins vertices to colors, ``unique`` lists vertices whose color
    appears on no other vertex, ``forbidden`` excludes (vertex, color) pairs.
    """

    fixed: tuple[tuple[int, int], ...] = ()
    unique: frozenset[int] = frozenset()
    forbidden: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "fixed", tuple((int(v), int(c)) for v, c in self.fixed))
        object.__setattr__(self, "unique", frozenset(int(v) for v in self.unique))
        object.__setattr__(self, "forbidden", tuple((int(v), int(c)) for v, c in self.forbidden))

    def __bool__(self):
        return bool(self.fixed or self.unique or self.forbidden)

    def satisfied_by(self, assignment) -> bool:
        a = assignment
        if any(a[v] != c for v, c in self.fixed):
            return False
        if any(a[v] == c for v, c in self.forbidden):
            return False
        for u in self.unique:
            if sum(1 for c in a if c == a[u]) != 1:
                return False
        return True

    def describe(self) -> str:
        parts = []
        if self.fixed:
            parts.append("fixed=" + ",".join(f"{v}:{c}" for v, c in self.fixed))
        if self.unique:
            parts.append("unique=" + ",".join(map(str, sorted(self.unique))))
        if self.forbidden:
            parts.append("forbidden=" + ",".join(f"{v}:{c}" for v, c in self.forbidden))
        return ";".join(parts) or "none"


@dataclass
class Colorability:
    verdict: Verdict
    k: int
    coloring: Coloring | None = None
    nodes: int = 0
    seconds: float = 0.0
    method: str = "bnb"
    note: str = ""


@dataclass(frozen=True)
class Evidence:
    """Lower-bound evidence: ``exhausted`` (internal search), ``external`` (SAT refutation) or ``none``."""

    kind: str
    nodes: int = 0
    ref: str = ""

    def line(self) -> str:
        if self.kind == "exhausted":
            return f"evidence exhausted nodes={self.nodes}"
        if self.kind == "external":
            return f"evidence external ref={self.ref}"
        return "evidence none"

    @classmethod
    def parse(cls, line: str) -> Evidence:
        parts = line.split()
        if len(parts) < 2 or parts[0] != "evidence":
            raise ValueError(f"bad evidence line {line!r}")
        fields = dict(p.split("=", 1) for p in parts[2:])
        return cls(parts[1], int(fields.get("nodes", 0)), fields.get("ref", ""))


@dataclass
class ChromaticCertificate:
    chi: int
    witness: Coloring
    lower_evidence: Evidence
    lower: int
    nodes: int = 0
    seconds: float = 0.0
    constraints: ColorConstraints = field(default_factory=ColorConstraints)

    @property
    def exact(self) -> bool:
        return self.lower == self.chi and self.lower_evidence.kind != "none"

    @property
    def bracket(self) -> tuple[int, int]:
        return self.lower, self.chi


# ---------------------------------------------------------------- bounds

def max_disjoint_family(G: Graph) -> list[int]:
    """Maximum clique of G (for D(P): a largest set of pairwise disjoint segments)."""
    adj = G.adj
    best: list[int] = []
    order = sorted(range(G.n), key=lambda v: -G.degree(v))

    def color_bound(cand: int):
        # greedy coloring of the candidate set; returns vertices with their bound
        out = []
        color = 0
        uncolored = cand
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~adj[v] & ~low
                uncolored &= ~low
                out.append((v, color))
        return out

    def expand(clique: list[int], cand: int):
        nonlocal best
        for v, bound in reversed(color_bound(cand)):
            if len(clique) + bound <= len(best):
                return
            clique.append(v)
            nxt = cand & adj[v]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > len(best):
                best = list(clique)
            clique.pop()
            cand &= ~(1 << v)

    all_mask = 0
    for v in order:
        all_mask |= 1 << v
    if G.n:
        best = [order[0]]
        expand([], all_mask)
    return sorted(best)


def dsatur(G: Graph) -> Coloring:
    """Greedy DSATUR; ties broken by uncolored degree, then lowest index."""
    n = G.n
    color = [-1] * n
    seen = [0] * n  # bitmask of neighbour colors
    uncolored = (1 << n) - 1
    for _ in range(n):
        best, key = -1, None
        for v in bits(uncolored):
            k = (seen[v].bit_count(), (G.adj[v] & uncolored).bit_count(), -v)
            if key is None or k > key:
                best, key = v, k
        forbidden = seen[best]
        c = 0
        while forbidden >> c & 1:
            c += 1
        color[best] = c
        uncolored &= ~(1 << best)
        for u in bits(G.adj[best]):
            seen[u] |= 1 << c
    return Coloring(G, tuple(color))


# ---------------------------------------------------------------- search

class _OutOfBudget(Exception):
    pass


def _plan_colors(G: Graph, k: int, cons: ColorConstraints):
    """Map constraints onto internal color ids.

    Colors a constraint mentions become "named" internal ids 0..m-1; the rest
    are free ids m..k-1. Returns (initial pins, initial domain masks,
    m, internal->user color map) or a string describing an inconsistency.
    """
    pins: dict[int, int] = {}
    for v, c in cons.fixed:
        if not 0 <= c < k:
            return f"pinned color {c} outside 0..{k - 1}"
        if pins.get(v, c) != c:
            return f"vertex {v} pinned to two colors"
        pins[v] = c
    mentioned = set(pins.values()) | {c for _, c in cons.forbidden if 0 <= c < k}
    reserved_pool = [c for c in range(k) if c not in mentioned]
    reserved: dict[int, int] = {}
    for u in sorted(cons.unique):
        if u in pins:
            reserved[u] = pins[u]
        else:
            if not reserved_pool:
                return "not enough colors for the unique-color vertices"
            reserved[u] = reserved_pool.pop(0)
    for u, c in reserved.items():
        pins[u] = c
    named = sorted(mentioned | set(reserved.values()))
    free = [c for c in range(k) if c not in named]
    to_user = named + free
    to_internal = {c: i for i, c in enumerate(to_user)}
    full = (1 << k) - 1
    dom = [full] * G.n
    for v, c in cons.forbidden:
        if 0 <= c < k:
            dom[v] &= ~(1 << to_internal[c])
    for u, c in reserved.items():
        bit = 1 << to_internal[c]
        for v in range(G.n):
            if v != u:
                if pins.get(v) == c:
                    return f"color {c} is unique to {u} but also pinned on {v}"
                dom[v] &= ~bit
    internal_pins = {v: to_internal[c] for v, c in pins.items()}
    for v, c in internal_pins.items():
        if not dom[v] >> c & 1:
            return f"vertex {v} pinned to a forbidden color"
    for u, v in G.edges():
        if u in internal_pins and internal_pins.get(v) == internal_pins[u]:
            return f"adjacent vertices {u}, {v} pinned to the same color"
    return internal_pins, dom, len(named), to_user


def k_colorable(G: Graph, k: int, constraints: ColorConstraints | None = None,
                budget: int = DEFAULT_BUDGET, method: str = "bnb",
                cnf_out=None) -> Colorability:
    """Decide whether G has a proper k-coloring satisfying ``constraints``.

    ``method`` is ``"bnb"`` (internal search, node budget) or ``"sat"``
    (CNF handed to an external CDCL solver through pysat).
    """
    if k < 1:
        raise ValueError("k must be positive")
    cons = constraints or ColorConstraints()
    if method == "sat":
        return _k_colorable_sat(G, k, cons, cnf_out)
    if method != "bnb":
        raise ValueError(f"unknown method {method!r}")
    t0 = time.perf_counter()
    plan = _plan_colors(G, k, cons)
    if isinstance(plan, str):
        return Colorability(Verdict.NO, k, nodes=0, note=f"inconsistent constraints: {plan}")
    pins, dom, m, to_user = plan
    n = G.n
    if k >= n and not cons:
        col = Coloring(G, tuple(range(n)))
        return Colorability(Verdict.YES, k, col, seconds=time.perf_counter() - t0)

    adj = G.adj
    color = [-1] * n
    trail: list[tuple[int, int]] = []
    state = {"nodes": 0, "used": 0}
    uncolored = (1 << n) - 1

    def assign(v: int, c: int) -> bool:
        nonlocal uncolored
        color[v] = c
        uncolored &= ~(1 << v)
        bit = 1 << c
        nb = adj[v] & uncolored
        while nb:
            low = nb & -nb
            u = low.bit_length() - 1
            nb ^= low
            d = dom[u]
            if d & bit:
                d ^= bit
                dom[u] = d
                trail.append((u, bit))
                if not d:
                    return False
        return True

    def undo(v: int, mark: int):
        nonlocal uncolored
        while len(trail) > mark:
            u, bit = trail.pop()
            dom[u] |= bit
        color[v] = -1
        uncolored |= 1 << v

    for v, c in pins.items():
        if not assign(v, c):
            return Colorability(Verdict.NO, k, nodes=0, seconds=time.perf_counter() - t0,
                                note="pins wipe out a domain")
    # pins only use named colors, so no free color is in use yet
    prefix = [v for v in max_disjoint_family(G) if v not in pins]
    deg = [G.degree(v) for v in range(n)]

    def choose(avail: int):
        best, bs, bd = -1, k + 2, -1
        for v in prefix:
            if color[v] < 0:
                return v, (dom[v] & avail).bit_count()
        u = uncolored
        while u:
            low = u & -u
            v = low.bit_length() - 1
            u ^= low
            s = (dom[v] & avail).bit_count()
            if s < bs or (s == bs and deg[v] > bd):
                best, bs, bd = v, s, deg[v]
                if s == 0:
                    break
        return best, bs

    def search() -> bool:
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise _OutOfBudget
        if not uncolored:
            return True
        used = state["used"]
        top = min(k, m + used + 1)
        avail = (1 << top) - 1
        v, size = choose(avail)
        if size == 0:
            return False
        d = dom[v] & avail
        while d:
            low = d & -d
            c = low.bit_length() - 1
            d ^= low
            fresh = c == m + used
            mark = len(trail)
            if fresh:
                state["used"] = used + 1
            if assign(v, c) and search():
                return True
            undo(v, mark)
            if fresh:
                state["used"] = used
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        found = search()
    except _OutOfBudget:
        return Colorability(Verdict.UNKNOWN, k, nodes=state["nodes"] - 1,
                            seconds=time.perf_counter() - t0, note="node budget exhausted")
    finally:
        sys.setrecursionlimit(limit)
    secs = time.perf_counter() - t0
    if not found:
        return Colorability(Verdict.NO, k, nodes=state["nodes"], seconds=secs)
    col = Coloring(G, tuple(to_user[c] for c in color))
    if not is_proper(G, col) or not cons.satisfied_by(col.assignment):
        raise AssertionError("search produced an invalid coloring")
    return Colorability(Verdict.YES, k, col, nodes=state["nodes"], seconds=secs)


# ---------------------------------------------------------------- CNF route

def cnf_kcolor(G: Graph, k: int, constraints: ColorConstraints | None = None,
               symmetry: bool = True, at_most_one: bool = False) -> list[list[int]]:
    """Clauses over x_{v,c} = v*k + c + 1."""
    cons = constraints or ColorConstraints()
    x = lambda v, c: v * k + c + 1  # noqa: E731
    clauses = [[x(v, c) for c in range(k)] for v in range(G.n)]
    if at_most_one:
        for v in range(G.n):
            clauses += [[-x(v, a), -x(v, b)] for a, b in itertools.combinations(range(k), 2)]
    for u, v in G.edges():
        clauses += [[-x(u, c), -x(v, c)] for c in range(k)]
    if cons:
        plan = _plan_colors(G, k, cons)
        if isinstance(plan, str):
            return clauses + [[1], [-1]]
        pins, dom, m, to_user = plan
        full = (1 << k) - 1
        for v, c in pins.items():
            clauses.append([x(v, to_user[c])])
        for v in range(G.n):
            for c in bits(full & ~dom[v]):
                clauses.append([-x(v, to_user[c])])
    elif symmetry:
        for c, v in enumerate(max_disjoint_family(G)[:k]):
            clauses.append([x(v, c)])
    return clauses


def export_cnf_kcolor(G: Graph, k: int, path, constraints: ColorConstraints | None = None,
                      symmetry: bool = True, at_most_one: bool = False) -> Path:
    clauses = cnf_kcolor(G, k, constraints, symmetry, at_most_one)
    lines = [f"p cnf {G.n * k} {len(clauses)}"]
    lines += [" ".join(map(str, cl)) + " 0" for cl in clauses]
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    return path


def _k_colorable_sat(G: Graph, k: int, cons: ColorConstraints, cnf_out) -> Colorability:
    from pysat.solvers import Solver

    t0 = time.perf_counter()
    # with pins, a vertex holding several true colors could decode to the wrong one
    amo = bool(cons)
    clauses = cnf_kcolor(G, k, cons, at_most_one=amo)
    ref = ""
    if cnf_out is not None:
        ref = str(export_cnf_kcolor(G, k, cnf_out, cons, at_most_one=amo))
    with Solver(name="cadical153", bootstrap_with=clauses) as solver:
        sat = solver.solve()
        model = solver.get_model() if sat else None
        stats = solver.accum_stats()
    secs = time.perf_counter() - t0
    nodes = int(stats.get("decisions", 0)) if stats else 0
    if cnf_out is not None:
        log = Path(str(cnf_out) + ".log")
        log.write_text(f"solver cadical153\nresult {'SAT' if sat else 'UNSAT'}\n"
                       f"seconds {secs:.3f}\nstats {stats}\n")
        ref = f"{ref};{log}"
    if not sat:
        return Colorability(Verdict.NO, k, nodes=nodes, seconds=secs,
                            method="sat:cadical153", note=ref)
    pos = {lit for lit in model if lit > 0}
    assignment = []
    for v in range(G.n):
        assignment.append(next(c for c in range(k) if v * k + c + 1 in pos))
    col = Coloring(G, tuple(assignment))
    if not is_proper(G, col) or not cons.satisfied_by(col.assignment):
        raise AssertionError("SAT model is not a valid coloring")
    return Colorability(Verdict.YES, k, col, nodes=nodes, seconds=secs,
                        method="sat:cadical153", note=ref)


# ---------------------------------------------------------------- chi

def chromatic_number(G: Graph, budget: int = DEFAULT_BUDGET, method: str = "bnb",
                     cnf_dir=None) -> ChromaticCertificate:
    """Least k with a k-coloring, searched downward from the DSATUR bound.

    If a refutation runs out of budget the certificate is a bracket
    ``[lower, chi]`` with evidence kind ``none``.
    """
    t0 = time.perf_counter()
    clique = max_disjoint_family(G)
    lower = len(clique) if G.n else 0
    witness = dsatur(G)
    if G.n == 0:
        return ChromaticCertificate(0, witness, Evidence("exhausted"), 0)
    ub = witness.num_colors
    nodes = 0
    evidence = Evidence("none")
    k = ub - 1
    while k >= 1:
        cnf_out = None if cnf_dir is None else Path(cnf_dir) / f"k{k}.cnf"
        res = k_colorable(G, k, budget=budget, method=method, cnf_out=cnf_out)
        nodes += res.nodes
        if res.verdict is Verdict.YES:
            witness = res.coloring.compacted()
            k = witness.num_colors - 1
            continue
        if res.verdict is Verdict.NO:
            lower = k + 1
            if res.method == "bnb":
                evidence = Evidence("exhausted", res.nodes)
            else:
                evidence = Evidence("external", res.nodes, res.note or res.method)
        break
    else:
        lower = 1
        evidence = Evidence("exhausted", 0)
    return ChromaticCertificate(witness.num_colors, witness, evidence, lower, nodes,
                                time.perf_counter() - t0)


def verify_certificate(G: Graph, cert: ChromaticCertificate) -> bool:
    w = cert.witness
    if w.graph.n != G.n or not is_proper(G, w.assignment):
        return False
    if w.num_colors != cert.chi:
        return False
    if cert.constraints and not cert.constraints.satisfied_by(w.assignment):
        return False
    if cert.lower > cert.chi:
        return False
    if cert.exact and len(max_disjoint_family(G)) > cert.chi:
        return False
    return True


def write_certificate(cert: ChromaticCertificate, path) -> Path:
    return write_coloring(cert.witness, path, trailer=cert.lower_evidence.line()
                          + f" lower={cert.lower}")


def read_certificate(G: Graph, path) -> ChromaticCertificate:
    col, rest = read_coloring(G, path)
    ev = Evidence("none")
    lower = 0
    for line in rest:
        if line.startswith("evidence"):
            parts = line.split()
            lower = int(next((p.split("=")[1] for p in parts if p.startswith("lower=")), 0))
            ev = Evidence.parse(" ".join(p for p in parts if not p.startswith("lower=")))
    return ChromaticCertificate(col.num_colors, col, ev, lower)
