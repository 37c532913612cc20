import pytest
from hypothesis import given, settings

from dlab.constructions import make_convex, make_double_chain
from dlab.exact import (ChromaticCertificate, ColorConstraints, Evidence, Verdict,
                        chromatic_number, cnf_kcolor, dsatur, export_cnf_kcolor, k_colorable,
                        max_disjoint_family, read_certificate, verify_certificate,
                        write_certificate)
from dlab.graphs import Graph, build_disjointness, build_kneser

from .oracles import chromatic_by_assignment, chromatic_number_ie
from .strategies import graphs


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


@pytest.mark.parametrize("G, chi", [
    (cycle(5), 3), (cycle(6), 2), (complete(5), 5), (Graph.from_edges(3, []), 1),
    (build_kneser(5, 2), 3), (build_kneser(7, 2), 5), (build_kneser(7, 3), 3),
])
def test_known_chromatic_numbers(G, chi):
    cert = chromatic_number(G)
    assert cert.exact and cert.chi == chi
    assert verify_certificate(G, cert)


@pytest.mark.parametrize("method", ["bnb", "sat"])
def test_kneser_family(method):
    # chi(KG(n,2)) = n - 2
    for n in range(5, 10):
        G = build_kneser(n, 2)
        assert k_colorable(G, n - 3, method=method).verdict is Verdict.NO
        assert k_colorable(G, n - 2, method=method).verdict is Verdict.YES


def test_max_disjoint_family_is_clique():
    G = build_disjointness(make_convex(8))
    fam = max_disjoint_family(G)
    assert all(G.has_edge(u, v) for i, u in enumerate(fam) for v in fam[i + 1:])
    assert len(fam) == 4


def test_dsatur_is_proper():
    G = build_disjointness(make_double_chain(3, 4))
    col = dsatur(G)
    assert all(col.assignment[u] != col.assignment[v] for u, v in G.edges())


def test_budget_gives_unknown():
    G = build_kneser(9, 2)
    res = k_colorable(G, 6, budget=3)
    assert res.verdict is Verdict.UNKNOWN
    cert = chromatic_number(G, budget=3)
    assert not cert.exact
    assert cert.lower_evidence.kind == "none"
    assert verify_certificate(G, cert)


class TestConstraints:
    G = cycle(6)

    def test_fixed_and_unique(self):
        cons = ColorConstraints(fixed=[(0, 1)], unique={3})
        res = k_colorable(self.G, 3, cons)
        assert res.verdict is Verdict.YES
        assert res.coloring.assignment[0] == 1
        assert cons.satisfied_by(res.coloring.assignment)

    def test_unique_needs_extra_color(self):
        # an even cycle is 2-colorable, but not with a color used only once
        assert k_colorable(self.G, 2).verdict is Verdict.YES
        assert k_colorable(self.G, 2, ColorConstraints(unique={0})).verdict is Verdict.NO

    def test_inconsistent_pins(self):
        res = k_colorable(self.G, 3, ColorConstraints(fixed=[(0, 2), (1, 2)]))
        assert res.verdict is Verdict.NO and res.nodes == 0
        assert res.note.startswith("inconsistent")

    def test_forbidden(self):
        cons = ColorConstraints(forbidden=[(v, 0) for v in range(6)])
        res = k_colorable(self.G, 3, cons)
        assert res.verdict is Verdict.YES and 0 not in res.coloring.assignment
        assert k_colorable(self.G, 2, cons).verdict is Verdict.NO

    @pytest.mark.parametrize("cons", [
        ColorConstraints(unique={0, 5}),
        ColorConstraints(unique={0, 14}),
        ColorConstraints(fixed=[(0, 0), (14, 0)], unique={7}),
        ColorConstraints(fixed=[(3, 2)], forbidden=[(4, 0), (4, 1)]),
    ])
    def test_routes_agree_under_constraints(self, cons):
        G = build_disjointness(make_convex(6))
        for k in range(2, 6):
            bnb = k_colorable(G, k, cons)
            sat = k_colorable(G, k, cons, method="sat")
            assert bnb.verdict is sat.verdict, k
            if bnb.verdict is Verdict.YES:
                assert cons.satisfied_by(bnb.coloring.assignment)
                assert cons.satisfied_by(sat.coloring.assignment)

    def test_constraints_against_enumeration(self):
        import itertools

        G = cycle(7)
        cons = ColorConstraints(fixed=[(2, 1)], unique={5})
        for k in (2, 3, 4):
            brute = any(all(a[u] != a[v] for u, v in G.edges()) and cons.satisfied_by(a)
                        for a in itertools.product(range(k), repeat=7))
            assert (k_colorable(G, k, cons).verdict is Verdict.YES) == brute


def test_cnf_export(tmp_path):
    G = build_disjointness(make_convex(5))
    path = export_cnf_kcolor(G, 2, tmp_path / "c5.cnf")
    lines = path.read_text().splitlines()
    assert lines[0] == f"p cnf {G.n * 2} {len(cnf_kcolor(G, 2))}"
    assert all(ln.endswith(" 0") for ln in lines[1:])


def test_sat_route_archives_log(tmp_path):
    G = build_kneser(6, 2)
    res = k_colorable(G, 3, method="sat", cnf_out=tmp_path / "k.cnf")
    assert res.verdict is Verdict.NO
    assert (tmp_path / "k.cnf").exists()
    assert "UNSAT" in (tmp_path / "k.cnf.log").read_text()


def test_certificate_round_trip(tmp_path):
    G = build_disjointness(make_double_chain(3, 3))
    cert = chromatic_number(G)
    back = read_certificate(G, write_certificate(cert, tmp_path / "c.cert"))
    assert back.chi == cert.chi == 4
    assert back.lower == 4 and back.lower_evidence.kind == "exhausted"
    assert verify_certificate(G, back)


def test_certificate_rejects_bad_witness():
    G = cycle(5)
    cert = chromatic_number(G)
    bad = ChromaticCertificate(2, cert.witness, Evidence("exhausted"), 2)
    assert not verify_certificate(G, bad)


def test_oracle_self_check():
    for G in (cycle(5), cycle(8), complete(4), build_kneser(5, 2)):
        assert chromatic_number_ie(G.adj) == chromatic_by_assignment(G.adj)


@settings(max_examples=100)
@given(graphs(max_n=16))
def test_matches_brute_force_oracle(G):
    cert = chromatic_number(G)
    assert cert.exact
    assert cert.chi == chromatic_number_ie(G.adj)
    assert verify_certificate(G, cert)


@settings(max_examples=40)
@given(graphs(max_n=12))
def test_sat_and_bnb_agree(G):
    chi = chromatic_number(G).chi
    if chi > 1:
        assert k_colorable(G, chi - 1, method="sat").verdict is Verdict.NO
    assert k_colorable(G, chi, method="sat").verdict is Verdict.YES
