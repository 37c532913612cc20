import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dlab import checks
from dlab.checks import (CheckConfig, bounds_row, closest_triangle, convex_chi, double_chain_chi,
                         double_chain_chi_alt, lemma_instances, right_of_line)

from .oracles import convex_formula_by_search, floor_sqrt_formula, log2_floor_loglog


@given(st.integers(3, 10**6))
def test_convex_formula_matches_scan(n):
    # floor(sqrt(2n + 1/4) - 1/2) evaluated by exact rational scanning
    assert convex_chi(n) == convex_formula_by_search(n)
    assert convex_chi(n) == n - floor_sqrt_formula(8 * n + 1, 4, 1, 2)


def test_convex_values():
    assert [convex_chi(n) for n in range(3, 11)] == [1, 2, 3, 3, 4, 5, 6, 6]


@pytest.mark.parametrize("k, l, chi", [(3, 3, 4), (3, 5, 6), (5, 5, 8), (1, 3, 2), (4, 5, 7)])
def test_double_chain_values(k, l, chi):
    assert double_chain_chi(k, l) == chi


def test_double_chain_variant_disagrees():
    # with 1/2 under the root the (5,5) value would be 7, not 8
    assert double_chain_chi_alt(5, 5) == 7
    assert double_chain_chi_alt(5, 5) == 10 - floor_sqrt_formula(8 * 5 - 1, 4, 0, 1)
    with pytest.raises(ValueError):
        double_chain_chi(4, 3)


@pytest.mark.parametrize("n, lower, upper, dchain", [
    (7, 5, Fraction(5), 5), (14, 10, Fraction(12), 11), (16, 10, Fraction(14), 13),
])
def test_bounds_examples(n, lower, upper, dchain):
    row = bounds_row(n)
    assert row["lower"] == lower and Fraction(row["upper"]) == upper
    assert row["double_chain_lower"] == dchain
    assert row["log_base"] == 2 and not row["alert"]


@given(st.integers(3, 5000))
def test_bounds_consistent(n):
    row = bounds_row(n)
    log_term = Fraction(2 * n + 1 - log2_floor_loglog(n), 2)
    assert Fraction(row["upper"]) == min(Fraction(n - 2), log_term)
    assert row["double_chain_lower"] == n - floor_sqrt_formula(4 * n + 1, 4, 1, 2)


def test_report_json_is_deterministic():
    a = [r.to_json() for r in checks.cmd_convex_table(7)]
    b = [r.to_json() for r in checks.cmd_convex_table(7)]
    assert a == b
    row = json.loads(a[-1])
    assert row["verdict"] == "pass" and "seconds" not in row


def test_budget_gives_unknown_not_fail():
    [rep] = checks.cmd_double_chain_table([(4, 5)], CheckConfig(budget=2))
    assert rep.verdict == "unknown"
    assert rep.computed.startswith("[")


def test_refutation_reports_counterexample():
    from dlab.constructions import make_convex
    from dlab.graphs import build_disjointness

    G = build_disjointness(make_convex(6))
    rep = checks.refute_report("demo", "C_6", G, 3, CheckConfig())
    assert rep.verdict == "fail" and "counterexample" in rep.note


class TestInstanceFamilies:
    @pytest.mark.parametrize("lemma, size", [
        (11, 2), (13, 2000), (14, 25), (16, 25), (17, 150), (20, 120), (21, 100), (23, 100),
        (24, 200),
    ])
    def test_sizes(self, x_ctx, lemma, size):
        assert len(lemma_instances(x_ctx, lemma)) == size

    def test_lemma18_side_condition(self, x_ctx):
        P = x_ctx.P
        insts = lemma_instances(x_ctx, 18)
        assert len(insts) % 3 == 0 and insts
        for inst in insts:
            a, b = inst.points[3], inst.points[4]
            assert all(right_of_line(P, a, b, t) for t in P.role("T1"))

    def test_closest_metrics_agree(self, x_ctx):
        P = x_ctx.P
        for a in P.role("A"):
            for b in P.role("B"):
                which = closest_triangle(P, a, b)
                assert which["vertex"] == which["centroid"] != "tie"

    def test_sample_is_seeded(self, x_ctx):
        one = checks._lemma_instance_list(x_ctx, 13, CheckConfig(sample=5, seed=3))
        two = checks._lemma_instance_list(x_ctx, 13, CheckConfig(sample=5, seed=3))
        assert [i.label for i in one] == [i.label for i in two]


def test_right_of_line():
    from dlab.geometry import PointSet

    P = PointSet.of([(0, 0), (2, 10), (5, 5), (-5, 5)])
    assert right_of_line(P, 0, 1, 2)
    assert not right_of_line(P, 0, 1, 3)


def test_certificates_written(tmp_path, x_ctx):
    from dlab.exact import read_certificate, verify_certificate

    rep = checks.cmd_prop(10, CheckConfig(cert_dir=tmp_path), x_ctx)
    assert rep.verdict == "pass" and len(rep.certificates) == 2
    for part, path in zip(rep.parts, rep.certificates):
        Q = x_ctx.role("A") + x_ctx.role("T2") if "A+T2" in path else x_ctx.role("B") + x_ctx.role("T1")
        H, _ = x_ctx.sub(Q)
        assert verify_certificate(H, read_certificate(H, path))
