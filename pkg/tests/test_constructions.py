import pytest
from hypothesis import given
from hypothesis import strategies as st

from dlab.constructions import (DATA_ENV, is_double_chain, load_canonical_x, make_convex,
                                make_double_chain, read_pointset, require_x_labels,
                                verify_x_properties, write_pointset)
from dlab.geometry import (GeometryError, PointSet, convex_k_subset_exists, hull_indices,
                           in_convex_position, in_general_position, same_order_type)
from dlab.graphs import build_disjointness
from dlab.xsearch import SearchFailure, non_pentagon_sides, search_x
from dlab.coloring import EXCLUDED_SEGMENTS


@pytest.mark.parametrize("n", range(3, 13))
def test_convex_family(n):
    P = make_convex(n)
    assert len(hull_indices(P)) == n
    assert in_general_position(P)


@given(st.integers(1, 6), st.integers(1, 6))
def test_double_chain_family(k, l):
    P = make_double_chain(k, l)
    assert in_general_position(P)
    assert is_double_chain(P, k, l)
    # dropping either chain leaves a convex chain
    assert in_convex_position(P, list(range(k, k + l)))
    assert in_convex_position(P, list(range(k)))
    xs = [p.x for p in P]
    ys = [p.y for p in P]
    assert len(set(xs)) == len(xs) and len(set(ys)) == len(ys)


def test_double_chain_negatives():
    # a convex hexagon cut into two halves is not a double chain
    hexagon = PointSet.of([(0, 0), (4, -3), (8, 0), (8, 5), (4, 8), (0, 5)])
    assert not is_double_chain(hexagon.subset([0, 1, 2, 3, 4, 5]), 3, 3)
    P = make_double_chain(3, 3)
    swapped = P.subset([3, 1, 2, 0, 4, 5])
    assert not is_double_chain(swapped, 3, 3)
    with pytest.raises(GeometryError):
        is_double_chain(P, 2, 3)


def test_double_chain_order_type_is_stable():
    base = make_double_chain(3, 4)
    other = PointSet.of([(p.x * 3 + 1, p.y * 2) for p in base])
    assert same_order_type(base, other) is not None


def test_point_file_round_trip(tmp_path):
    P = PointSet.of([(0, 0), (5, 1), (2, 7)], ["A", "B", "T1"])
    back = read_pointset(write_pointset(P, tmp_path / "p.pts", "three points\nsecond line"))
    assert back == P


@pytest.mark.parametrize("text, message", [
    ("", "empty"),
    ("x\n1 2\n", "point count"),
    ("2\n1 2\n", "header says 2"),
    ("2\n1 2\n3\n", "expected 'x y'"),
    ("2\n1 2\n3 z\n", "non-integer"),
    ("2\n1 2\n1 2\n", "duplicate"),
])
def test_point_file_errors(tmp_path, text, message):
    path = tmp_path / "bad.pts"
    path.write_text(text)
    with pytest.raises(GeometryError, match=message):
        read_pointset(path)


class TestCanonicalX:
    def test_all_bullets_pass(self, x_ctx):
        report = verify_x_properties(x_ctx.P)
        assert report.all_pass, report.failed
        assert len(report.checks) == 15

    def test_paper_bullets(self, x_ctx):
        P = x_ctx.P
        assert convex_k_subset_exists(P, 6) == (False, None)
        T = P.role("T1") + P.role("T2")
        assert same_order_type(P.subset(T), make_double_chain(3, 3)) is not None

    def test_non_pentagon_sides(self, x_ctx):
        assert non_pentagon_sides(x_ctx.P) == EXCLUDED_SEGMENTS

    @pytest.mark.parametrize("index", [0, 4, 7, 10, 14])
    def test_mutation_breaks_a_bullet(self, x_ctx, index):
        coords = [(p.x, p.y) for p in x_ctx.P]
        x, y = coords[index]
        coords[index] = (x + 3_000_001, y - 25_000_003)
        mutated = PointSet.of(coords, x_ctx.P.labels)
        assert not verify_x_properties(mutated).all_pass

    def test_fast_fail_stops_early(self, x_ctx):
        coords = [(p.x, p.y) for p in x_ctx.P]
        coords[0] = (0, 0)
        report = verify_x_properties(PointSet.of(coords, x_ctx.P.labels), fast_fail=True)
        assert not report.all_pass
        assert report.checks[-1].passed is False

    def test_labels_required(self, x_ctx):
        with pytest.raises(GeometryError):
            require_x_labels(PointSet.of([(p.x, p.y) for p in x_ctx.P]))

    def test_env_override(self, tmp_path, monkeypatch, x_ctx):
        path = write_pointset(x_ctx.P, tmp_path / "x.pts")
        monkeypatch.setenv(DATA_ENV, str(path))
        assert load_canonical_x() == x_ctx.P
        monkeypatch.setenv(DATA_ENV, str(tmp_path / "missing.pts"))
        with pytest.raises(FileNotFoundError):
            load_canonical_x()


def test_search_reproduces_canonical_x(x_ctx):
    cand = search_x(12, 200_000)
    assert cand.points == x_ctx.P
    assert cand.report.all_pass
    assert cand.trace == ["0 12 accept -"]


def test_search_budget_exhaustion():
    with pytest.raises(SearchFailure) as info:
        search_x(3, 5)
    assert info.value.trace and info.value.trace[-1].split()[2] == "reject"
