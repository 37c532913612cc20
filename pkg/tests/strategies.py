from hypothesis import assume
from hypothesis import strategies as st

from dlab.geometry import PointSet, in_general_position


@st.composite
def point_sets(draw, min_n=3, max_n=10, span=1000):
    """Integer point sets in general position."""
    n = draw(st.integers(min_n, max_n))
    coords = draw(st.lists(st.tuples(st.integers(-span, span), st.integers(-span, span)),
                           min_size=n, max_size=n, unique=True))
    P = PointSet.of(coords)
    assume(in_general_position(P))
    return P


@st.composite
def graphs(draw, max_n=16):
    from dlab.graphs import Graph

    n = draw(st.integers(1, max_n))
    density = draw(st.floats(0.1, 0.9))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, r in zip(pairs, mask) if r < density]
    return Graph.from_edges(n, edges)
