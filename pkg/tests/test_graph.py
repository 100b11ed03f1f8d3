from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zzcompile import graph as G
from zzcompile.errors import InvalidParameter, MalformedInput


def edge_set(g):
    return {(u + 1, v + 1) for u, v in g.edges()}


def isomorphic(a, b):
    if a.n != b.n or a.m != b.m:
        return False
    return any(a.relabel(p) == b for p in permutations(range(a.n)))


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return G.Graph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


class TestParse:
    def test_path(self):
        g = G.parse_graph("4 3\n1 2\n2 3\n3 4")
        assert g == G.path(4)

    def test_edgeless(self):
        g = G.parse_graph("2 0")
        assert g.n == 2 and g.is_edgeless()

    def test_triangle(self):
        assert G.parse_graph("3 3\n1 2\n2 3\n1 3") == G.complete(3)

    @pytest.mark.parametrize(
        "text",
        ["3 1\n2 2", "3 2\n1 2\n1 2", "3 1\n1 4", "3 1\n1 x", "3 2\n1 2", "", "3\n", "3 1\n2 1"],
    )
    def test_rejects(self, text):
        with pytest.raises(MalformedInput):
            G.parse_graph(text)

    def test_adjacency_roundtrip(self):
        g = G.cycle(5)
        assert G.parse_adjacency(G.format_adjacency(g)) == g
        assert G.read_graph(G.format_adjacency(g)) == g
        assert G.read_graph(G.format_graph(g)) == g

    def test_adjacency_rejects_asymmetric(self):
        with pytest.raises(MalformedInput):
            G.parse_adjacency("0 1\n0 0")

    def test_two_vertex_matrix_sniffed(self):
        assert G.read_graph("0 1\n1 0\n") == G.complete(2)


class TestFamilies:
    def test_cycle4(self):
        assert edge_set(G.generate_family("cycle", 4)) == {(1, 2), (2, 3), (3, 4), (1, 4)}

    def test_matching3(self):
        g = G.generate_family("perfect_matching", 3)
        assert g.n == 6 and edge_set(g) == {(1, 2), (3, 4), (5, 6)}

    def test_er_p0(self):
        assert G.generate_family("erdos_renyi", 5, 0.0, 7).is_edgeless()

    def test_er_p1(self):
        assert G.erdos_renyi(6, 1.0, 3).is_complete()

    def test_er_reproducible(self):
        assert G.erdos_renyi(12, 0.4, 99) == G.erdos_renyi(12, 0.4, 99)

    def test_er_stream_order(self):
        # draws consumed one per pair in lexicographic order
        import random

        rng = random.Random(5)
        draws = [rng.random() for _ in range(10)]
        g = G.erdos_renyi(5, 0.5, 5)
        pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]
        assert {p for p, x in zip(pairs, draws) if x < 0.5} == set(g.edges())

    def test_complete_padded(self):
        g = G.complete(3, 5)
        assert g.m == 3 and g.degree(4) == 0

    def test_biclique_and_cliques(self):
        assert G.biclique(2, 3).m == 6
        assert G.disjoint_cliques([2, 3]).m == 4

    def test_prototype_shape(self):
        g = G.prototype()
        assert g.n == 6 and g.m == 4 and not g.has_edge(0, 1) and g.degree(5) == 0

    @pytest.mark.parametrize(
        "kind,args",
        [("cycle", (2,)), ("path", (0,)), ("erdos_renyi", (4, 1.5, 1)), ("complete", (5, 3)), ("nope", ())],
    )
    def test_bad_params(self, kind, args):
        with pytest.raises(InvalidParameter):
            G.generate_family(kind, *args)


class TestOperations:
    def test_complement_k3(self):
        assert G.complement(G.complete(3)) == G.edgeless(3)

    def test_c5_self_complementary(self):
        assert isomorphic(G.complement(G.cycle(5)), G.cycle(5))

    def test_induced_examples(self):
        assert G.induced(G.cycle(5), [0, 1, 2, 3]) == G.path(4)
        assert G.induced(G.complete(4), [0, 2]) == G.complete(2)

    def test_induced_empty(self):
        with pytest.raises(InvalidParameter):
            G.induced(G.cycle(5), [])

    def test_all_graphs_count(self):
        assert len(list(G.all_graphs(4))) == 64
        assert len(set(G.all_graphs(4))) == 64

    def test_components(self):
        assert sorted(map(sorted, G.disjoint_cliques([2, 1, 3]).components())) == [[0, 1], [2], [3, 4, 5]]

    def test_invalid_construction(self):
        with pytest.raises(InvalidParameter):
            G.Graph.from_matrix([[0, 1], [0, 0]])
        with pytest.raises(InvalidParameter):
            G.Graph.from_edges(3, [(1, 1)])


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_matrix_invariants(g):
    a = g.adj
    assert (a == a.T).all() and not np.diag(a).any() and np.isin(a, (0, 1)).all()
    assert G.Graph.from_matrix(a) == g
    assert G.parse_graph(G.format_graph(g)) == g


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_complement_involution(g):
    c = G.complement(g)
    assert G.complement(c) == g
    assert c.m + g.m == g.n * (g.n - 1) // 2


@settings(max_examples=60, deadline=None)
@given(graphs(), st.data())
def test_induced_edge_count(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    h = G.induced(g, s)
    assert h.n == len(s)
    assert h.m == sum(1 for u, v in g.edges() if u in s and v in s)
    assert G.induced(g, range(g.n)) == g
