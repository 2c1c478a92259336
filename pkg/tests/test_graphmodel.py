"""The graph model must reproduce the pair-space matrix entrywise."""

import random

from conftest import (
    chebyshev_marking_pair,
    cubic_example,
    cubic_marking_pair,
    portrait,
    random_portrait,
)
from coreentropy.graphmodel import build_graph_model, dump_model, incidence_matrix
from coreentropy.pairspace import build_matrix
from coreentropy.portrait import post_set, separation_set


def both_matrices(P):
    G, L = build_graph_model(P)
    return incidence_matrix(G, L), build_matrix(P).to_sparse()


class TestStructure:
    def test_cubic_example_graph(self, cubic):
        G, L = build_graph_model(cubic)
        assert len(G.vertices) == 5
        assert len(G.edges) == 10
        for edge in G.edges:
            sep = separation_set(edge[0], edge[1], cubic)
            pieces = L.arcs[edge]
            assert len(pieces) == len(sep) + 1
            assert [a.position for a in pieces] == list(range(len(pieces)))
            assert all(a.parent_edge == edge for a in pieces)

    def test_singleton(self):
        P = portrait(2, "0 1/2")
        G, L = build_graph_model(P)
        v = post_set(P)[0]
        assert G.vertices == (v,)
        assert G.edges == ((v, v),)
        M = incidence_matrix(G, L)
        assert M.dim == 1 and M.triplets == ((0, 0, 1),)

    def test_dump(self, cubic):
        lines = dump_model(*build_graph_model(cubic))
        assert len(lines) == 10
        assert lines[0].startswith("0/1-1/5:")


class TestAgreement:
    def test_cubic_example(self, cubic):
        inc, tm = both_matrices(cubic)
        assert inc == tm

    def test_named_examples(self):
        for P in (
            portrait(2, "3/14 5/7"),
            portrait(2, "1/4 3/4"),
            portrait(2, "1/6 2/3"),
            *cubic_marking_pair(),
            *chebyshev_marking_pair(),
        ):
            inc, tm = both_matrices(P)
            assert inc == tm

    def test_random_portraits(self):
        rng = random.Random(29)
        for _ in range(30):
            P = random_portrait(rng, rng.choice((2, 3, 4)))
            inc, tm = both_matrices(P)
            assert inc == tm
