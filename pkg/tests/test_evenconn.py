from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from edgereg.errors import DomainError
from edgereg.evenconn import (
    EdgeMultiset,
    all_even_connections,
    check_certificate,
    classify_neighbors,
    colon_graph,
    colon_graph_edge_ideal,
    connected_pairs,
    edge_multisets,
    find_even_connection,
)
from edgereg.graph import Graph, add_whiskers, complete, cycle, disjoint_union, enumerate_graphs, path, to_graph6
from edgereg.monomial import colon, edge_ideal, edge_product, polarize, power


def gen_names(ideal) -> set[frozenset]:
    return {frozenset(ideal.vars[i] for i, e in enumerate(g) if e) for g in ideal.gens}


def oracle_matches(g: Graph, e: EdgeMultiset) -> bool:
    algebra, _ = polarize(colon(power(edge_ideal(g), len(e) + 1), edge_product(g.n, e.edges)))
    return gen_names(colon_graph_edge_ideal(g, e)) == gen_names(algebra)


class TestEdgeMultiset:
    def test_rejects_non_edges(self):
        with pytest.raises(DomainError):
            EdgeMultiset.of(cycle(5), [(0, 2)])
        with pytest.raises(DomainError):
            EdgeMultiset.of(cycle(5), [(0, 9)])

    def test_multiplicities(self):
        e = EdgeMultiset.of(cycle(5), [(1, 0), (0, 1), (2, 3)])
        assert e.distinct == ((0, 1), (2, 3))
        assert e.multiplicities == (2, 1)
        assert len(e.without(0)) == 2

    def test_enumeration_count(self):
        # multisets of size 2 from 5 edges
        assert len(list(edge_multisets(cycle(5), 2))) == 15


class TestFindEvenConnection:
    def test_pentagon(self):
        c5 = cycle(5)
        e = EdgeMultiset.of(c5, [(1, 2)])
        cert = find_even_connection(c5, e, 0, 3)
        assert cert.path == (0, 1, 2, 3) and cert.k == 1
        assert check_certificate(c5, e, cert, 0, 3)
        assert cert.to_json() == {"path": [0, 1, 2, 3], "assignment": [0], "k": 1}

    def test_edges_are_trivial(self):
        g = cycle(5)
        e = EdgeMultiset.of(g, [(1, 2), (3, 4)])
        for u, v in g.edges():
            cert = find_even_connection(g, e, u, v)
            assert cert.k == 0 and cert.path == (u, v)

    def test_different_components(self):
        g = disjoint_union(path(2), path(2))
        e = EdgeMultiset.of(g, [(0, 1)])
        assert find_even_connection(g, e, 0, 2) is None

    def test_triangle_self_connection(self):
        k3 = complete(3)
        e = EdgeMultiset.of(k3, [(0, 1)])
        cert = find_even_connection(k3, e, 2, 2)
        assert cert.k == 1 and cert.path[0] == cert.path[-1] == 2
        assert set(cert.path[1:3]) == {0, 1}

    def test_bad_vertex(self):
        with pytest.raises(DomainError):
            find_even_connection(cycle(5), EdgeMultiset(()), 0, 5)

    @settings(max_examples=40)
    @given(graphs(min_n=2, max_n=6), st.integers(1, 2), st.randoms(use_true_random=False))
    def test_certificates_match_enumeration(self, g, s, rnd):
        if not g.num_edges:
            return
        e = EdgeMultiset(tuple(rnd.choice(g.edges()) for _ in range(s)))
        pairs = connected_pairs(g, e)
        walked = set(g.edges())
        for u in range(g.n):
            for v in range(u, g.n):
                for cert in all_even_connections(g, e, u, v):
                    assert check_certificate(g, e, cert, u, v)
                    walked.add((u, v))
        assert pairs == walked
        for u, v in pairs:
            cert = find_even_connection(g, e, u, v)
            assert cert is not None and check_certificate(g, e, cert, u, v)


class TestColonGraph:
    def test_pentagon_gets_chord(self):
        c5 = cycle(5)
        gp, vmap = colon_graph(c5, EdgeMultiset.of(c5, [(1, 2)]))
        assert gp.n == 5 and all(level == 1 for _, level in vmap)
        assert set(gp.edges()) == set(c5.edges()) | {(0, 3)}

    def test_triangle_shadow(self):
        # only z is self-connected; x and y have no walk back to themselves
        k3 = complete(3)
        e = EdgeMultiset.of(k3, [(0, 1)])
        gp, vmap = colon_graph(k3, e)
        assert vmap == [(0, 1), (1, 1), (2, 1), (2, 2)]
        assert gp.num_edges == 4
        assert gp.has_edge(vmap.index((2, 1)), vmap.index((2, 2)))
        assert oracle_matches(k3, e)

    def test_whisker_edge_leaves_ideal_unchanged(self):
        g = add_whiskers(cycle(5), [0])
        e = EdgeMultiset.of(g, [(0, 5)])
        gp, _ = colon_graph(g, e)
        assert gp == g

    def test_empty_multiset(self):
        assert colon_graph(cycle(5), EdgeMultiset(()))[0] == cycle(5)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_oracle_equivalence_small(self, n):
        for g in enumerate_graphs(n, no_isolated=True):
            for s in (1, 2):
                for e in edge_multisets(g, s):
                    assert oracle_matches(g, e), (to_graph6(g), e.edges)

    def test_oracle_equivalence_sampled_s3(self):
        rng = random.Random(7)
        gs = list(enumerate_graphs(6, no_isolated=True))
        for _ in range(60):
            g = rng.choice(gs)
            e = EdgeMultiset(tuple(sorted(rng.choice(g.edges()) for _ in range(3))))
            assert oracle_matches(g, e), (to_graph6(g), e.edges)


class TestClassifyNeighbors:
    def test_pentagon(self):
        c5 = cycle(5)
        e = EdgeMultiset.of(c5, [(1, 2)])
        cls = classify_neighbors(c5, e, 0, 2)
        assert cls.pivot == (1, 2)
        assert (3, 1) in cls.x1 and (1, 1) in cls.x1
        assert not cls.x1 & cls.x2

    def test_errors(self):
        c5 = cycle(5)
        e = EdgeMultiset.of(c5, [(1, 2)])
        with pytest.raises(DomainError):
            classify_neighbors(c5, e, 1, 2)
        with pytest.raises(DomainError):
            classify_neighbors(c5, e, 0, 4)

    @pytest.mark.parametrize("n", [4, 5])
    def test_partition(self, n):
        for g in enumerate_graphs(n, no_isolated=True):
            for e in edge_multisets(g, 2):
                gp, vmap = colon_graph(g, e)
                for i, (a, b) in enumerate(e.edges):
                    for y in (a, b):
                        cls = classify_neighbors(g, e, i, y)
                        ypos = vmap.index((y, 1))
                        nbrs = {vmap[j] for j in gp.neighbors(ypos)}
                        assert cls.x1 | cls.x2 == nbrs
                        assert not cls.x1 & cls.x2
                        for u in g.neighbors(y):
                            assert (u, 1) in cls.x1
