from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs
from edgereg.errors import DomainError, GraphParseError, GuardError
from edgereg.graph import (
    Graph,
    add_whiskers,
    canonical_form,
    closed_nbhd,
    complement,
    complete,
    cycle,
    disjoint_union,
    empty,
    enumerate_graphs,
    from_graph6,
    from_json,
    house,
    is_chordal,
    is_isomorphic,
    parse_graph,
    path,
    perfect_elimination_ordering,
    read_graph6_file,
    star,
    to_graph6,
    write_graph6_file,
)
from oracles import brute_is_chordal


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


class TestGraph6:
    def test_single_vertex(self):
        g = from_graph6("@")
        assert g.n == 1 and g.num_edges == 0

    def test_k2(self):
        assert to_graph6(complete(2)) == "A_"
        assert from_graph6("A_") == complete(2)

    @given(graphs(max_n=9))
    def test_matches_networkx_encoder(self, g):
        # networkx implements the published bit layout independently
        expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert to_graph6(g) == expected
        assert from_graph6(expected) == g

    def test_header_accepted(self):
        assert from_graph6(">>graph6<<A_") == complete(2)

    def test_illegal_character(self):
        with pytest.raises(GraphParseError) as info:
            from_graph6("D\x20")
        assert info.value.offset == 1

    def test_truncated(self):
        with pytest.raises(GraphParseError, match="truncated"):
            from_graph6("D")

    def test_trailing(self):
        with pytest.raises(GraphParseError, match="trailing"):
            from_graph6("A__")

    def test_empty_string(self):
        with pytest.raises(GraphParseError):
            from_graph6("")

    def test_file_round_trip(self, tmp_path):
        gs = list(enumerate_graphs(4))
        f = tmp_path / "four.g6"
        write_graph6_file(f, gs)
        assert read_graph6_file(f) == gs


class TestConstructions:
    def test_whiskers_on_triangle(self):
        g = add_whiskers(complete(3), range(3))
        assert g.n == 6 and g.num_edges == 6
        assert sorted(g.degrees()) == [1, 1, 1, 3, 3, 3]

    def test_disjoint_union_edges(self):
        assert disjoint_union(cycle(5), cycle(7)).num_edges == 12

    def test_cycle_degrees(self):
        assert cycle(5).degrees() == [2] * 5

    def test_short_cycle_rejected(self):
        with pytest.raises(DomainError):
            cycle(2)

    def test_star_and_path(self):
        assert star(4).degrees() == [4, 1, 1, 1, 1]
        assert path(4).num_edges == 3

    def test_bad_adjacency(self):
        with pytest.raises(DomainError):
            Graph(2, (0b10, 0))
        with pytest.raises(DomainError):
            Graph.from_edges(2, [(0, 0)])
        with pytest.raises(DomainError):
            Graph.from_edges(2, [(0, 2)])

    def test_json(self):
        g = from_json('{"n": 3, "edges": [[0, 1], [1, 2]]}')
        assert g == path(3)
        with pytest.raises(GraphParseError):
            from_json("{not json")
        with pytest.raises(GraphParseError):
            from_json('{"edges": []}')

    def test_parse_names(self):
        assert parse_graph("C5") == cycle(5)
        assert parse_graph("K3") == complete(3)
        assert parse_graph("E4") == empty(4)
        assert parse_graph("C5+C7").n == 12
        assert parse_graph("house") == house()
        assert parse_graph("A_") == complete(2)


class TestOperations:
    def test_pentagon_minus_closed_star(self):
        c5 = cycle(5)
        for x in range(5):
            rest = c5.delete(closed_nbhd(c5, [x]))
            assert rest.n == 2 and rest.num_edges == 1

    def test_closed_neighbourhood_size(self):
        assert bin(cycle(5).closed_nbhd_mask([0])).count("1") == 3

    def test_complement_of_c4(self):
        c = complement(cycle(4))
        assert c.num_edges == 2 and c.degrees() == [1] * 4

    def test_out_of_range_vertex(self):
        with pytest.raises(DomainError):
            cycle(5).induced_subgraph([0, 7])

    def test_induced_subgraph_keeps_labels(self):
        h = cycle(6).induced_subgraph([1, 2, 3])
        assert h.vertex_labels() == (1, 2, 3)
        assert h == path(3)

    @given(graphs())
    def test_involutions(self, g):
        assert complement(complement(g)) == g
        assert g.induced_subgraph(range(g.n)) == g

    def test_components(self):
        g = disjoint_union(cycle(3), path(2))
        assert sorted(map(len, g.components())) == [2, 3]
        assert not g.is_connected()


class TestChordality:
    def test_examples(self):
        assert not is_chordal(cycle(4))
        assert is_chordal(complete(5)) and is_chordal(empty(5))
        assert not is_chordal(complement(cycle(7)))

    def test_against_brute_force_n7(self):
        # every isomorphism class up to 7 vertices
        for n in range(1, 8):
            for g in enumerate_graphs(n):
                assert is_chordal(g) == brute_is_chordal(g.adj, g.n), to_graph6(g)

    @given(graphs(max_n=8))
    def test_against_networkx(self, g):
        assert is_chordal(g) == nx.is_chordal(to_nx(g))

    @given(graphs(max_n=8))
    def test_peo_is_valid(self, g):
        order = perfect_elimination_ordering(g)
        if order is None:
            assert not is_chordal(g)
            return
        pos = {v: i for i, v in enumerate(order)}
        for v in order:
            later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
            assert all(g.has_edge(a, b) for i, a in enumerate(later) for b in later[i + 1:])


class TestEnumeration:
    @pytest.mark.parametrize("n,no_iso,count", [
        (2, True, 1), (3, True, 2), (4, True, 7), (5, True, 23), (6, True, 122),
        (4, False, 11), (5, False, 34), (6, False, 156),
    ])
    def test_counts(self, n, no_iso, count):
        # OEIS A000088 and A002494
        assert len(list(enumerate_graphs(n, no_isolated=no_iso))) == count

    def test_pairwise_non_isomorphic(self):
        gs = [to_nx(g) for g in enumerate_graphs(5)]
        for i, a in enumerate(gs):
            for b in gs[i + 1:]:
                assert not nx.is_isomorphic(a, b)

    def test_guard(self):
        with pytest.raises(GuardError):
            list(enumerate_graphs(9))

    @settings(max_examples=60)
    @given(graphs(max_n=7))
    def test_canonical_form(self, g):
        perm = list(range(g.n))[::-1]
        h = g.relabel(perm)
        assert canonical_form(g) == canonical_form(h)
        assert is_isomorphic(g, h)
        assert nx.is_isomorphic(to_nx(canonical_form(g)), to_nx(g))


def test_corpora_match_enumeration():
    from pathlib import Path

    root = Path(__file__).resolve().parent.parent / "corpora"
    for n in range(2, 8):
        stored = read_graph6_file(root / f"graphs{n}_noisolated.g6")
        assert stored == list(enumerate_graphs(n, no_isolated=True))
