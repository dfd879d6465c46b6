from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from edgereg.errors import DomainError, GraphParseError
from edgereg.evenconn import edge_multisets
from edgereg.graph import Graph, complete, cycle, empty, enumerate_graphs, path, to_graph6
from edgereg.monomial import (
    MonomialIdeal,
    colon,
    depolarize,
    divides,
    edge_ideal,
    edge_product,
    graph_of_quadratic_ideal,
    minimalize,
    mul,
    naive_power,
    polarize,
    power,
    unit_ideal,
)

XYZ = ("x", "y", "z")
P3 = MonomialIdeal.from_generators(XYZ, [(1, 1, 0), (0, 1, 1)])


def names(ideal: MonomialIdeal) -> set[str]:
    return {ideal.format_monomial(g) for g in ideal.gens}


def is_antichain(ideal: MonomialIdeal) -> bool:
    return not any(a != b and divides(a, b) for a in ideal.gens for b in ideal.gens)


monomials3 = st.tuples(*[st.integers(0, 3)] * 3)
ideals3 = st.lists(monomials3, min_size=1, max_size=5).map(lambda gs: MonomialIdeal.from_generators(XYZ, gs))


class TestBasics:
    def test_edge_ideals(self):
        assert edge_ideal(complete(2)).gens == ((1, 1),)
        assert len(edge_ideal(cycle(5)).gens) == 5
        assert edge_ideal(empty(3)).is_zero()

    def test_minimalize(self):
        gens = minimalize([(1, 1), (2, 1), (1, 1), (0, 2), (3, 0)])
        assert gens == ((0, 2), (1, 1), (3, 0))

    def test_bad_generators(self):
        with pytest.raises(DomainError):
            MonomialIdeal.from_generators(XYZ, [(1, 1)])
        with pytest.raises(DomainError):
            MonomialIdeal.from_generators(("x", "x"), [(1, 1)])
        with pytest.raises(DomainError):
            colon(P3, (1, 1))

    def test_json_round_trip(self):
        assert MonomialIdeal.from_json(P3.to_json()) == P3
        with pytest.raises(GraphParseError):
            MonomialIdeal.from_json("{oops")


class TestPower:
    def test_principal(self):
        xy = MonomialIdeal.from_generators(("x", "y"), [(1, 1)])
        assert power(xy, 2).gens == ((2, 2),)

    def test_p3_squared(self):
        assert names(power(P3, 2)) == {"x^2*y^2", "x*y^2*z", "y^2*z^2"}

    def test_c5_squared_count(self):
        assert len(power(edge_ideal(cycle(5)), 2).gens) == 15

    def test_zero_power_is_unit(self):
        assert power(P3, 0).is_unit()
        assert power(P3, 0) == unit_ideal(XYZ)

    @settings(max_examples=60)
    @given(ideals3, st.integers(1, 3))
    def test_matches_naive_expansion(self, ideal, q):
        p = power(ideal, q)
        assert set(p.gens) == set(naive_power(ideal, q).gens)
        assert is_antichain(p)

    @settings(max_examples=30)
    @given(graphs(max_n=5))
    def test_power_of_power(self, g):
        i = edge_ideal(g)
        assert set(power(power(i, 2), 2).gens) == set(power(i, 4).gens)


class TestColon:
    def test_p3(self):
        assert names(colon(power(P3, 2), (1, 1, 0))) == {"x*y", "y*z"}

    def test_by_one(self):
        assert colon(P3, (0, 0, 0)) == P3

    @settings(max_examples=80)
    @given(ideals3, monomials3, monomials3)
    def test_membership(self, ideal, m, a):
        # a in (I : m) exactly when a*m in I
        assert colon(ideal, m).contains(a) == ideal.contains(mul(a, m))
        assert is_antichain(colon(ideal, m))

    def test_quadratic_generation(self):
        for n in range(2, 7):
            for g in enumerate_graphs(n, no_isolated=True):
                i = edge_ideal(g)
                for s in (1, 2):
                    top = power(i, s + 1)
                    for e in edge_multisets(g, s):
                        c = colon(top, edge_product(g.n, e.edges))
                        assert all(sum(m) == 2 for m in c.gens), (to_graph6(g), e)


class TestPolarization:
    def test_single_monomial(self):
        pol, _ = polarize(MonomialIdeal.from_generators(("x", "y"), [(2, 2)]))
        assert pol.vars == ("x", "x^(2)", "y", "y^(2)")
        assert pol.gens == ((1, 1, 1, 1),)

    def test_squarefree_identity(self):
        pol, corr = polarize(P3)
        assert pol == P3
        assert corr == [(0, 1), (1, 1), (2, 1)]

    def test_p3_squared(self):
        pol, _ = polarize(power(P3, 2))
        assert len(pol.gens) == 3
        assert pol.nvars <= 6 and pol.is_squarefree()

    @settings(max_examples=60)
    @given(ideals3)
    def test_depolarize_inverts(self, ideal):
        pol, corr = polarize(ideal)
        assert pol.is_squarefree()
        assert depolarize(pol, corr, ideal.vars) == ideal


class TestQuadraticGraph:
    def test_p3(self):
        g = graph_of_quadratic_ideal(P3)
        assert g == path(3)

    @settings(max_examples=40)
    @given(graphs(max_n=7))
    def test_round_trip(self, g):
        h = g.without_isolated()
        if h.num_edges:
            assert graph_of_quadratic_ideal(edge_ideal(h)) == h

    def test_k3_colon_gets_a_shadow(self):
        k3 = edge_ideal(complete(3), XYZ)
        pol, _ = polarize(colon(power(k3, 2), (1, 1, 0)))
        g = graph_of_quadratic_ideal(pol)
        assert g.n == 4 and g.num_edges == 4
        assert set(g.vertex_labels()) == {"x", "y", "z", "z^(2)"}

    def test_rejects_non_quadric(self):
        with pytest.raises(DomainError, match="x\\^2"):
            graph_of_quadratic_ideal(MonomialIdeal.from_generators(("x", "y"), [(2, 0), (1, 1)]))
        with pytest.raises(DomainError):
            graph_of_quadratic_ideal(MonomialIdeal.from_generators(XYZ, [(1, 1, 1)]))
