# test_constructions.py
"""Tests for graph operations, named families, spectrum fixtures and the inertia lemmas they exercise."""

import json
from itertools import combinations

import networkx as nx
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs, graphs, isomorphic
from constructions import (
    FamilyParameterError, FixtureTableError, SpectrumSpec, SpectrumSpecError, add_twin, complete,
    complete_bipartite, cycle, disjoint_union, family, fixture_graphs, fixture_h1, fixture_h2,
    fixture_spectra, fixture_tight, inertia_from_spectrum, join, kayak_paddle, kotlov_lovasz_double,
    line_graph, load_fixture_table, paley, path, petersen, prism, srg_parameters, srg_spectrum, star,
    table_checksum, tadpole, tensor_product, triangular
)
from graph import Graph, adjacency_matrix, delete_vertices
from inertia import graph_inertia, inertia, shifted_inertia


def _inertia(g):
    return graph_inertia(g).as_tuple()


class TestOperations:
    def test_line_graph_examples(self):
        assert line_graph(star(3)) == complete(3)
        assert line_graph(path(4)) == path(3)
        assert isomorphic(line_graph(cycle(5)), cycle(5))
        assert line_graph(path(4)).origin == ((0, 1), (1, 2), (2, 3))
        assert line_graph(Graph.empty(3)).order == 0

    @given(graphs(max_order=7))
    def test_line_graph_matches_networkx(self, g):
        lg = line_graph(g)
        assert lg.order == g.size
        assert nx.is_isomorphic(lg.to_networkx(), nx.line_graph(g.to_networkx()))

    def test_join_and_union(self):
        assert join(Graph.empty(1), Graph.empty(1)) == complete(2)
        assert isomorphic(join(Graph.empty(2), Graph.empty(2)), cycle(4))
        assert _inertia(disjoint_union(cycle(5), cycle(5))) == (6, 0, 4)
        assert disjoint_union(complete(2), complete(2)).edges() == [(0, 1), (2, 3)]

    def test_tensor_examples(self):
        two_k2 = tensor_product(complete(2), complete(2))
        assert isomorphic(two_k2, disjoint_union(complete(2), complete(2)))
        assert _inertia(tensor_product(cycle(5), cycle(5))) == (13, 0, 12)
        assert tensor_product(cycle(5), Graph.empty(1)) == Graph.empty(5)

    @given(graphs(max_order=5), graphs(max_order=5))
    def test_tensor_inertia_identity(self, g, h):
        a, b = graph_inertia(g), graph_inertia(h)
        t = graph_inertia(tensor_product(g, h))
        assert t.n_plus == a.n_plus * b.n_plus + a.n_minus * b.n_minus
        assert t.n_minus == a.n_plus * b.n_minus + a.n_minus * b.n_plus

    @given(graphs(max_order=6), graphs(max_order=6))
    def test_join_bounds(self, g, h):
        a, b = graph_inertia(g), graph_inertia(h)
        joined = graph_inertia(join(g, h))
        assert joined.n_plus <= a.n_plus + b.n_plus + 1
        assert joined.n_minus >= a.n_minus + b.n_minus - 1

    @given(graphs(max_order=6), graphs(max_order=6))
    def test_component_additivity(self, g, h):
        assert graph_inertia(disjoint_union(g, h)) == graph_inertia(g) + graph_inertia(h)

    def test_double_examples(self):
        once = kotlov_lovasz_double(complete(2))
        assert once.order == 6
        assert _inertia(once) == (2, 2, 2)
        assert _inertia(kotlov_lovasz_double(Graph.empty(1))) == (1, 2, 1)
        assert isomorphic(kotlov_lovasz_double(Graph.empty(1)), disjoint_union(path(3), Graph.empty(1)))

    def test_double_chain(self):
        g = complete(2)
        for k in range(1, 4):
            i = graph_inertia(g)
            assert g.order == 2 ** (k + 1) - 2
            assert (i.n_plus, i.n_minus) == (k, k)
            g = kotlov_lovasz_double(g)

    @given(graphs(max_order=6))
    def test_double_raises_both_sides(self, g):
        before = graph_inertia(g)
        after = graph_inertia(kotlov_lovasz_double(g))
        assert after.n_plus == before.n_plus + 1
        assert after.n_minus == before.n_minus + 1

    def test_add_twin_examples(self):
        assert add_twin(complete(2), 0) == path(3)
        assert add_twin(complete(2), 0, closed=True) == complete(3)
        assert _inertia(add_twin(cycle(5), 0)) == (3, 1, 2)
        with pytest.raises(ValueError):
            add_twin(complete(2), 2)


class TestTwinLemmas:
    @given(graphs(min_order=1, max_order=7), st.data())
    def test_open_twin_preserves_signs(self, g, data):
        v = data.draw(st.integers(min_value=0, max_value=g.order - 1))
        before = graph_inertia(g)
        after = graph_inertia(add_twin(g, v))
        assert (after.n_plus, after.n_zero, after.n_minus) == (before.n_plus, before.n_zero + 1, before.n_minus)

    @given(graphs(min_order=1, max_order=7), st.data())
    def test_closed_twin_adds_minus_one(self, g, data):
        v = data.draw(st.integers(min_value=0, max_value=g.order - 1))
        before = shifted_inertia(adjacency_matrix(g), -1)
        after = shifted_inertia(adjacency_matrix(add_twin(g, v, closed=True)), -1)
        assert after.n_zero == before.n_zero + 1

    @given(graphs(min_order=2, max_order=7))
    def test_closed_twin_pair_bound(self, g):
        closed = [row | (1 << v) for v, row in enumerate(g.rows)]
        for u, v in combinations(range(g.order), 2):
            if closed[u] == closed[v]:
                assert graph_inertia(g).n_minus >= graph_inertia(delete_vertices(g, [u, v])).n_minus + 1

    @given(graphs(min_order=2))
    def test_leaf_lemma(self, g):
        i = graph_inertia(g)
        for u in range(g.order):
            if g.degree(u) == 1:
                v = g.neighbours(u)[0]
                rest = graph_inertia(delete_vertices(g, [u, v]))
                assert (i.n_plus, i.n_minus) == (rest.n_plus + 1, rest.n_minus + 1)

    @given(graphs(min_order=1))
    def test_signature_moves_by_at_most_one(self, g):
        i = graph_inertia(g)
        for v in range(g.order):
            part = graph_inertia(delete_vertices(g, [v]))
            assert abs(i.signature - part.signature) <= 1
            if part.rank in (i.rank, i.rank - 2):
                assert part.signature == i.signature

    @given(connected_graphs(min_order=2))
    def test_neighbourhood_deletion(self, g):
        i = graph_inertia(g)
        for u in range(g.order):
            rest = graph_inertia(delete_vertices(g, [u] + g.neighbours(u)))
            assert i.n_plus >= rest.n_plus + 1
            assert i.n_minus >= rest.n_minus + 1

    @given(graphs(max_order=7), st.data())
    def test_sum_bounds(self, g, data):
        edges = g.edges()
        split = data.draw(st.lists(st.booleans(), min_size=len(edges), max_size=len(edges)))
        b = Graph.from_edges(g.order, (e for e, left in zip(edges, split) if left))
        c = Graph.from_edges(g.order, (e for e, left in zip(edges, split) if not left))
        a_i, b_i, c_i = graph_inertia(g), graph_inertia(b), graph_inertia(c)
        assert a_i.n_plus <= b_i.n_plus + c_i.n_plus
        assert a_i.n_minus <= b_i.n_minus + c_i.n_minus
        assert b_i.n_plus - c_i.n_minus <= a_i.n_plus
        assert b_i.n_minus - c_i.n_plus <= a_i.n_minus


class TestFamilies:
    def test_small_families(self):
        assert path(0) == Graph.empty(0)
        assert cycle(3) == complete(3)
        assert isomorphic(complete_bipartite(2, 3), Graph.from_edges(5, [(0, 2), (0, 3), (0, 4),
                                                                         (1, 2), (1, 3), (1, 4)]))
        assert star(3).degrees() == [3, 1, 1, 1]
        assert tadpole(3, 2).size == 5
        assert prism(3).degrees() == [3] * 6
        assert kayak_paddle(3, 3, 1).size == 7
        assert kayak_paddle(3, 4, 3).order == 9

    def test_paley(self):
        assert paley(5) == cycle(5)
        assert _inertia(paley(13)) == (7, 0, 6)
        for q in (7, 9, 15):
            with pytest.raises(FamilyParameterError):
                paley(q)

    def test_petersen(self):
        assert isomorphic(petersen(), Graph.from_edges(10, nx.petersen_graph().edges()))
        assert srg_parameters(petersen()) == (10, 3, 0, 1)

    def test_fixture_graphs_of_order_nine(self):
        for g in (fixture_h1(), fixture_h2()):
            assert g.order == 9
            assert _inertia(g) == (6, 0, 3)

    def test_triangular_four(self):
        # T(4) is the octahedron: 4, 0^3, -2^2
        assert _inertia(triangular(4)) == (1, 3, 2)

    @pytest.mark.parametrize("k", range(5, 10))
    def test_triangular_inertia(self, k):
        assert _inertia(triangular(k)) == (k, 0, k * (k - 3) // 2)

    def test_family_lookup(self):
        assert family("cycle", 5) == cycle(5)
        assert family("H1") == fixture_h1()
        with pytest.raises(FamilyParameterError):
            family("dodecahedron")
        with pytest.raises(FamilyParameterError):
            family("cycle")
        with pytest.raises(FamilyParameterError):
            family("cycle", 2)


class TestSpectra:
    def test_spectrum_inertia(self):
        gq = SpectrumSpec.from_strings(27, [("10", 1), ("1", 20), ("-5", 6)])
        assert inertia_from_spectrum(gq).as_tuple() == (21, 0, 6)
        mcl = SpectrumSpec.from_strings(275, [("112", 1), ("2", 252), ("-28", 22)])
        assert inertia_from_spectrum(mcl).as_tuple() == (253, 0, 22)
        zero = SpectrumSpec.from_strings(4, [("0", 4)])
        assert inertia_from_spectrum(zero).as_tuple() == (0, 4, 0)

    def test_irrational_entries(self):
        c5 = SpectrumSpec.from_strings(5, [("2", 1), ("(-1+sqrt(5))/2", 2), ("(-1-sqrt(5))/2", 2)])
        assert inertia_from_spectrum(c5).as_tuple() == (3, 0, 2)
        assert c5.distinct()[0] == 2

    def test_invalid_spectra(self):
        with pytest.raises(SpectrumSpecError):
            SpectrumSpec.from_strings(3, [("1", 1), ("-1", 1)])
        with pytest.raises(SpectrumSpecError):
            SpectrumSpec.from_strings(2, [("-1", 1), ("1", 1)])
        with pytest.raises(SpectrumSpecError):
            SpectrumSpec.from_strings(2, [("1", 0), ("-1", 2)])
        with pytest.raises(SpectrumSpecError):
            SpectrumSpec.from_strings(1, [("I", 1)])

    def test_srg_parameters(self):
        assert srg_parameters(cycle(5)) == (5, 2, 0, 1)
        assert srg_parameters(paley(13)) == (13, 6, 2, 3)
        assert srg_parameters(triangular(6)) == (15, 8, 4, 4)
        assert srg_parameters(cycle(4)) == (4, 2, 0, 2)
        assert srg_parameters(complete(4)) is None
        assert srg_parameters(cycle(6)) is None
        assert srg_parameters(disjoint_union(complete(3), complete(3))) is None

    def test_srg_spectrum(self):
        spectrum = srg_spectrum(10, 3, 0, 1)
        assert spectrum.pairs == ((3, 1), (1, 5), (-2, 4))
        c5 = srg_spectrum(5, 2, 0, 1)
        assert [m for _, m in c5.pairs] == [1, 2, 2]
        assert sympy.simplify(c5.pairs[1][0] - (sympy.sqrt(5) - 1) / 2) == 0

    @pytest.mark.parametrize("g", [cycle(5), petersen(), paley(13), triangular(6), triangular(7)])
    def test_srg_spectrum_matches_inertia(self, g):
        assert inertia_from_spectrum(srg_spectrum(*srg_parameters(g))) == graph_inertia(g)


class TestFixtureTable:
    def test_checksum_verified(self):
        data = load_fixture_table()
        assert data['sha256'] == table_checksum(data)
        assert data['version'] == 1

    def test_tampered_table_rejected(self, tmp_path):
        data = load_fixture_table()
        data['graphs'][0]['inertia'] = [2, 0, 0]
        path = tmp_path / "fixtures.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        with pytest.raises(FixtureTableError, match="checksum"):
            load_fixture_table(path)

    def test_missing_table(self, tmp_path):
        with pytest.raises(FixtureTableError):
            load_fixture_table(tmp_path / "absent.json")

    def test_spectra(self):
        spectra = fixture_spectra()
        assert set(spectra) >= {"gq_2_4", "mclaughlin", "petersen", "c5"}
        assert inertia_from_spectrum(spectra["gq_2_4"]).as_tuple() == (21, 0, 6)
        assert "absolute_bound.g" in fixture_tight()["mclaughlin"]

    def test_graph_fixtures_match_exact_inertia(self):
        for fixture in fixture_graphs():
            assert graph_inertia(fixture.graph).as_tuple() == fixture.inertia, fixture.name

    def test_spectrum_fixtures_match_exact_inertia(self):
        built = {"petersen": petersen(), "c5": cycle(5), "triangular_6": triangular(6),
                 "paley_13": paley(13), "k2": complete(2)}
        spectra = fixture_spectra()
        for name, g in built.items():
            assert inertia_from_spectrum(spectra[name]) == graph_inertia(g), name


@given(connected_graphs(min_order=2, max_order=7))
def test_line_graph_least_eigenvalue(g):
    a = adjacency_matrix(line_graph(g))
    shifted = shifted_inertia(a, -2)
    assert shifted.n_minus == 0
    assert shifted.n_zero >= g.size - g.order


def test_rational_shift_matches_integer_scaling():
    a = adjacency_matrix(cycle(5)).tolist()
    scaled = [[3 * x - (1 if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(a)]
    assert shifted_inertia(a, "1/3") == inertia(scaled)
