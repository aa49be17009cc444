# test_inertia.py
"""Tests for exact inertia, eigenvalue counting, characteristic polynomials and the float path."""

import gc
import weakref
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from constructions import complete, cycle, fixture_h1, path, star, triangular
from graph import Graph, adjacency_matrix, delete_vertices, laplacian_matrix
from inertia import (
    AsymmetricMatrixError, ExactLimitError, Inertia, IntPolynomial, IntervalError, RationalSymMatrix,
    ZeroPolynomialError, char_poly, check_energy_bounds, count_eigenvalues_in_interval, float_sign_agreement,
    float_spectrum, graph_inertia, inertia, inertia_from_charpoly, shifted_inertia
)
from scanner import random_graphs


@st.composite
def symmetric_matrices(draw, max_dim=6, bound=5):
    n = draw(st.integers(min_value=0, max_value=max_dim))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(st.integers(min_value=-bound, max_value=bound))
    return m


class TestInertia:
    @pytest.mark.parametrize("g, expected", [
        (complete(2), (1, 0, 1)),
        (cycle(5), (3, 0, 2)),
        (path(3), (1, 1, 1)),
        (path(4), (2, 0, 2)),
        (fixture_h1(), (6, 0, 3)),
        (triangular(6), (6, 0, 9)),
        (Graph.empty(3), (0, 3, 0)),
    ])
    def test_graphs(self, g, expected):
        assert inertia(adjacency_matrix(g)).as_tuple() == expected
        assert graph_inertia(g).as_tuple() == expected

    def test_empty_matrix(self):
        assert inertia([]).as_tuple() == (0, 0, 0)

    def test_zero_diagonal_needs_block_pivot(self):
        assert inertia([[0, 1], [1, 0]]).as_tuple() == (1, 0, 1)
        assert inertia([[0, 0], [0, 0]]).as_tuple() == (0, 2, 0)
        assert inertia([[0, 3, 0], [3, 0, 0], [0, 0, 0]]).as_tuple() == (1, 1, 1)

    def test_rational_entries(self):
        m = [[Fraction(1, 2), 0], [0, Fraction(-1, 3)]]
        assert inertia(m).as_tuple() == (1, 0, 1)

    def test_derived_quantities(self):
        i = Inertia(3, 0, 2)
        assert (i.signature, i.rank, i.order) == (1, 5, 5)
        assert (Inertia(1, 0, 1) + Inertia(0, 1, 0)).as_tuple() == (1, 1, 1)

    def test_asymmetric_rejected(self):
        with pytest.raises(AsymmetricMatrixError):
            inertia([[0, 1], [0, 0]])
        with pytest.raises(AsymmetricMatrixError):
            inertia([[0, 1]])
        with pytest.raises(AsymmetricMatrixError):
            inertia(np.zeros((2, 3), dtype=np.int64))

    def test_exact_limit(self):
        with pytest.raises(ExactLimitError):
            inertia([[0, 1], [1, 0]], exact_limit=1)
        approx = inertia([[0, 1], [1, 0]], exact_limit=1, allow_approximate=True)
        assert approx == Inertia(1, 0, 1)
        assert approx.approximate
        assert approx.to_dict()['approximate'] is True
        assert 'approximate' not in Inertia(1, 0, 1).to_dict()

    def test_graph_exact_limit(self):
        with pytest.raises(ExactLimitError):
            graph_inertia(complete(3), exact_limit=2)
        assert graph_inertia(complete(3), True, 2).approximate

    def test_graph_inertia_keeps_no_reference(self):
        g = next(random_graphs(40, 1, seed=3))
        ref = weakref.ref(g)
        graph_inertia(g)
        del g
        gc.collect()
        assert ref() is None

    @given(symmetric_matrices())
    def test_sylvester_consistency(self, m):
        assert inertia(m) == inertia_from_charpoly(char_poly(m))

    @given(graphs())
    def test_graph_sylvester_consistency(self, g):
        assert graph_inertia(g) == inertia_from_charpoly(char_poly(adjacency_matrix(g)))

    @given(graphs(max_order=7), st.randoms(use_true_random=False))
    def test_permutation_invariant(self, g, rnd):
        perm = list(range(g.order))
        rnd.shuffle(perm)
        a = adjacency_matrix(g)
        assert inertia(a[np.ix_(perm, perm)]) == inertia(a)

    @given(symmetric_matrices(max_dim=5), st.integers(min_value=1, max_value=4))
    def test_scaling_invariant(self, m, c):
        scaled = [[Fraction(x, c) for x in row] for row in m]
        assert inertia(scaled) == inertia(m)

    @given(graphs(min_order=1))
    def test_trace_zero(self, g):
        i = graph_inertia(g)
        assert (i.n_plus == 0) == (i.n_minus == 0) == (g.size == 0)

    @given(graphs(min_order=1), st.data())
    def test_vertex_deletion_interlacing(self, g, data):
        v = data.draw(st.integers(min_value=0, max_value=g.order - 1))
        whole = graph_inertia(g)
        part = graph_inertia(delete_vertices(g, [v]))
        assert whole.n_plus - 1 <= part.n_plus <= whole.n_plus
        assert whole.n_minus - 1 <= part.n_minus <= whole.n_minus


class TestShifted:
    def test_examples(self):
        assert shifted_inertia(adjacency_matrix(complete(2)), 1).as_tuple() == (0, 1, 1)
        assert shifted_inertia(adjacency_matrix(cycle(5)), -1).as_tuple() == (3, 0, 2)
        assert shifted_inertia(adjacency_matrix(complete(3)), -1).as_tuple() == (1, 2, 0)
        assert shifted_inertia(adjacency_matrix(complete(2)), "1/2").as_tuple() == (1, 0, 1)

    def test_rational_matrix(self):
        m = RationalSymMatrix.shifted([[0, 1], [1, 0]], Fraction(1, 3))
        assert m.dimension == 2
        assert shifted_inertia(m, "-2/3").as_tuple() == (1, 0, 1)
        assert shifted_inertia(m, "2/3").as_tuple() == (0, 1, 1)

    def test_bad_shift(self):
        with pytest.raises(ValueError):
            shifted_inertia([[0]], "one")

    @given(graphs())
    def test_zero_shift_is_inertia(self, g):
        assert shifted_inertia(adjacency_matrix(g), 0) == graph_inertia(g)


class TestInterval:
    def test_examples(self):
        assert count_eigenvalues_in_interval(adjacency_matrix(path(4)), -1, 0) == 1
        assert count_eigenvalues_in_interval(laplacian_matrix(path(3)), 0, 2, include_a=True) == 2
        assert count_eigenvalues_in_interval(adjacency_matrix(complete(3)), -1, 0) == 0
        assert count_eigenvalues_in_interval(adjacency_matrix(complete(3)), -1, -1, True, True) == 2

    def test_reversed_interval(self):
        with pytest.raises(IntervalError):
            count_eigenvalues_in_interval([[0]], 1, 0)

    @given(graphs(max_order=7), st.fractions(min_value=-4, max_value=4, max_denominator=6),
           st.fractions(min_value=0, max_value=4, max_denominator=6))
    def test_additive(self, g, a, width):
        a_matrix = adjacency_matrix(g)
        b = a + width
        c = a + 2 * width
        whole = count_eigenvalues_in_interval(a_matrix, a, c, include_a=True)
        left = count_eigenvalues_in_interval(a_matrix, a, b, include_a=True)
        right = count_eigenvalues_in_interval(a_matrix, b, c, include_a=True)
        if width:
            assert whole == left + right

    @given(graphs())
    def test_whole_line(self, g):
        assert count_eigenvalues_in_interval(adjacency_matrix(g), -g.order, g.order, True, True) == g.order


class TestCharPoly:
    def test_examples(self):
        assert char_poly(adjacency_matrix(complete(2))).coefficients == (1, 0, -1)
        assert char_poly(adjacency_matrix(complete(3))).coefficients == (1, 0, -3, -2)
        assert char_poly(adjacency_matrix(cycle(5))).coefficients == (1, 0, -5, 0, 5, -2)
        assert char_poly([]).coefficients == (1,)

    def test_render(self):
        assert str(IntPolynomial((1, 0, -3, -2))) == "λ^3 - 3λ - 2"
        assert str(IntPolynomial((1, 0, -1))) == "λ^2 - 1"

    def test_not_monic(self):
        with pytest.raises(ValueError):
            IntPolynomial((2, 1))

    def test_descartes(self):
        assert inertia_from_charpoly((1, 0, -1)).as_tuple() == (1, 0, 1)
        assert inertia_from_charpoly((1, 0, 0)).as_tuple() == (0, 2, 0)
        assert inertia_from_charpoly(IntPolynomial((1, 0, -3, -2))).as_tuple() == (1, 0, 2)
        assert inertia_from_charpoly((1, 0, -5, 0, 5, -2)).as_tuple() == (3, 0, 2)

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomialError):
            inertia_from_charpoly((0, 0))


class TestFloatPath:
    def test_known_spectra(self):
        assert np.allclose(float_spectrum(adjacency_matrix(complete(2))).eigenvalues, (1, -1))
        expected = sorted((2 * np.cos(2 * np.pi * j / 5) for j in range(5)), reverse=True)
        assert np.allclose(float_spectrum(adjacency_matrix(cycle(5))).eigenvalues, expected)
        star_spectrum = float_spectrum(adjacency_matrix(star(4)))
        assert np.allclose(star_spectrum.eigenvalues, (2, 0, 0, 0, -2), atol=1e-9)
        assert star_spectrum.residual_bound < 1e-8

    def test_empty(self):
        assert float_spectrum([]).eigenvalues == ()

    def test_sign_agreement(self):
        spectrum = float_spectrum(adjacency_matrix(cycle(5)))
        assert float_sign_agreement(spectrum, Inertia(3, 0, 2))
        assert not float_sign_agreement(spectrum, Inertia(2, 0, 3))

    @given(graphs(min_order=1))
    def test_float_agrees_with_exact(self, g):
        spectrum = float_spectrum(adjacency_matrix(g))
        assert float_sign_agreement(spectrum, graph_inertia(g))


class TestEnergy:
    def test_triangle(self):
        report = check_energy_bounds(complete(3))
        assert report.energy == pytest.approx(4)
        assert report.holds_lower and report.holds_upper and report.holds_lemma
        assert report.holds_strong is None

    def test_large_largest_eigenvalue(self):
        report = check_energy_bounds(complete(5))
        assert report.lambda_max == pytest.approx(4)
        assert report.holds_strong is True

    def test_empty_graph_rejected(self):
        with pytest.raises(ValueError):
            check_energy_bounds(Graph.empty(0))

    @given(graphs(min_order=1))
    def test_bounds_hold(self, g):
        report = check_energy_bounds(g)
        assert report.holds_lower
        assert report.holds_upper
        assert report.holds_lemma
        assert report.holds_strong in (None, True)
