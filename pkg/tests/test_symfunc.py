from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chromalg.errors import BoundExceededError, PartitionError, PreconditionError
from chromalg.graph_core import Graph, complete, cycle, bull_graph, path, star
from chromalg.linalg import RationalMatrix
from chromalg.symfunc import (
    Basis,
    SymFunc,
    chromatic_derivative,
    chromatic_oracle_m,
    chromatic_oracle_p,
    chromatic_polynomial,
    chromatic_polynomial_dc,
    convert,
    format_rational,
    multiply,
    star_in_powersums,
    transition_matrix,
)
from tests.settings import SLOW_SETTINGS, STANDARD_SETTINGS
from tests.strategies import graphs, symfuncs


def st_(*parts):
    return SymFunc.unit(parts, Basis.STAR)


def test_zero_coefficients_are_dropped():
    f = SymFunc(3, Basis.MONOMIAL, {(2, 1): 0, (3,): Fraction(1, 2)})
    assert f.support() == [(3,)]
    assert f.coefficient((1, 1, 1)) == 0


def test_degree_mismatch_rejected():
    with pytest.raises(PartitionError):
        SymFunc(3, Basis.POWER_SUM, {(2,): 1})
    with pytest.raises(PreconditionError):
        st_(2) + st_(3)


def test_star_in_powersums():
    assert star_in_powersums(3) == {(1, 1, 1): 1, (2, 1): -2, (3,): 1}


def test_star_to_monomial():
    assert convert(st_(3), Basis.MONOMIAL) == SymFunc(3, Basis.MONOMIAL, {(2, 1): 1, (1, 1, 1): 6})
    assert convert(st_(2), Basis.POWER_SUM) == SymFunc(2, Basis.POWER_SUM, {(1, 1): 1, (2,): -1})


def test_products():
    assert st_(2) * st_(1) == st_(2, 1)
    m1 = SymFunc.unit((1,), Basis.MONOMIAL)
    assert multiply(m1, m1) == SymFunc(2, Basis.MONOMIAL, {(2,): 1, (1, 1): 2})


def test_mixed_bases_add_in_left_basis():
    total = st_(2) + SymFunc.unit((2,), Basis.POWER_SUM)
    assert total.basis is Basis.STAR
    assert convert(total, Basis.POWER_SUM) == SymFunc(2, Basis.POWER_SUM, {(1, 1): 1})


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_transition_matrices_are_inverse(n):
    there = transition_matrix(n, Basis.STAR, Basis.ELEMENTARY)
    back = transition_matrix(n, Basis.ELEMENTARY, Basis.STAR)
    size = there.nrows
    assert (there @ back).rows == [[int(i == j) for j in range(size)] for i in range(size)]


@pytest.mark.parametrize("n", [1, 5, 9])
def test_star_to_monomial_is_invertible(n):
    there = transition_matrix(n, Basis.STAR, Basis.MONOMIAL)
    back = transition_matrix(n, Basis.MONOMIAL, Basis.STAR)
    assert there @ back == RationalMatrix.identity(there.nrows)
    assert back == there.inverse()


@STANDARD_SETTINGS
@given(symfuncs(max_n=8), st.sampled_from(list(Basis)))
def test_conversions_round_trip_exactly(f, target):
    assert convert(convert(f, target), f.basis) == f


def test_json_forms():
    f = SymFunc(3, Basis.STAR, {(3,): 2, (2, 1): Fraction(-1, 2)})
    data = f.to_json()
    assert data == {"degree": 3, "basis": "star", "coeffs": {"3": "2/1", "2+1": "-1/2"}}
    assert SymFunc.from_json(data) == f
    assert format_rational(Fraction(3, 6)) == "1/2"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_complete_graph_is_factorial_e_n(n):
    X = convert(chromatic_oracle_p(complete(n)), Basis.ELEMENTARY)
    assert X == SymFunc(n, Basis.ELEMENTARY, {(n,): factorial(n)})


def test_path_oracles():
    assert convert(chromatic_oracle_p(path(3)), Basis.STAR) == st_(3)
    assert chromatic_oracle_m(path(3)) == SymFunc(3, Basis.MONOMIAL, {(2, 1): 1, (1, 1, 1): 6})


def test_oracle_m_bound():
    with pytest.raises(BoundExceededError):
        chromatic_oracle_m(path(10))


@given(G=graphs(max_n=6))
@SLOW_SETTINGS
def test_oracles_agree(G):
    assert convert(chromatic_oracle_p(G), Basis.MONOMIAL) == chromatic_oracle_m(G)


def _coeffs(poly):
    return [int(c) for c in poly.all_coeffs()]


@given(G=graphs(max_n=5))
@STANDARD_SETTINGS
def test_chromatic_polynomial_matches_deletion_contraction(G):
    assert _coeffs(chromatic_polynomial(G)) == _coeffs(chromatic_polynomial_dc(G))


def test_chromatic_polynomial_values():
    assert chromatic_polynomial(cycle(5), 3) == 30
    assert chromatic_polynomial(path(4), 2) == 2
    assert chromatic_polynomial(complete(3), 2) == 0
    assert chromatic_polynomial(Graph(3), 2) == 8
    assert _coeffs(chromatic_polynomial(star(3))) == [1, -2, 1, 0]


def test_chromatic_polynomial_from_symfunc():
    X = convert(chromatic_oracle_p(bull_graph()), Basis.STAR)
    assert _coeffs(chromatic_polynomial(X)) == _coeffs(chromatic_polynomial(bull_graph()))


def test_chromatic_derivative():
    assert chromatic_derivative(complete(3), 0) == 2
    assert chromatic_derivative(complete(3), 1) == -1
    assert chromatic_derivative(path(3), 1) == 0


def test_edge_subset_oracle_small_cases():
    assert chromatic_oracle_p(complete(3)) == SymFunc(3, Basis.POWER_SUM, {(1, 1, 1): 1, (2, 1): -3, (3,): 2})
    assert chromatic_oracle_p(Graph(4)) == SymFunc.unit((1, 1, 1, 1), Basis.POWER_SUM)
    assert chromatic_oracle_m(complete(4)) == SymFunc(4, Basis.MONOMIAL, {(1, 1, 1, 1): 24})


def test_triangle_times_isolated_vertex():
    X = convert(chromatic_oracle_p(complete(3)), Basis.STAR)
    assert X * st_(1) == SymFunc(4, Basis.STAR, {(3, 1): 2, (2, 1, 1): -1})
    p21 = SymFunc.unit((2, 1), Basis.POWER_SUM)
    assert p21 * SymFunc.unit((1,), Basis.POWER_SUM) == SymFunc.unit((2, 1, 1), Basis.POWER_SUM)


@given(G=graphs(max_n=4), H=graphs(max_n=3))
@SLOW_SETTINGS
def test_disjoint_union_is_a_product(G, H):
    assert chromatic_oracle_p(G.disjoint_union(H)) == chromatic_oracle_p(G) * chromatic_oracle_p(H)


@pytest.mark.parametrize("n", range(1, 8))
def test_trees_have_chromatic_polynomial_t_times_t_minus_one_power(n):
    from chromalg.enumeration import all_trees

    for T in all_trees(n):
        assert chromatic_polynomial(T, 3) == 3 * 2 ** (n - 1)
        assert chromatic_polynomial(T, -1) == -((-2) ** (n - 1))
