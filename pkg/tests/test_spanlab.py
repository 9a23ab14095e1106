from fractions import Fraction

import pytest

from chromalg.errors import BoundExceededError, ConstraintError, GraphSpecError, PreconditionError
from chromalg.dnc_engine import dnc_expand_memo
from chromalg.enumeration import all_connected, all_trees
from chromalg.graph_core import (
    Graph,
    bull_graph,
    canonical_key,
    caterpillar,
    complete,
    cuttlefish,
    cycle,
    leaf_contract,
    path,
    star,
)
from chromalg.linalg import in_span, rank
from chromalg.partitions import partitions_of
from chromalg.spanlab import (
    AB1K_SMALLEST,
    ab1k_vertices,
    caterpillar_basis,
    change_of_basis_integrality,
    chromatic_basis,
    coloops_connected,
    coloops_trees,
    cuttlefish_basis,
    parse_family,
    span_report,
    st_n_coefficient,
    star_matrix,
    verify_ab1k,
    verify_Cn,
    verify_cut_relations,
    verify_Tn,
)
from chromalg.symfunc import Basis, SymFunc


def same_classes(found, expected):
    return sorted(canonical_key(G) for G in found) == sorted(canonical_key(G) for G in expected)


def test_star_matrix_shape():
    M = star_matrix([path(4), star(4), cycle(4)])
    assert M.shape == (3, 5)
    assert M.row_labels[0] == path(4).graph6()
    assert M.rows[1] == [1, 0, 0, 0, 0]
    with pytest.raises(PreconditionError):
        star_matrix([path(3), path(4)])
    with pytest.raises(PreconditionError):
        star_matrix([])


def test_five_vertex_trees_are_independent():
    M = star_matrix(all_trees(5))
    assert M.shape == (3, 7)
    assert rank(M) == 3


def test_bull_row():
    M = star_matrix([bull_graph()])
    row = dict(zip(M.col_labels, M.rows[0]))
    assert row == {(5,): 2, (4, 1): -3, (3, 2): 2, (3, 1, 1): 1, (2, 2, 1): -1, (2, 1, 1, 1): 0, (1, 1, 1, 1, 1): 0}
    assert star_matrix([star(5)]).rows[0] == [1, 0, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_star_not_spanned_by_other_connected_graphs(n):
    others = [G for G in all_connected(n) if canonical_key(G) != canonical_key(star(n))]
    M = star_matrix(others)
    assert not in_span(star_matrix([star(n)]).rows[0], M)


@pytest.mark.parametrize("n", range(1, 9))
def test_caterpillar_basis_size(n):
    assert len(caterpillar_basis(n)) == len(partitions_of(n)) - n + 1


def test_cuttlefish_basis():
    assert [G.num_edges for G in cuttlefish_basis(5)] == [5, 5, 5]
    with pytest.raises(PreconditionError):
        cuttlefish_basis(2)


@pytest.mark.parametrize("n", range(1, 9))
def test_tree_span(n):
    report = verify_Tn(n)
    assert report.passed
    assert report.rank == len(partitions_of(n)) - n + 1
    assert report.details["sigma_constraints"]


@pytest.mark.parametrize("n", range(2, 7))
def test_connected_span(n):
    report = verify_Cn(n)
    assert report.passed
    assert report.rank == len(partitions_of(n)) - 1
    assert report.details["zero_1n_coordinate"]


@pytest.mark.slow
def test_larger_spans():
    assert verify_Tn(10).passed
    assert verify_Cn(7).passed


def test_span_bounds():
    with pytest.raises(BoundExceededError):
        verify_Tn(11)
    with pytest.raises(PreconditionError):
        verify_Cn(1)


@pytest.mark.parametrize("n", range(1, 7))
def test_small_trees_are_all_coloops(n):
    from chromalg.enumeration import all_trees

    assert len(coloops_trees(n)) == len(all_trees(n))


def test_tree_coloops_on_seven_vertices():
    expected = [path(7), star(7), caterpillar((5, 2)), caterpillar((4, 3))]
    assert same_classes(coloops_trees(7), expected)


@pytest.mark.parametrize("n", [8, 9])
def test_tree_coloops(n):
    assert same_classes(coloops_trees(n), [star(n), path(n), caterpillar((n - 2, 2))])


@pytest.mark.parametrize("n", [4, 5, 6])
def test_connected_coloops(n):
    assert same_classes(coloops_connected(n), [star(n)])


def test_span_report_with_coloops():
    report = span_report("trees", 7, coloops=True)
    assert report.passed
    assert report.details["coloops_match"]
    assert len(report.coloops) == 4
    with pytest.raises(PreconditionError):
        span_report("forests", 4)


def test_span_report_without_basis_check():
    report = span_report("connected", 5, basis_check=False)
    assert report.passed
    assert report.details == {}


@pytest.mark.parametrize("n", range(4, 8))
def test_cut_relations(n):
    report = verify_cut_relations(n)
    assert report.passed, [r for r in report.results if not r["pass"]]
    identities = {r["identity"] for r in report.results}
    assert {"cut-relation-1", "cut-relation-2"} <= identities
    assert ("cut-relation-3" in identities) == (n >= 5)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_cut_relation_three_leaf_term(n):
    results = {r["identity"]: r for r in verify_cut_relations(n).results}
    for name in ("cut-relation-3", "cut-relation-3-cycle-edge", "cut-relation-3-chord"):
        assert results[name]["pass"]

    G = Graph(n, star(n).edges | {(1, 2), (1, 3)})
    leafed = leaf_contract(G, (1, 2))
    cat = dnc_expand_memo(caterpillar((n - 2, 2)))
    rest = dnc_expand_memo(cuttlefish(4, n - 4)) - dnc_expand_memo(G)
    assert cat == rest + dnc_expand_memo(cuttlefish(3, n - 3))
    assert cat != rest + dnc_expand_memo(leafed)


def test_cut_relations_bounds():
    with pytest.raises(ConstraintError):
        verify_cut_relations(3)
    with pytest.raises(BoundExceededError):
        verify_cut_relations(10)


@pytest.mark.parametrize("params", AB1K_SMALLEST, ids=lambda p: f"case{p[0]}-a{p[1]}")
def test_ab1k_smallest_cases(params):
    report = verify_ab1k(*params)
    assert report.passed, report.results
    assert report.parameters["n"] == ab1k_vertices(*params)


def test_ab1k_case5_target_stays_out_of_the_combination():
    report = verify_ab1k("5", 5)
    results = {r["identity"]: r for r in report.results}
    assert results["leading-partition"]["actual"] == "5+3"
    assert results["target-not-used"]["pass"]
    assert results["closed-form"]["pass"]


@pytest.mark.slow
@pytest.mark.parametrize("params", [("1", 5, 3, 2), ("2", 5, 0, 2), ("3", 0, 0, 4), ("4", 5, 4, 0), ("5", 7, 0, 0)])
def test_ab1k_larger_cases(params):
    assert verify_ab1k(*params).passed


@pytest.mark.parametrize("params", [("1", 3, 4, 1), ("2", 3, 0, 1), ("3", 0, 0, 2), ("4", 4, 3, 0), ("5", 4, 0, 0), ("part2", 2, 0, 0), ("7", 0, 0, 0)])
def test_ab1k_parameter_constraints(params):
    with pytest.raises(ConstraintError):
        verify_ab1k(*params)


def test_parse_family():
    family = parse_family("path@3=K:3")
    assert family.member(3) == complete(3)
    assert family.member(4) == path(4)
    listed = parse_family("P:1;P:2;C:3")
    assert listed.member(3) == cycle(3)
    with pytest.raises(PreconditionError):
        listed.member(4)
    with pytest.raises(PreconditionError):
        parse_family("path@3=P:4").member(3)
    with pytest.raises(GraphSpecError):
        parse_family("path@x=K:3")
    with pytest.raises(GraphSpecError):
        parse_family("tree@2=P:2")


def test_chromatic_basis():
    basis = chromatic_basis(parse_family("path"), 3)
    assert basis[0] == SymFunc.unit((3,), Basis.STAR)
    assert basis[-1] == SymFunc.unit((1, 1, 1), Basis.STAR)
    assert len(basis) == 3


@pytest.mark.parametrize("name", ["path", "star"])
@pytest.mark.parametrize("n", range(1, 7))
def test_tree_families_give_integral_bases(name, n):
    report = change_of_basis_integrality(parse_family(name), n)
    assert report.passed
    assert report.all_trees and report.integral and report.unitriangular and report.inverse_integral
    assert report.witness is None
    assert st_n_coefficient(report, n) == 1


def test_triangle_breaks_integrality():
    report = change_of_basis_integrality(parse_family("path@3=K:3"), 3)
    assert report.passed
    assert not report.all_trees
    assert not report.inverse_integral
    assert report.witness == "3"
    assert st_n_coefficient(report, 3) == Fraction(1, 2)


def test_complete_family_is_not_integral():
    report = change_of_basis_integrality(parse_family("complete"), 4)
    assert report.passed
    assert not report.inverse_integral
