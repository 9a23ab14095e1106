import pytest
from hypothesis import given

from chromalg.dnc_engine import dnc_expand_memo
from chromalg.enumeration import all_connected
from chromalg.errors import BoundExceededError, PreconditionError
from chromalg.graph_core import (
    Graph,
    caterpillar,
    complete,
    cuttlefish,
    cycle,
    bull_graph,
    path,
    star,
)
from chromalg.invariants import (
    CHECKS,
    achievable_leading_partitions,
    check_chromatic_derivative_links,
    check_cn_equals_unique_sink,
    check_e_expansion_sinks,
    chi_links_sweep,
    chromatic_derivative_links,
    cycle_length_from_star,
    cycle_vertices,
    hook_sum,
    is_two_connected_via_star,
    kconn_check,
    kconn_indistinguishable_pair,
    leading_partition,
    near_hook_sum,
    orientation_stats,
    run_check,
    run_check_graph,
    sigma,
    single_branching_cycle_vertex,
    universal_vertex_m_law,
)
from tests.settings import SLOW_SETTINGS
from tests.strategies import connected_graphs, graphs


def test_hook_sums():
    assert hook_sum(star(5)) == 1
    assert hook_sum(path(5)) == 0
    assert hook_sum(complete(4)) == 0
    with pytest.raises(PreconditionError):
        hook_sum(path(2))
    with pytest.raises(PreconditionError):
        hook_sum(Graph(3))


def test_near_hook_sums():
    assert near_hook_sum(caterpillar((4, 2))) == 1
    assert near_hook_sum(path(5)) == 1
    assert near_hook_sum(path(6)) == -1
    assert near_hook_sum(star(6)) == 0
    with pytest.raises(PreconditionError):
        near_hook_sum(cycle(5))
    with pytest.raises(PreconditionError):
        near_hook_sum(path(4))


def test_sigma():
    assert sigma(cycle(3), 1) == 2
    assert sigma(cycle(3), 2) == -1
    assert sigma(cycle(3), 3) == 0
    assert [sigma(path(6), ell) for ell in range(1, 7)] == [1, 0, 0, 0, 0, 0]
    with pytest.raises(PreconditionError):
        sigma(path(3), 0)
    with pytest.raises(PreconditionError):
        sigma(dnc_expand_memo(path(3)), 4)


def test_cycle_length():
    assert cycle_length_from_star(cuttlefish(4, 2)) == 4
    assert cycle_length_from_star(cycle(6)) == 6
    assert cycle_vertices(cuttlefish(4, 2)) == [0, 1, 2, 3]
    with pytest.raises(PreconditionError):
        cycle_length_from_star(path(4))


def test_two_connected_via_star():
    assert is_two_connected_via_star(cycle(5))
    assert is_two_connected_via_star(complete(4))
    assert not is_two_connected_via_star(path(5))
    assert not is_two_connected_via_star(bull_graph())


def test_leading_partition():
    assert leading_partition(dnc_expand_memo(path(4))) == (2, 2)
    assert leading_partition(dnc_expand_memo(star(5))) == (5,)
    with pytest.raises(PreconditionError):
        leading_partition(dnc_expand_memo(path(3)) - dnc_expand_memo(path(3)))


def test_orientation_stats_of_path():
    stats = orientation_stats(path(3))
    assert stats.total_acyclic == 4
    assert stats.by_sink_count == {1: 3, 2: 1}
    assert stats.unique_sink_at == {0: 1, 1: 1, 2: 1}


def test_orientation_stats_of_triangle():
    stats = orientation_stats(complete(3))
    assert stats.total_acyclic == 6
    assert stats.by_sink_count == {1: 6}
    assert set(stats.unique_sink_at.values()) == {2}


def test_orientation_bound():
    with pytest.raises(BoundExceededError):
        orientation_stats(complete(8))


@given(G=graphs(max_n=5))
@SLOW_SETTINGS
def test_sink_laws(G):
    assert check_cn_equals_unique_sink(G)
    assert check_e_expansion_sinks(G)


@given(G=connected_graphs(min_n=1, max_n=5))
@SLOW_SETTINGS
def test_universal_vertex_law(G):
    assert universal_vertex_m_law(G)


def test_chromatic_derivative_links():
    triangle = chromatic_derivative_links(complete(3))
    assert (triangle.c_hook, triangle.chi_prime_1, triangle.chi_prime_0, triangle.c_n) == (-1, -1, 2, 2)
    assert triangle.simple_root and not triangle.literal
    assert check_chromatic_derivative_links(complete(3))

    p3 = chromatic_derivative_links(path(3))
    assert p3.root1_multiplicity == 2
    assert p3.simple_root and not p3.literal and not p3.multiplicity
    assert check_chromatic_derivative_links(path(3))


def test_derivative_links_agree_with_single_graph_check():
    for G in all_connected(5):
        assert check_chromatic_derivative_links(G) == run_check_graph("chi-links", G).passed


def test_chi_links_sweep_reports_the_passing_reading():
    report = chi_links_sweep([3, 4, 5])
    assert report.passed
    assert report.notes["passing_formulation"] == "simple_root"
    assert report.notes["formulations"]["literal"] is False
    assert report.notes["formulations"]["sink_link"] is True
    assert report.notes["failing_examples"]


def test_kconn_pair():
    G, H = kconn_indistinguishable_pair(4)
    assert G.n == H.n == 7
    with pytest.raises(PreconditionError):
        kconn_indistinguishable_pair(2)
    with pytest.raises(PreconditionError):
        kconn_indistinguishable_pair(6)


@pytest.mark.parametrize("k", [3, 4])
def test_kconn_check(k):
    report = kconn_check(k)
    assert report.passed
    assert report.notes["connectivity"] == [k, k - 1]


@pytest.mark.parametrize(
    "name, n",
    [
        ("2conn", 5),
        ("hook", 5),
        ("near-hook", 7),
        ("sigma", 6),
        ("cn-sink", 4),
        ("sink-dist", 4),
        ("acyclic", 4),
        ("leading", 6),
        ("universal", 3),
        ("distinguish", 6),
        ("chi-links", 4),
        ("kconn", 6),
    ],
)
def test_exhaustive_checks_pass(name, n):
    report = run_check(name, n, exhaustive=True)
    assert report.passed, report.counterexamples
    assert report.graphs_checked > 0


@pytest.mark.slow
@pytest.mark.parametrize("name, n", [("2conn", 7), ("hook", 7), ("near-hook", 10), ("sigma", 8), ("leading", 9), ("acyclic", 6)])
def test_exhaustive_checks_pass_at_larger_sizes(name, n):
    assert run_check(name, n, exhaustive=True).passed


def test_single_size_check():
    report = run_check("2conn", 5)
    assert report.passed
    assert report.graphs_checked == 21


@pytest.mark.slow
def test_exhaustive_sweep_stops_at_class_bound():
    report = run_check("sink-dist", 9, exhaustive=True)
    assert report.passed
    assert "sink-distribution[n=7]" not in report.notes


def test_achievable_leading_partitions():
    assert achievable_leading_partitions(7).passed


def test_run_check_graph():
    assert run_check_graph("2conn", cycle(5)).passed
    assert run_check_graph("sigma", cuttlefish(3, 2)).passed
    assert run_check_graph("chi-links", complete(4)).passed
    with pytest.raises(PreconditionError):
        run_check_graph("near-hook", cycle(5))
    with pytest.raises(PreconditionError):
        run_check_graph("kconn", cycle(5))


def test_unknown_check():
    with pytest.raises(PreconditionError):
        run_check("planarity", 4)


def test_check_registry_names():
    assert set(CHECKS) == {"2conn", "hook", "near-hook", "sigma", "cn-sink", "sink-dist", "acyclic", "leading", "universal"}


def test_bull_statistics():
    G = bull_graph()
    assert hook_sum(G) == 0
    assert [sigma(G, ell) for ell in (1, 2, 3)] == [2, -1, 0]
    assert cycle_length_from_star(G) == 3
    assert set(orientation_stats(G).unique_sink_at.values()) == {2}
    assert check_cn_equals_unique_sink(G)


def test_near_hook_examples():
    assert near_hook_sum(caterpillar((6, 2))) == 1
    assert near_hook_sum(star(9)) == 0


def test_cuttlefish_statistics():
    from math import comb

    assert [sigma(cuttlefish(5, 2), ell) for ell in range(1, 8)] == [(-1) ** (ell - 1) * comb(4, ell) for ell in range(1, 8)]
    assert cycle_length_from_star(cuttlefish(4, 3)) == 4


@pytest.mark.parametrize("c", [3, 4, 5])
def test_cuttlefish_leading_partition(c):
    n = 7
    expected = (n - c + 1, 2) + (1,) * (c - 3)
    assert leading_partition(dnc_expand_memo(cuttlefish(c, n - c))) == expected


def test_caterpillar_leading_partition():
    assert leading_partition(dnc_expand_memo(caterpillar((3, 1, 1, 2)))) == (3, 2, 1, 1)


def test_two_connected_examples():
    from chromalg.graph_core import kappa_pair_h

    assert is_two_connected_via_star(complete(3))
    assert is_two_connected_via_star(kappa_pair_h())
    assert not is_two_connected_via_star(star(6))


def test_orientations_of_trees_and_cycles():
    stats = orientation_stats(caterpillar((3, 1, 2)))
    assert stats.total_acyclic == 2 ** 5
    assert set(stats.unique_sink_at.values()) == {1}
    assert set(orientation_stats(cycle(5)).unique_sink_at.values()) == {4}
    assert sum(stats.by_sink_count.values()) == stats.total_acyclic
    assert 0 not in stats.by_sink_count


def test_unique_sink_on_disconnected_and_complete_graphs():
    assert check_cn_equals_unique_sink(path(2).disjoint_union(path(3)))
    assert check_cn_equals_unique_sink(complete(4))
    assert set(orientation_stats(path(2).disjoint_union(path(3))).unique_sink_at.values()) == {0}


def test_universal_law_examples():
    from chromalg.graph_core import kappa_pair_g

    assert universal_vertex_m_law(Graph(1))
    assert universal_vertex_m_law(path(2))
    assert universal_vertex_m_law(kappa_pair_g())


@pytest.mark.slow
def test_kconn_check_five():
    report = kconn_check(5)
    assert report.passed
    assert report.notes["connectivity"] == [5, 4]


def test_unicyclic_leading_reports_skipped_graphs():
    report = run_check("leading", 5)
    unicyclic = report.notes["unicyclic-leading[n=5]"]
    # C_5 and the bull have no single branching cycle vertex
    assert unicyclic["skipped"] == 2
    assert unicyclic["graphs_checked"] == 3
    assert single_branching_cycle_vertex(cycle(5)) is None
    assert single_branching_cycle_vertex(bull_graph()) is None
    assert single_branching_cycle_vertex(cuttlefish(3, 2)) == 0
