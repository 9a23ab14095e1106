import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chromalg.errors import (
    CanonicalizationBoundError,
    ConstraintError,
    EdgeNotInGraphError,
    GraphSpecError,
)
from chromalg.graph_core import (
    EdgeKind,
    Graph,
    add_universal_vertex,
    canonical_form,
    canonical_key,
    caterpillar,
    complete,
    connectivity,
    contract_edge,
    cuttlefish,
    cycle,
    delete_edge,
    dot_contract,
    edge_kind,
    bull_graph,
    kappa_pair_g,
    kappa_pair_h,
    internal_edges,
    is_connected,
    is_isomorphic,
    is_k_connected,
    is_tree,
    is_unicyclic,
    leaf_contract,
    make_family,
    parse_graph,
    path,
    spine_with_leaves,
    star,
)
from tests.settings import CANONICAL_SETTINGS, QUICK_SETTINGS, STANDARD_SETTINGS
from tests.strategies import graphs, relabellings


def test_edges_are_normalized():
    G = Graph.from_edges(3, [(2, 1), (1, 0)])
    assert G.edges == {(0, 1), (1, 2)}
    assert G.degrees == (1, 2, 1)


@pytest.mark.parametrize("n, edges", [(2, [(0, 0)]), (2, [(0, 2)]), (-1, [])])
def test_invalid_graphs_rejected(n, edges):
    with pytest.raises(GraphSpecError):
        Graph.from_edges(n, edges)


def test_delete_edge():
    assert delete_edge(path(3), (0, 1)).edges == {(1, 2)}
    with pytest.raises(EdgeNotInGraphError):
        delete_edge(path(3), (0, 2))


def test_contractions():
    P3 = path(3)
    assert contract_edge(P3, (0, 1)) == Graph.from_edges(2, [(0, 1)])
    assert dot_contract(P3, (0, 1)) == Graph.from_edges(3, [(0, 1)])
    assert leaf_contract(P3, (0, 1)) == Graph.from_edges(3, [(0, 1), (0, 2)])


def test_contraction_collapses_parallel_edges():
    K3 = complete(3)
    assert contract_edge(K3, (0, 1)) == Graph.from_edges(2, [(0, 1)])


def test_edge_kinds():
    P4 = path(4)
    assert edge_kind(P4, (0, 1)) is EdgeKind.LEAF
    assert edge_kind(P4, (1, 2)) is EdgeKind.INTERNAL
    assert internal_edges(P4) == [(1, 2)]
    assert internal_edges(star(6)) == []


def test_families():
    assert star(5).degrees == (4, 1, 1, 1, 1)
    assert cycle(5).num_edges == 5
    assert complete(4).num_edges == 6
    cat = caterpillar((3, 1, 1, 2))
    assert cat.n == 7 and is_tree(cat)
    cut = cuttlefish(4, 3)
    assert cut.n == 7 and is_unicyclic(cut)
    assert cut.degree(0) == 5
    assert spine_with_leaves((1, 2)).n == 3


@pytest.mark.parametrize(
    "spec, n, m",
    [("St:7", 7, 6), ("P:4", 4, 3), ("C:5", 5, 5), ("K:4", 4, 6), ("E:3", 3, 0), ("Cat:3,1,1,2", 7, 6), ("Cut:4,3", 7, 7), ("Fig1", 5, 5)],
)
def test_make_family(spec, n, m):
    G = make_family(spec)
    assert (G.n, G.num_edges) == (n, m)


@pytest.mark.parametrize("spec, error", [("Cat:1,2", ConstraintError), ("C:2", ConstraintError), ("Foo:3", GraphSpecError), ("Cut:4", GraphSpecError)])
def test_make_family_errors(spec, error):
    with pytest.raises(error):
        make_family(spec)


def test_parse_graph_forms():
    P3 = path(3)
    assert parse_graph('{"n": 3, "edges": [[0, 1], [1, 2]]}') == P3
    assert parse_graph(P3.graph6()) == P3
    assert parse_graph("P:3") == P3
    with pytest.raises(GraphSpecError):
        parse_graph("")
    with pytest.raises(GraphSpecError):
        parse_graph('{"edges": []}')


def test_connectivity():
    assert connectivity(complete(4)) == 3
    assert connectivity(cycle(5)) == 2
    assert connectivity(path(4)) == 1
    assert connectivity(Graph(3)) == 0
    assert is_k_connected(complete(3), 2)
    assert not is_k_connected(complete(3), 3)
    assert is_connected(bull_graph())


def test_kappa_pair_connectivity():
    assert (connectivity(kappa_pair_g()), connectivity(kappa_pair_h())) == (3, 2)
    assert not is_isomorphic(kappa_pair_g(), kappa_pair_h())


def test_universal_vertex():
    G = add_universal_vertex(path(3))
    assert G.n == 4
    assert G.degree(3) == 3


def test_canonical_bound():
    with pytest.raises(CanonicalizationBoundError):
        canonical_key(path(13))


@given(data=st.data(), G=graphs(max_n=7))
@CANONICAL_SETTINGS
def test_canonical_key_is_relabelling_invariant(data, G):
    H = data.draw(relabellings(G))
    assert canonical_key(G) == canonical_key(H)
    assert canonical_form(G) == canonical_form(H)


@given(G=graphs(max_n=6), H=graphs(max_n=6))
@STANDARD_SETTINGS
def test_isomorphism_agrees_with_networkx(G, H):
    expected = G.n == H.n and nx.is_isomorphic(G.to_networkx(), H.to_networkx())
    assert is_isomorphic(G, H) == expected
    assert (canonical_key(G) == canonical_key(H)) == expected


@given(G=graphs(max_n=8))
@QUICK_SETTINGS
def test_connectivity_predicates_agree_with_networkx(G):
    nxG = G.to_networkx()
    assert is_connected(G) == nx.is_connected(nxG)
    assert is_tree(G) == nx.is_tree(nxG)


def test_transformations_on_the_path():
    P4 = path(4)
    assert is_isomorphic(contract_edge(P4, (1, 2)), path(3))
    assert is_isomorphic(dot_contract(P4, (1, 2)), path(3).disjoint_union(Graph(1)))
    assert is_isomorphic(leaf_contract(P4, (1, 2)), star(4))
    assert is_isomorphic(leaf_contract(complete(3), (0, 1)), path(3))
    assert is_isomorphic(contract_edge(cycle(6), (2, 3)), cycle(5))


def test_bull_has_three_internal_edges():
    G = bull_graph()
    assert len(internal_edges(G)) == 3
    assert delete_edge(G, internal_edges(G)[0]).num_edges == 4


def test_named_family_identities():
    assert is_isomorphic(caterpillar((2, 1, 1, 2)), path(6))
    assert cuttlefish(5, 0) == cycle(5)
    assert is_isomorphic(add_universal_vertex(path(2)), complete(3))
    assert is_isomorphic(add_universal_vertex(Graph(1)), star(2))
    assert connectivity(add_universal_vertex(kappa_pair_g())) == 4


@given(G=graphs(min_n=2, max_n=7))
@STANDARD_SETTINGS
def test_contraction_sizes_and_leaf_edges(G):
    for e in G.sorted_edges():
        assert contract_edge(G, e).n == G.n - 1
        dotted, leafed = dot_contract(G, e), leaf_contract(G, e)
        assert dotted.n == leafed.n == G.n
        assert leafed.num_edges == dotted.num_edges + 1
        if edge_kind(G, e) is EdgeKind.LEAF:
            assert is_isomorphic(delete_edge(G, e), dotted)
            assert is_isomorphic(leafed, G)


@given(G=graphs(min_n=4, max_n=7))
@STANDARD_SETTINGS
def test_two_connected_graphs_keep_a_two_connected_minor(G):
    if not is_k_connected(G, 2):
        return
    for e in G.sorted_edges():
        assert is_k_connected(delete_edge(G, e), 2) or is_k_connected(contract_edge(G, e), 2)


@given(G=graphs(max_n=6))
@STANDARD_SETTINGS
def test_universal_vertex_raises_connectivity(G):
    if not is_connected(G):
        return
    assert connectivity(add_universal_vertex(G)) == connectivity(G) + 1
