import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from linkcent.graph import Graph, load_graph, mask_of, parse_edgelist

from oracles import flood_components


def triangle():
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


def chain(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 6))
    pool = [(i, j) for i in range(n) for j in range(i + 1, n)]
    picks = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool)))
    return Graph(n, picks)


# -- construction ------------------------------------------------------------


def test_rejects_loops_duplicates_and_out_of_range():
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 5)])


def test_edge_ids_are_stable_and_ordered():
    g = Graph(4, [(2, 3), (0, 1), (1, 2)])
    assert g.edges == ((2, 3), (0, 1), (1, 2))
    assert g.edge_id(3, 2) == 0
    assert g.incident[1] == (1, 2)
    assert g.incident_mask(1) == 0b110


# -- components ---------------------------------------------------------------


def test_edge_components_single_edge_and_empty():
    g = triangle()
    parts = g.components_of_edges(mask_of([0]))
    assert parts.blocks == (frozenset({0, 1}),)
    assert g.components_of_edges(0).blocks == ()


def test_edge_components_of_disconnected_fixture(triangle_chain):
    parts = triangle_chain.components_of_edges(triangle_chain.full_edge_mask)
    assert set(parts.blocks) == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}


def test_node_components_chain_examples():
    g = chain(3)
    assert set(g.components_of_nodes([0, 2]).blocks) == {frozenset({0}), frozenset({2})}
    assert len(g.components_of_nodes([0, 1, 2])) == 1


def test_node_components_after_removing_the_middle_node(two_communities):
    keep = [i for i in range(15) if i != 1]
    parts = two_communities.components_of_nodes(keep)
    assert parts.sizes() == (7, 7)
    # oracle: plain flood fill over the explicit edge list
    assert set(parts.blocks) == flood_components(15, two_communities.edges, keep)


def test_block_of_and_node_count():
    g = chain(4)
    parts = g.components_of_nodes([0, 1, 3])
    assert parts.node_count() == 3
    assert parts.block_of(0) == parts.block_of(1) != parts.block_of(3)
    with pytest.raises(KeyError):
        parts.block_of(2)


# -- cutedges ------------------------------------------------------------------


def test_cutedges_of_chain_is_middle_edge():
    g = chain(4)
    assert g.cutedges(g.full_edge_mask) == 1 << g.edge_id(1, 2)


def test_cutedges_of_star_is_empty():
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert g.cutedges(g.full_edge_mask) == 0


def test_trees_have_leaf_edge_count_edges_minus_cutedges():
    # extreme points of a tree = edges touching a leaf
    for g in (chain(5), Graph(7, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)])):
        full = g.full_edge_mask
        d = g.cutedges(full).bit_count()
        leaf_edges = sum(
            1 for i, j in g.edges if g.degree(i) == 1 or g.degree(j) == 1
        )
        assert g.m - d == leaf_edges


def test_cutvertices_on_cyclic_subgraph():
    # a triangle with a tail: only the attachment node cuts
    g = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    assert g.cutvertices(g.full_edge_mask) == frozenset({2, 3})
    assert g.cutedges(g.full_edge_mask) == 1 << g.edge_id(2, 3)


# -- cycles --------------------------------------------------------------------


def test_is_cycle_free():
    g = triangle()
    assert not g.is_cycle_free(g.full_edge_mask)
    assert g.is_cycle_free(mask_of([0, 1]))
    assert chain(5).is_cycle_free(chain(5).full_edge_mask)


def test_dense_graph_is_cyclic_by_edge_count(two_communities):
    g = two_communities
    assert g.m == 24 and g.n == 15
    assert not g.is_cycle_free(g.full_edge_mask)


def test_creates_cycle():
    g = triangle()
    assert g.creates_cycle(mask_of([0, 1]), 2)
    assert not chain(4).creates_cycle(0, 1)
    with pytest.raises(ValueError):
        g.creates_cycle(mask_of([0, 2]), 0)


def test_creates_cycle_bridge_case(triangle_chain):
    g = triangle_chain.add_edge(0, 3)
    bridge = g.edge_id(0, 3)
    assert not g.creates_cycle(mask_of([0, 1, 2]), bridge)


# -- minimal connecting subgraphs ------------------------------------------------


def test_minimal_connecting_chain_unique_path():
    g = chain(3)
    assert g.minimal_connecting_subgraphs({0, 2}) == [mask_of([0, 1])]


def test_minimal_connecting_triangle_two_paths():
    g = triangle()
    direct = 1 << g.edge_id(0, 2)
    around = mask_of([g.edge_id(0, 1), g.edge_id(1, 2)])
    assert g.minimal_connecting_subgraphs({0, 2}) == sorted([direct, around])


def test_minimal_connecting_disconnected_pair(triangle_chain):
    assert triangle_chain.minimal_connecting_subgraphs({0, 3}) == []
    assert triangle_chain.intermediaries({0, 3}) == frozenset()


def test_minimal_connecting_matches_simple_path_oracle(two_communities):
    g = two_communities
    ours = g.minimal_connecting_subgraphs({1, 14})
    nxg = nx.Graph(list(g.edges))
    oracle = sorted(
        mask_of(g.edge_id(i, j) for i, j in path)
        for path in nx.all_simple_edge_paths(nxg, 1, 14)
    )
    assert ours == oracle


def test_minimal_connecting_three_terminals_direct_minimality():
    # every returned set connects R and loses R-connectivity on any removal
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 3), (3, 5), (0, 5)])
    R = {0, 2, 5}
    found = g.minimal_connecting_subgraphs(R)
    assert found
    for emask in found:
        edges = [g.edges[e] for e in range(g.m) if (emask >> e) & 1]
        comps = flood_components(6, edges, {i for ij in edges for i in ij})
        assert any(R <= c for c in comps)
        for drop in range(g.m):
            if not (emask >> drop) & 1:
                continue
            kept = [g.edges[e] for e in range(g.m) if (emask >> e) & 1 and e != drop]
            touched = {i for ij in kept for i in ij} | R
            comps = flood_components(6, kept, touched)
            assert not any(R <= c for c in comps)
    # brute-force the same minimal sets from scratch
    brute = []
    for mask in range(1, 1 << g.m):
        edges = [g.edges[e] for e in range(g.m) if (mask >> e) & 1]
        touched = {i for ij in edges for i in ij} | R
        if not any(R <= c for c in flood_components(6, edges, touched)):
            continue
        minimal = True
        for e in range(g.m):
            if not (mask >> e) & 1:
                continue
            kept = [g.edges[k] for k in range(g.m) if (mask >> k) & 1 and k != e]
            t2 = {i for ij in kept for i in ij} | R
            if any(R <= c for c in flood_components(6, kept, t2)):
                minimal = False
                break
        if minimal:
            brute.append(mask)
    assert found == sorted(brute)


def test_intermediaries_examples(two_communities):
    assert chain(3).intermediaries({0, 2}) == frozenset({1})
    assert triangle().intermediaries({0, 2}) == frozenset({1})
    assert two_communities.intermediaries({1, 14}) == frozenset({2, 9, 10, 11, 12, 13})


# -- edits ----------------------------------------------------------------------


def test_add_edge_appends_id(triangle_chain):
    g = triangle_chain.add_edge(0, 3)
    assert g.m == 6 and g.edges[5] == (0, 3)
    assert g.edges[:5] == triangle_chain.edges
    with pytest.raises(ValueError):
        g.add_edge(3, 0)


def test_remove_edge_keeps_order():
    g = chain(4)
    g2 = g.remove_edge(1, 2)
    assert g2.edges == ((0, 1), (2, 3))
    assert len(g2.components_of_nodes(range(4))) == 2
    with pytest.raises(ValueError):
        g2.remove_edge(1, 2)


def test_star_plus_leaf_edge_closes_triangle():
    g = Graph(4, [(0, 1), (0, 2), (0, 3)]).add_edge(1, 2)
    assert not g.is_cycle_free(g.full_edge_mask)


def test_induced_subgraph_relabels():
    g = Graph(5, [(0, 2), (2, 4), (1, 3)])
    sub, remap = g.induced_subgraph({0, 2, 4})
    assert sub.n == 3 and sub.edges == ((0, 1), (1, 2))
    assert remap == {0: 0, 2: 1, 4: 2}


# -- invariants -------------------------------------------------------------------


@given(small_graphs(), st.data())
@settings(max_examples=120, deadline=None)
def test_edge_component_blocks_cover_exactly_the_touched_nodes(g, data):
    L = data.draw(st.integers(0, g.full_edge_mask))
    parts = g.components_of_edges(L)
    assert parts.node_count() == g.covered_nodes(L).bit_count()
    assert sum(len(b) for b in parts.blocks) == parts.node_count()


@given(small_graphs(), st.data())
@settings(max_examples=120, deadline=None)
def test_creates_cycle_iff_component_count_is_preserved(g, data):
    if g.m == 0:
        return
    e = data.draw(st.integers(0, g.m - 1))
    L = data.draw(st.integers(0, g.full_edge_mask)) & ~(1 << e)
    before = len(g.components_of_edges(L))
    after = len(g.components_of_edges(L | (1 << e)))
    covered_before = g.covered_nodes(L)
    u, v = g.edges[e]
    fresh = 2 - ((covered_before >> u) & 1) - ((covered_before >> v) & 1)
    if g.creates_cycle(L, e):
        assert after == before
    else:
        # the new edge merges two blocks, counting untouched endpoints as new
        assert after == before + fresh - 1


@given(small_graphs(), st.data())
@settings(max_examples=120, deadline=None)
def test_cycle_free_iff_edge_count_matches_nodes_minus_components(g, data):
    L = data.draw(st.integers(0, g.full_edge_mask))
    parts = g.components_of_edges(L)
    expected = L.bit_count() == parts.node_count() - len(parts)
    assert g.is_cycle_free(L) == expected


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_intermediaries_never_contain_terminals(g):
    if g.n < 2:
        return
    assert g.intermediaries({0, 1}).isdisjoint({0, 1})


# -- parsing -------------------------------------------------------------------


def test_parse_edgelist_roundtrip(tmp_path):
    text = "4 3\n0 1\n1 2\n2 3\n"
    g = parse_edgelist(text)
    assert g.n == 4 and g.edges == ((0, 1), (1, 2), (2, 3))
    p = tmp_path / "g.txt"
    p.write_text(text)
    assert load_graph(p).edges == g.edges


def test_parse_json_graph(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"n": 3, "edges": [[0, 1], [1, 2]]}')
    g = load_graph(p)
    assert g.n == 3 and g.m == 2


@pytest.mark.parametrize(
    "text",
    ["", "2\n", "2 1\n", "2 1\n0 1\n0 1\n", "x y\n0 1\n", "2 1\n0 one\n"],
)
def test_parse_edgelist_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_edgelist(text)
