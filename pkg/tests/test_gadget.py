import pytest

from diam2aug.errors import (
    DisconnectedInputError,
    EqualEndpointsError,
    GraphParseError,
    NotUVertexError,
)
from diam2aug.gadget import (
    CLOSED_NEIGHBORHOOD,
    TWIN_ONLY,
    build_gadget,
    classify_vertex,
    forward_map,
    pair_index,
    parse_map,
    serialize_map,
)
from diam2aug.graph import (
    bfs_distances,
    add_edges,
    diameter,
    diameter_with_augmentation,
    from_edge_list,
    serialize_graph,
)
from diam2aug.harness import connected_graphs_exhaustive
from diam2aug.solvers import uncovered_pairs

from oracles import oracle_diameter


def gadget_size(n):
    return 2 * n + (2 * n) * (2 * n - 1) // 2 + 2


def audit_edge_count(g1, variant):
    """Count the construction piece by piece, independently of build_gadget."""
    n = g1.n
    pair_count = (2 * n) * (2 * n - 1) // 2
    copies = 2 * g1.m
    if variant == TWIN_ONLY:
        cross = n
    else:
        cross = sum(1 + len(g1.adj[v]) for v in range(n))
    clique = pair_count * (pair_count - 1) // 2
    return copies + cross + clique + 2 * pair_count + pair_count + 1


def test_sizes_p3(gadget_p3, gadget_p3_twin):
    assert gadget_p3.graph.n == 23 == gadget_size(3)
    assert gadget_p3.graph.m == 162
    assert gadget_p3_twin.graph.m == 158


def test_smallest_gadget():
    g = build_gadget(from_edge_list(1, []))
    assert g.graph.n == 5
    assert len(g.pair_to_y) == 1
    assert diameter(g.graph) == 3


def test_audit_edge_counts():
    for n in range(1, 5):
        for g1 in connected_graphs_exhaustive(n):
            for variant in (CLOSED_NEIGHBORHOOD, TWIN_ONLY):
                gadget = build_gadget(g1, variant)
                assert gadget.graph.n == gadget_size(n)
                assert gadget.graph.m == audit_edge_count(g1, variant)


def test_disconnected_rejected():
    with pytest.raises(DisconnectedInputError):
        build_gadget(from_edge_list(2, []))


def test_roles_and_layout(gadget_p3):
    assert classify_vertex(gadget_p3, 0) == "U1"
    assert classify_vertex(gadget_p3, 3) == "U2"
    assert classify_vertex(gadget_p3, 6) == "Y"
    assert classify_vertex(gadget_p3, 21) == "Z"
    assert classify_vertex(gadget_p3, 22) == "X"
    roles = gadget_p3.roles
    assert roles.count("U1") == roles.count("U2") == 3
    assert roles.count("Y") == 15
    assert roles.count("Z") == roles.count("X") == 1


def test_structure_invariants(gadget_p3):
    g = gadget_p3.graph
    z, x = gadget_p3.z_id, gadget_p3.x_id
    # x pendant on z; z adjacent to Y and x only
    assert g.adj[x] == frozenset({z})
    assert g.adj[z] == frozenset(gadget_p3.y_to_pair) | {x}
    # Y induces a clique; each y touches exactly its own pair among U
    y_ids = set(gadget_p3.y_to_pair)
    for y in y_ids:
        assert y_ids - {y} <= g.adj[y]
        assert g.adj[y] & set(gadget_p3.u_vertices) == set(gadget_p3.y_to_pair[y])
    # twins are mutual and share a base vertex
    for u in gadget_p3.u_vertices:
        t = gadget_p3.twin[u]
        assert gadget_p3.twin[t] == u
        assert gadget_p3.base[u] == gadget_p3.base[t]


def test_cross_edges_by_variant(p3, gadget_p3, gadget_p3_twin):
    for i in range(3):
        for j in range(3):
            closed = gadget_p3.graph.has_edge(i, 3 + j)
            twin = gadget_p3_twin.graph.has_edge(i, 3 + j)
            assert closed == (i == j or p3.has_edge(i, j))
            assert twin == (i == j)


def test_diameter_three_and_far_pairs():
    for n in range(1, 5):
        for g1 in connected_graphs_exhaustive(n):
            for variant in (CLOSED_NEIGHBORHOOD, TWIN_ONLY):
                gadget = build_gadget(g1, variant)
                assert oracle_diameter(gadget.graph.n, gadget.graph.edges) == 3
                far = uncovered_pairs(gadget.graph, (), 2)
                assert far == [(w, gadget.x_id) for w in gadget.u_vertices]


def test_pair_index(gadget_p3):
    assert pair_index(gadget_p3, 0, 1) == pair_index(gadget_p3, 1, 0)
    y = pair_index(gadget_p3, 2, 5)
    assert gadget_p3.roles[y] == "Y"
    with pytest.raises(EqualEndpointsError):
        pair_index(gadget_p3, 2, 2)
    with pytest.raises(NotUVertexError):
        pair_index(gadget_p3, 6, 0)


def test_forward_map(gadget_p3, gadget_p3_twin):
    fm = forward_map(gadget_p3, {1})
    assert fm == frozenset({(1, 22)})
    assert diameter_with_augmentation(gadget_p3.graph, fm) == 2
    # twin-only wiring breaks the forward direction on P3
    fm_twin = forward_map(gadget_p3_twin, {1})
    assert diameter_with_augmentation(gadget_p3_twin.graph, fm_twin) == 3
    aug = add_edges(gadget_p3_twin.graph, fm_twin)
    assert bfs_distances(aug, gadget_p3_twin.x_id)[gadget_p3_twin.u2_of(0)] == 3
    assert forward_map(gadget_p3, set()) == frozenset()


def test_forward_map_preserves_size(gadget_p3):
    for d in ({0}, {0, 1}, {0, 1, 2}):
        assert len(forward_map(gadget_p3, d)) == len(d)


def test_build_deterministic(p3):
    a = build_gadget(p3)
    b = build_gadget(p3)
    assert serialize_graph(a.graph) == serialize_graph(b.graph)
    assert serialize_map(a) == serialize_map(b)


def test_map_roundtrip(gadget_p3):
    text = serialize_map(gadget_p3)
    restored = parse_map(gadget_p3.graph, text)
    assert restored.roles == gadget_p3.roles
    assert restored.twin == gadget_p3.twin
    assert restored.base == gadget_p3.base
    assert restored.pair_to_y == gadget_p3.pair_to_y
    assert restored.variant == gadget_p3.variant


def test_stale_map_rejected(gadget_p3):
    other = build_gadget(from_edge_list(2, [(0, 1)]))
    with pytest.raises(GraphParseError):
        parse_map(gadget_p3.graph, serialize_map(other))
