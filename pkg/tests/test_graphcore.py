import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from toric_split import fixtures
from toric_split.exactlin import rank
from toric_split.graphcore import (
    Graph,
    GlueSpec,
    GraphError,
    NotInducedIso,
    Walk,
    are_isomorphic,
    canonical_walk,
    closed_even_walks,
    complete_graph,
    components,
    cycle_graph,
    disjoint_union,
    find_edge_splittings,
    find_path_splittings,
    glue,
    incidence_matrix,
    induced_paths,
    is_bipartite,
    is_connected,
    path_graph,
    walk_from_vertices,
)

from helpers import random_path_gluing


def to_nx(G: Graph):
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(G.edges)
    return H


@st.composite
def small_graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    V = tuple(f"v{i}" for i in range(n))
    return Graph(V, tuple((V[a], V[b]) for a, b in chosen))


def test_constructors():
    C = cycle_graph(4)
    assert (C.n, C.m) == (4, 4)
    assert is_bipartite(C)[0]
    P = path_graph(2)
    assert (P.n, P.m) == (3, 2)
    K = complete_graph(3)
    assert are_isomorphic(K, cycle_graph(3))
    with pytest.raises(GraphError):
        cycle_graph(2)
    with pytest.raises(GraphError):
        path_graph(0)


def test_invalid_graphs_rejected():
    with pytest.raises(GraphError):
        Graph(("a",), (("a", "a"),))
    with pytest.raises(GraphError):
        Graph(("a", "b"), (("a", "b"), ("b", "a")))
    with pytest.raises(GraphError):
        Graph(("a",), (("a", "z"),))
    with pytest.raises(GraphError):
        Graph(("a", "a"), ())


def test_connectivity_and_bipartition():
    assert not is_bipartite(cycle_graph(3))[0]
    ok, (A, B) = is_bipartite(cycle_graph(6))
    assert ok and len(A) == len(B) == 3
    two_edges = Graph(("a", "b", "c", "d"), (("a", "b"), ("c", "d")))
    assert not is_connected(two_edges)
    assert len(components(two_edges)) == 2


def test_json_and_dot():
    G = fixtures.get("grid")
    assert Graph.from_json(G.to_json()) == G
    dot = G.to_dot()
    assert dot.startswith("graph") and "--" in dot


def test_incidence_matrices():
    A = incidence_matrix(Graph(("a", "b"), (("a", "b"),)))
    assert A.tolist() == [[1], [1]]
    A = incidence_matrix(cycle_graph(4))
    assert all(sum(c) == 2 for c in A.columns())
    assert rank(A) == 3
    assert rank(incidence_matrix(cycle_graph(3))) == 3


def test_edge_splittings_examples():
    sp = find_edge_splittings(fixtures.get("two-squares"))
    assert [s.separator for s in sp] == [("v2", "v3")]
    assert {s.g1.m for s in sp[0:1]} | {sp[0].g2.m} == {4}
    assert find_edge_splittings(cycle_graph(6)) == []
    sp = find_edge_splittings(fixtures.get("two-triangles"))
    assert [set(s.separator) for s in sp] == [{"a", "b"}]


def test_path_splittings_examples():
    G = fixtures.get("square-diagonal-path")
    # the fixture is K_{2,3}: each of the three x1..x3 paths splits it
    sps = find_path_splittings(G, 2)
    assert sorted(s.path[1] for s in sps) == ["x2", "x4", "y4"]
    s = next(s for s in sps if s.path[1] == "x2")
    assert set(s.path) == {"x1", "x2", "x3"}
    assert s.g1.m == s.g2.m == 4
    assert is_bipartite(s.g1)[0] and is_bipartite(s.g2)[0]
    assert find_path_splittings(cycle_graph(8), 2) == []
    assert find_path_splittings(G, 1) == find_edge_splittings(G)
    with pytest.raises(ValueError):
        find_path_splittings(G, 0)


def test_induced_paths():
    assert len(induced_paths(cycle_graph(5), 2)) == 5
    assert induced_paths(cycle_graph(3), 2) == []


def test_glue_two_triangles():
    T = cycle_graph(3)
    res = glue(GlueSpec(T, T, ("x1", "x2"), ("x1", "x2"), {"x1": "x1", "x2": "x2"}))
    G = res.graph
    assert (G.n, G.m) == (4, 5)
    assert res.common_edges == (0,)
    assert any(len(w.edge_sequence) == 4 for w in closed_even_walks(G, 4))


def test_glue_rejections():
    T = cycle_graph(3)
    with pytest.raises(NotInducedIso):
        glue(GlueSpec(T, T, (), (), {}))
    P = path_graph(2)
    # x1, x3 adjacent in the triangle but not in the path
    with pytest.raises(NotInducedIso):
        glue(GlueSpec(T, P, ("x1", "x3"), ("x1", "x3"), {"x1": "x1", "x3": "x3"}))


def test_glue_orientations_house():
    H = fixtures.get("house")
    ident = glue(GlueSpec(H, H, ("x1", "x2"), ("x1", "x2"), {"x1": "x1", "x2": "x2"})).graph
    flip = glue(GlueSpec(H, H, ("x1", "x2"), ("x1", "x2"), {"x1": "x2", "x2": "x1"})).graph
    degs = sorted(ident.degree(v) for v in ident.vertices)
    fdegs = sorted(flip.degree(v) for v in flip.vertices)
    assert max(degs) == 5 and max(fdegs) == 4
    assert not are_isomorphic(ident, flip)
    assert not nx.is_isomorphic(to_nx(ident), to_nx(flip))


def test_glue_then_split_recovers_inputs():
    rng = random.Random(5)
    for l in (1, 1, 2, 3):
        res, G1, G2, path = random_path_gluing(rng, l)
        found = [s for s in find_path_splittings(res.graph, l) if set(s.path) == set(path)]
        assert found
        pieces = {(s.g1.n, s.g1.m, s.g2.n, s.g2.m) for s in found}
        sizes = [(G1.n, G1.m, G2.n, G2.m), (G2.n, G2.m, G1.n, G1.m)]
        if all(s.n_components == 2 for s in found):
            assert pieces & set(sizes)
            s = found[0]
            a, b = (s.g1, s.g2) if (s.g1.n, s.g1.m) == (G1.n, G1.m) else (s.g2, s.g1)
            assert are_isomorphic(a, G1) and are_isomorphic(b, G2)


def test_walks():
    C = cycle_graph(4)
    ws = closed_even_walks(C, 4)
    assert [w.length for w in ws if len(set(w.edge_sequence)) == w.length] == [4]
    ws = closed_even_walks(C, 4, primitive_candidates=True)
    assert len(ws) == 1 and ws[0].length == 4
    w6 = [w for w in closed_even_walks(cycle_graph(3), 6) if w.length == 6]
    assert any(len(set(w.edge_sequence)) == 3 for w in w6)
    for w in closed_even_walks(path_graph(2), 4):
        # back and forth only: every edge used an even number of times
        assert all(w.edge_sequence.count(e) % 2 == 0 for e in set(w.edge_sequence))
    with pytest.raises(ValueError):
        closed_even_walks(C, 3)


def test_walk_validation():
    C = cycle_graph(4)
    w = walk_from_vertices(C, ["x1", "x2", "x3", "x4", "x1"])
    w.validate(C)
    assert w.closed and w.even
    with pytest.raises(GraphError):
        Walk((0, 2), ("x1", "x2", "x3")).validate(C)


def test_canonical_walk_rotation_and_reversal():
    C = cycle_graph(6)
    w = walk_from_vertices(C, ["x1", "x2", "x3", "x4", "x5", "x6", "x1"])
    r = walk_from_vertices(C, ["x3", "x2", "x1", "x6", "x5", "x4", "x3"])
    assert canonical_walk(w) == canonical_walk(r)


def test_disjoint_union():
    U = disjoint_union(cycle_graph(4), cycle_graph(4))
    assert (U.n, U.m) == (8, 8)
    assert len(components(U)) == 2


# --------------------------------------------------------------------------
# properties


@settings(max_examples=80, deadline=None)
@given(small_graphs())
def test_structure_matches_networkx(G):
    H = to_nx(G)
    assert is_connected(G) == (G.n > 0 and nx.is_connected(H))
    assert is_bipartite(G)[0] == nx.is_bipartite(H)
    assert len(components(G)) == nx.number_connected_components(H)
    ok, parts = is_bipartite(G)
    if ok:
        A, B = map(set, parts)
        assert all((u in A) != (v in A) for u, v in G.edges)


@settings(max_examples=80, deadline=None)
@given(small_graphs())
def test_incidence_rank_formula(G):
    # rank = n - (number of bipartite components)
    bip = sum(1 for c in components(G) if is_bipartite(G.induced(c))[0])
    assert rank(incidence_matrix(G)) == G.n - bip


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=5))
def test_closed_walks_match_brute_force(G):
    L = 4
    ref = set()
    adj = G.adjacency()
    for length in (2, 4):
        for start in G.vertices:
            stack = [[start]]
            while stack:
                p = stack.pop()
                if len(p) == length + 1:
                    if p[-1] == start:
                        w = walk_from_vertices(G, p)
                        c = canonical_walk(w)
                        ref.add((c.edge_sequence, c.vertex_sequence))
                    continue
                for q in adj[p[-1]]:
                    stack.append(p + [q])
    got = {(w.edge_sequence, w.vertex_sequence) for w in closed_even_walks(G, L)}
    assert got == ref


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=7))
def test_edge_splittings_disconnect(G):
    for s in find_edge_splittings(G):
        u, v = s.separator
        assert G.has_edge(u, v)
        rest = to_nx(G)
        rest.remove_nodes_from([u, v])
        assert nx.number_connected_components(rest) == s.n_components >= 2
        assert set(s.g1.vertices) | set(s.g2.vertices) == set(G.vertices)
        assert set(s.g1.vertices) & set(s.g2.vertices) == {u, v}
