from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from toric_split import fixtures
from toric_split.binomials import Binomial, MonomialOrder, buchberger, ideal_equal, saturate
from toric_split.exactlin import IntMatrix, rank
from toric_split.graphcore import (
    Graph,
    components,
    cycle_graph,
    incidence_matrix,
    is_bipartite,
    is_connected,
    path_graph,
    walk_from_vertices,
)
from toric_split.toricgen import (
    NotInIdeal,
    WalkNotClosedEven,
    admits_positive_multigrading,
    grading_vector,
    graph_walk_binomial,
    is_grading_vector,
    is_primitive,
    primitive_walk_generators,
    toric_ideal_of_graph,
    toric_ideal_of_matrix,
    walk_binomial,
    with_order,
)


def B(plus, minus):
    return Binomial(tuple(plus), tuple(minus))


def sympy_toric_gb(A):
    """Reduced degrevlex GB of I_A by elimination of t from x_j - t^{a_j}."""
    m, s = len(A), len(A[0])
    ts = sympy.symbols(f"t0:{m}")
    xs = sympy.symbols(f"x0:{s}")
    gens = [xs[j] - sympy.Mul(*[ts[i] ** A[i][j] for i in range(m)]) for j in range(s)]
    G = sympy.groebner(gens, *ts, *xs, order="lex")
    keep = [g for g in G.exprs if not (g.free_symbols & set(ts))]
    if not keep:
        return set()
    H = sympy.groebner(keep, *xs, order="grevlex")
    return {sympy.Poly(g, *xs) for g in H.exprs}


def ours_as_sympy(T):
    xs = sympy.symbols(f"x0:{T.nvars}")
    out = set()
    for b in T.gb.elements:
        p = sympy.Mul(*[x ** e for x, e in zip(xs, b.plus)]) - sympy.Mul(*[x ** e for x, e in zip(xs, b.minus)])
        out.add(sympy.Poly(p, *xs))
    return out


def test_square_ideal():
    T = toric_ideal_of_graph(cycle_graph(4))
    assert [b.format(T.names()) for b in T.generators()] == ["e1*e3 - e2*e4"]


def test_triangle_zero_ideal():
    T = toric_ideal_of_graph(cycle_graph(3))
    assert T.gb.is_zero
    assert primitive_walk_generators(cycle_graph(3)) == []


def test_single_row_matrix():
    T = toric_ideal_of_matrix([[1, 1]])
    assert T.generators() == (B([1, 0], [0, 1]),)


def test_diagonal_path_graph_generators():
    G = fixtures.get("square-diagonal-path")
    T = toric_ideal_of_graph(G)
    got = {b.canonical() for b in T.generators()}
    want = {B([1, 0, 1, 0, 0, 0], [0, 1, 0, 1, 0, 0]).canonical(),
            B([0, 1, 0, 0, 1, 0], [1, 0, 0, 0, 0, 1]).canonical(),
            B([0, 0, 1, 0, 1, 0], [0, 0, 0, 1, 0, 1]).canonical()}
    assert got == want
    prim = primitive_walk_generators(G, 4)
    assert {b.canonical() for b in prim} == want


def test_disjoint_squares_generators_separate():
    T = toric_ideal_of_graph(fixtures.get("disjoint-squares"))
    assert len(T.generators()) == 2
    a, b = T.generators()
    supp = [{i for i in range(8) if g.plus[i] or g.minus[i]} for g in (a, b)]
    assert not supp[0] & supp[1]


def test_triangles_and_square_degree_five_generator():
    G = fixtures.get("triangles-and-square")
    T = toric_ideal_of_graph(G)
    quintic = B([0, 2, 0, 1, 0, 1, 1, 0, 0, 0, 0], [1, 0, 2, 0, 1, 0, 0, 1, 0, 0, 0])
    from toric_split.binomials import ideal_membership

    assert ideal_membership(quintic, T.gb)
    assert is_primitive(quintic.canonical(), T)


def test_walk_binomials():
    C = cycle_graph(4)
    w = walk_from_vertices(C, ["x1", "x2", "x3", "x4", "x1"])
    assert walk_binomial(w) == B([1, 0, 1, 0], [0, 1, 0, 1])
    P = path_graph(1)
    assert graph_walk_binomial(P, walk_from_vertices(P, ["x1", "x2", "x1"])) is None
    H = cycle_graph(6)
    w6 = walk_from_vertices(H, ["x1", "x2", "x3", "x4", "x5", "x6", "x1"])
    assert graph_walk_binomial(H, w6) == B([1, 0, 1, 0, 1, 0], [0, 1, 0, 1, 0, 1])
    T3 = cycle_graph(3)
    with pytest.raises(WalkNotClosedEven):
        walk_binomial(walk_from_vertices(T3, ["x1", "x2", "x3", "x1"]))
    with pytest.raises(WalkNotClosedEven):
        walk_binomial(walk_from_vertices(C, ["x1", "x2", "x3"]))


def test_primitivity():
    C = cycle_graph(4)
    T = toric_ideal_of_graph(C)
    f = B([1, 0, 1, 0], [0, 1, 0, 1])
    assert is_primitive(f, T)
    twice = B([2, 0, 2, 0], [0, 2, 0, 2])
    assert not is_primitive(twice, T)
    with pytest.raises(NotInIdeal):
        is_primitive(B([1, 0, 0, 0], [0, 1, 0, 0]), T)


def test_grading_vectors():
    A = incidence_matrix(fixtures.get("grid"))
    assert is_grading_vector(A, [Fraction(1, 2)] * A.nrows)
    assert grading_vector(A) is not None
    assert grading_vector([[1, 2], [0, 0]]) is None
    assert grading_vector(IntMatrix.identity(3)) == [1, 1, 1]


def test_positive_multigrading():
    assert admits_positive_multigrading([[1, 2, 0], [0, 1, 3]])
    assert not admits_positive_multigrading([[1, -1]])
    assert admits_positive_multigrading(incidence_matrix(cycle_graph(5)))
    assert admits_positive_multigrading([[1, -1], [0, 1]])
    assert not admits_positive_multigrading([[1, 1, -2]])


def test_with_order():
    T = toric_ideal_of_graph(fixtures.get("two-squares"))
    L = with_order(T, MonomialOrder("lex"))
    assert L.gb.order.kind == "lex"
    assert ideal_equal(T.gb, L.gb)


@pytest.mark.parametrize("name", sorted(fixtures.FIXTURES))
def test_fixture_invariants(name):
    G = fixtures.get(name)
    T = toric_ideal_of_graph(G)
    A = T.matrix
    # primality proxy
    assert ideal_equal(saturate(T.gb, (1,) * T.nvars), T.gb)
    for b in T.generators():
        assert A.apply(b.plus) == A.apply(b.minus)
        assert sum(A.apply(b.plus)) == 2 * sum(b.plus)
    # dimension = rank = n - #bipartite components
    bip = sum(1 for c in components(G) if is_bipartite(G.induced(c))[0])
    assert T.dimension() == rank(A) == G.n - bip
    if is_connected(G):
        assert T.dimension() == (G.n - 1 if is_bipartite(G)[0] else G.n)


@pytest.mark.parametrize("name", sorted(fixtures.FIXTURES))
def test_generated_by_primitive_walks(name):
    G = fixtures.get(name)
    T = toric_ideal_of_graph(G)
    gens = primitive_walk_generators(G, 2 * G.m, T)
    W = buchberger(gens, T.gb.order, G.m)
    assert ideal_equal(W, T.gb)


@pytest.mark.parametrize("name", ["square", "hexagon", "two-squares", "two-triangles", "house"])
def test_graph_ideal_matches_elimination_oracle(name):
    T = toric_ideal_of_graph(fixtures.get(name))
    assert ours_as_sympy(T) == sympy_toric_gb(T.matrix.tolist())


@settings(max_examples=12, deadline=None)
@given(st.integers(2, 5).flatmap(
    lambda s: st.lists(st.lists(st.integers(0, 2), min_size=s, max_size=s), min_size=1, max_size=2)
).filter(lambda A: all(any(r[j] for r in A) for j in range(len(A[0])))))
def test_matrix_ideal_matches_elimination_oracle(A):
    T = toric_ideal_of_matrix(A)
    assert ours_as_sympy(T) == sympy_toric_gb(A)
