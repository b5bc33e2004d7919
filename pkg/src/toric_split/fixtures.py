"""Named example graphs used by the tests, the acceptance suite and the CLI.

Vertex labels are strings so that the JSON round trip is lossless. Edge order
is part of each fixture: edge k is the variable e{k+1}.
"""
from __future__ import annotations

from .graphcore import Graph, cycle_graph


def _graph(pairs, prefix="v") -> Graph:
    verts = []
    for e in pairs:
        for v in e:
            if v not in verts:
                verts.append(v)
    verts.sort(key=lambda v: (len(v), v) if isinstance(v, str) else (0, v))
    edges = tuple(pairs)
    if all(isinstance(v, int) for v in verts):
        lab = {v: f"{prefix}{v}" for v in verts}
        return Graph(tuple(lab[v] for v in verts), tuple((lab[a], lab[b]) for a, b in edges))
    return Graph(tuple(verts), edges)


def four_squares() -> Graph:
    """Four 4-cycles sharing the edge v2v3."""
    return _graph([(1, 2), (2, 3), (3, 4), (4, 1), (2, 5), (3, 6), (5, 6),
                   (2, 7), (3, 8), (7, 8), (2, 9), (3, 10), (9, 10)])


def four_squares_chain() -> Graph:
    """Four 4-cycles glued successively along edges (same Betti table as four_squares)."""
    return _graph([(1, 2), (2, 3), (3, 4), (4, 1), (2, 5), (3, 6), (5, 6),
                   (6, 7), (3, 8), (7, 8), (1, 9), (2, 10), (9, 10)])


def grid_3x3() -> Graph:
    """Four 4-cycles arranged as a 2×2 grid of squares; no edge splitting."""
    return _graph([(1, 2), (2, 3), (3, 4), (4, 1), (2, 5), (3, 6), (5, 6),
                   (6, 7), (3, 8), (7, 8), (4, 9), (9, 8)])


def square_with_diagonal_path() -> Graph:
    """A 4-cycle x1 x4 x3 y4 with the path x1 x2 x3 across it."""
    return Graph(
        ("x1", "x2", "x3", "x4", "y4"),
        (("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "x1"), ("x1", "y4"), ("y4", "x3")),
    )


def triangles_and_square() -> Graph:
    """Triangle x1x2x7 and x1x8x9x2 square on one side of a path x2..x4, triangle x4x5x6."""
    return _graph([(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4),
                   (1, 7), (7, 2), (1, 8), (8, 9), (9, 2)], prefix="x")


def two_triangles() -> Graph:
    return Graph(("a", "b", "c", "d"), (("a", "b"), ("b", "c"), ("c", "a"), ("a", "d"), ("d", "b")))


def two_squares() -> Graph:
    """Two 4-cycles sharing an edge."""
    return _graph([(1, 2), (2, 3), (3, 4), (4, 1), (2, 5), (5, 6), (6, 3)])


def square_on_hexagon() -> Graph:
    """A 4-cycle and a 6-cycle sharing an edge."""
    return _graph([(1, 2), (2, 3), (3, 4), (4, 1), (2, 5), (5, 6), (6, 7), (7, 8), (8, 3)])


def house_gluing_piece() -> Graph:
    """A 4-cycle x1 x2 v3 v4 with a triangle x2 v3 v5 on its side."""
    return Graph(
        ("x1", "x2", "v3", "v4", "v5"),
        (("x1", "x2"), ("x2", "v3"), ("v3", "v4"), ("v4", "x1"), ("x2", "v5"), ("v3", "v5")),
    )


def disjoint_squares() -> Graph:
    return _graph([(1, 2), (2, 3), (3, 4), (4, 1), (5, 6), (6, 7), (7, 8), (8, 5)])


FIXTURES = {
    "square": lambda: cycle_graph(4),
    "hexagon": lambda: cycle_graph(6),
    "triangle": lambda: cycle_graph(3),
    "four-squares": four_squares,
    "four-squares-chain": four_squares_chain,
    "grid": grid_3x3,
    "square-diagonal-path": square_with_diagonal_path,
    "triangles-and-square": triangles_and_square,
    "two-triangles": two_triangles,
    "two-squares": two_squares,
    "square-on-hexagon": square_on_hexagon,
    "house": house_gluing_piece,
    "disjoint-squares": disjoint_squares,
}


def get(name: str) -> Graph:
    return FIXTURES[name]()
