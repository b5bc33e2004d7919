"""Finite simple graphs, closed even walks, gluing and splitting."""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .exactlin import IntMatrix

Label = Hashable


class GraphError(ValueError):
    pass


class NotInducedIso(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Labelled finite simple graph with ordered vertex and edge lists.

    The edge order fixes the variable order of every ideal built from the
    graph: edge ``k`` is the variable ``e{k+1}``.
    """

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("repeated vertex label")
        vs = set(verts)
        seen = set()
        edges = []
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"loop at {u!r}")
            if u not in vs or v not in vs:
                raise GraphError(f"edge {e!r} uses an undeclared vertex")
            key = frozenset((u, v))
            if key in seen:
                raise GraphError(f"repeated edge {e!r}")
            seen.add(key)
            edges.append((u, v))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v) -> int:
        return sum(v in e for e in self.edges)

    def edge_index(self, u, v) -> int:
        key = {u, v}
        for k, e in enumerate(self.edges):
            if set(e) == key:
                return k
        raise KeyError((u, v))

    def has_edge(self, u, v) -> bool:
        return any(set(e) == {u, v} for e in self.edges)

    def induced(self, W: Iterable) -> "Graph":
        """Induced subgraph; vertex and edge order follow this graph."""
        W = set(W)
        return Graph(
            tuple(v for v in self.vertices if v in W),
            tuple(e for e in self.edges if e[0] in W and e[1] in W),
        )

    def edge_map_into(self, other: "Graph") -> list[int]:
        """Positions of this graph's edges in ``other`` (matching labels)."""
        return [other.edge_index(u, v) for u, v in self.edges]

    def relabel(self, mapping: Mapping) -> "Graph":
        return Graph(
            tuple(mapping.get(v, v) for v in self.vertices),
            tuple((mapping.get(u, u), mapping.get(v, v)) for u, v in self.edges),
        )

    def to_dict(self) -> dict:
        return {"vertices": [str(v) for v in self.vertices], "edges": [[str(u), str(v)] for u, v in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d) -> "Graph":
        if not isinstance(d, dict) or "vertices" not in d or "edges" not in d:
            raise GraphError("graph JSON needs 'vertices' and 'edges'")
        edges = []
        for e in d["edges"]:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} is not a pair")
            edges.append((e[0], e[1]))
        return cls(tuple(d["vertices"]), tuple(edges))

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{u}" -- "{v}" [label="e{k + 1}"];' for k, (u, v) in enumerate(self.edges)]
        lines.append("}")
        return "\n".join(lines)


# --------------------------------------------------------------------------
# constructors


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    V = tuple(f"x{i}" for i in range(1, n + 1))
    return Graph(V, tuple((V[i], V[(i + 1) % n]) for i in range(n)))


def path_graph(n: int) -> Graph:
    """P_n: n edges on n+1 vertices."""
    if n < 1:
        raise GraphError("a path needs at least one edge")
    V = tuple(f"x{i}" for i in range(1, n + 2))
    return Graph(V, tuple((V[i], V[i + 1]) for i in range(n)))


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("K_n needs n >= 1")
    V = tuple(f"x{i}" for i in range(1, n + 1))
    return Graph(V, tuple((V[i], V[j]) for i in range(n) for j in range(i + 1, n)))


def disjoint_union(*graphs: Graph, tags: Sequence[str] | None = None) -> Graph:
    if tags is None:
        tags = [str(i + 1) for i in range(len(graphs))]
    V, E = [], []
    for g, t in zip(graphs, tags):
        V += [f"{v}_{t}" for v in g.vertices]
        E += [(f"{u}_{t}", f"{v}_{t}") for u, v in g.edges]
    return Graph(tuple(V), tuple(E))


# --------------------------------------------------------------------------
# structure


def components(G: Graph, removed: Iterable = ()) -> list[list]:
    """Connected components of G minus ``removed``, in vertex order."""
    removed = set(removed)
    adj = G.adjacency()
    seen, comps = set(), []
    for s in G.vertices:
        if s in removed or s in seen:
            continue
        comp, queue = [], deque([s])
        seen.add(s)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in adj[v]:
                if w not in seen and w not in removed:
                    seen.add(w)
                    queue.append(w)
        order = {v: i for i, v in enumerate(G.vertices)}
        comps.append(sorted(comp, key=order.__getitem__))
    return comps


def is_connected(G: Graph) -> bool:
    return len(components(G)) <= 1


def is_bipartite(G: Graph) -> tuple[bool, tuple[tuple, tuple] | None]:
    """Two-colouring by BFS; returns (False, None) when an odd cycle exists."""
    adj = G.adjacency()
    colour = {}
    for s in G.vertices:
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return False, None
    part0 = tuple(v for v in G.vertices if colour[v] == 0)
    part1 = tuple(v for v in G.vertices if colour[v] == 1)
    return True, (part0, part1)


def incidence_matrix(G: Graph) -> IntMatrix:
    return IntMatrix(
        tuple(tuple(int(v in e) for e in G.edges) for v in G.vertices),
        G.m,
    )


def are_isomorphic(G: Graph, H: Graph) -> bool:
    """Brute-force isomorphism test for small graphs."""
    if G.n != H.n or G.m != H.m:
        return False
    if sorted(G.degree(v) for v in G.vertices) != sorted(H.degree(v) for v in H.vertices):
        return False
    Hedges = {frozenset(e) for e in H.edges}
    degH = {v: H.degree(v) for v in H.vertices}
    Gv = list(G.vertices)

    def extend(k, mapping, used):
        if k == len(Gv):
            return all(frozenset((mapping[u], mapping[v])) in Hedges for u, v in G.edges)
        v = Gv[k]
        for w in H.vertices:
            if w in used or degH[w] != G.degree(v):
                continue
            ok = all(
                (frozenset((mapping[u], w)) in Hedges) == G.has_edge(u, v)
                for u in Gv[:k]
            )
            if ok:
                mapping[v] = w
                used.add(w)
                if extend(k + 1, mapping, used):
                    return True
                used.discard(w)
                del mapping[v]
        return False

    return extend(0, {}, set())


# --------------------------------------------------------------------------
# walks


@dataclass(frozen=True)
class Walk:
    """Closed or open walk: edges ``edge_sequence[k]`` joins vertices k and k+1."""

    edge_sequence: tuple[int, ...]
    vertex_sequence: tuple

    @property
    def length(self) -> int:
        return len(self.edge_sequence)

    @property
    def closed(self) -> bool:
        return self.vertex_sequence[0] == self.vertex_sequence[-1]

    @property
    def even(self) -> bool:
        return self.length % 2 == 0

    def validate(self, G: Graph) -> None:
        if len(self.vertex_sequence) != self.length + 1:
            raise GraphError("vertex sequence must be one longer than the edge sequence")
        for k, idx in enumerate(self.edge_sequence):
            if set(G.edges[idx]) != {self.vertex_sequence[k], self.vertex_sequence[k + 1]}:
                raise GraphError(f"edge {idx} does not join step {k}")


def walk_from_vertices(G: Graph, verts: Sequence) -> Walk:
    edges = tuple(G.edge_index(verts[k], verts[k + 1]) for k in range(len(verts) - 1))
    return Walk(edges, tuple(verts))


def canonical_walk(w: Walk) -> Walk:
    """Minimal representative over rotations and reversal of a closed walk."""
    L = w.length
    es, vs = w.edge_sequence, w.vertex_sequence[:-1]
    order_of = {}
    cands = []
    for k in range(L):
        e_rot = es[k:] + es[:k]
        v_rot = vs[k:] + vs[:k]
        cands.append((e_rot, v_rot))
        e_rev = tuple(reversed(e_rot))
        # reversed walk starts at the vertex after the last edge, i.e. v_rot[0]
        v_rev = (v_rot[0],) + tuple(reversed(v_rot[1:]))
        cands.append((e_rev, v_rev))
    for _, v in cands:
        for x in v:
            order_of.setdefault(x, str(x))
    e_best, v_best = min(cands, key=lambda c: (c[0], tuple(order_of[x] for x in c[1])))
    return Walk(e_best, v_best + (v_best[0],))


def closed_even_walks(G: Graph, max_length: int, primitive_candidates: bool = False) -> list[Walk]:
    """All closed even walks of length ≤ max_length, up to rotation and reversal.

    With ``primitive_candidates`` the search skips walks that provably give a
    non-primitive (or zero) binomial: an edge used at both an odd and an even
    position, or a vertex revisited after an even number of steps (the walk
    then splits into two closed even walks whose binomial divides the whole).
    """
    if max_length % 2:
        raise ValueError("max_length must be even")
    adj = {v: [] for v in G.vertices}
    for k, (u, v) in enumerate(G.edges):
        adj[u].append((v, k))
        adj[v].append((u, k))
    found = {}

    def dfs(path_v, path_e, parity_of, first_visit):
        L = len(path_e)
        here = path_v[-1]
        for w, k in adj[here]:
            par = L % 2
            if primitive_candidates and parity_of.get(k, par) != par:
                continue
            closes = w == path_v[0] and (L + 1) % 2 == 0
            if closes:
                wk = canonical_walk(Walk(tuple(path_e) + (k,), tuple(path_v) + (w,)))
                found.setdefault((wk.edge_sequence, wk.vertex_sequence), wk)
            if L + 1 >= max_length:
                continue
            if primitive_candidates:
                visits = first_visit.get(w)
                if visits is not None:
                    if len(visits) >= 2 or any((L + 1 - p) % 2 == 0 for p in visits):
                        continue
            added = k not in parity_of
            parity_of.setdefault(k, par)
            first_visit.setdefault(w, []).append(L + 1)
            path_v.append(w)
            path_e.append(k)
            dfs(path_v, path_e, parity_of, first_visit)
            path_v.pop()
            path_e.pop()
            first_visit[w].pop()
            if not first_visit[w]:
                del first_visit[w]
            if added:
                del parity_of[k]

    for s in G.vertices:
        dfs([s], [], {}, {s: [0]})
    return sorted(found.values(), key=lambda w: (w.length, w.edge_sequence))


# --------------------------------------------------------------------------
# gluing


@dataclass(frozen=True)
class GlueSpec:
    g1: Graph
    g2: Graph
    h1: tuple
    h2: tuple
    iso: Mapping  # vertex of h1 -> vertex of h2

    def validate(self) -> None:
        if not self.h1:
            raise NotInducedIso("gluing needs a nonempty common subgraph")
        if set(self.iso) != set(self.h1) or set(self.iso.values()) != set(self.h2):
            raise NotInducedIso("iso must be a bijection h1 -> h2")
        if len(set(self.iso.values())) != len(self.h1):
            raise NotInducedIso("iso is not injective")
        for v in self.h1:
            if v not in self.g1.vertices:
                raise NotInducedIso(f"{v!r} not a vertex of g1")
        for v in self.h2:
            if v not in self.g2.vertices:
                raise NotInducedIso(f"{v!r} not a vertex of g2")
        for a, b in itertools.combinations(self.h1, 2):
            if self.g1.has_edge(a, b) != self.g2.has_edge(self.iso[a], self.iso[b]):
                raise NotInducedIso(f"iso does not preserve adjacency of {a!r}, {b!r}")


@dataclass(frozen=True)
class GluedGraph:
    graph: Graph
    vertex_map1: dict
    vertex_map2: dict
    edge_map1: tuple[int, ...]  # edge k of g1 -> edge index in graph
    edge_map2: tuple[int, ...]
    common_edges: tuple[int, ...] = field(default=())


def glue(spec: GlueSpec) -> GluedGraph:
    """Disjoint union of g1 and g2 with h1 identified to h2 along iso.

    g1 keeps its labels and its edge order; g2's other vertices get fresh
    labels if they clash, and g2's non-identified edges follow g1's edges.
    """
    spec.validate()
    g1, g2 = spec.g1, spec.g2
    inv = {b: a for a, b in spec.iso.items()}
    used = set(g1.vertices)
    vmap2 = {}
    for v in g2.vertices:
        if v in inv:
            vmap2[v] = inv[v]
            continue
        label = v
        while label in used:
            label = f"{label}'"
        used.add(label)
        vmap2[v] = label
    vmap1 = {v: v for v in g1.vertices}
    verts = list(g1.vertices) + [vmap2[v] for v in g2.vertices if v not in inv]
    edges = list(g1.edges)
    index = {frozenset(e): k for k, e in enumerate(edges)}
    emap2, common = [], []
    for u, v in g2.edges:
        key = frozenset((vmap2[u], vmap2[v]))
        if key in index:
            emap2.append(index[key])
            common.append(index[key])
        else:
            index[key] = len(edges)
            emap2.append(len(edges))
            edges.append((vmap2[u], vmap2[v]))
    G = Graph(tuple(verts), tuple(edges))
    return GluedGraph(G, vmap1, vmap2, tuple(range(g1.m)), tuple(emap2), tuple(sorted(common)))


# --------------------------------------------------------------------------
# splitting


@dataclass(frozen=True)
class Splitting:
    """G1 and G2 form a splitting of G along the induced subgraph on ``separator``.

    ``path`` lists the separator vertices in path order; ``n_components`` is
    the number of pieces left after deleting the separator (a splitting needs
    at least two; with more, the pieces are distributed between the sides).
    """

    path: tuple
    g1: Graph
    g2: Graph
    side1: tuple
    side2: tuple
    n_components: int

    @property
    def separator(self) -> tuple:
        return self.path

    def path_edges(self, G: Graph) -> list[int]:
        return [G.edge_index(self.path[k], self.path[k + 1]) for k in range(len(self.path) - 1)]


def _sides(G: Graph, sep: Sequence) -> list[tuple[list, list, int]]:
    comps = components(G, sep)
    k = len(comps)
    if k < 2:
        return []
    out = []
    # every split of the components into two nonempty groups, first group
    # always containing component 0 so each split appears once
    for mask in range(1 << (k - 1)):
        grp1 = [comps[0]] + [comps[i + 1] for i in range(k - 1) if mask >> i & 1]
        grp2 = [comps[i + 1] for i in range(k - 1) if not mask >> i & 1]
        if not grp2:
            continue
        out.append(([v for c in grp1 for v in c], [v for c in grp2 for v in c], k))
    return out


def _splittings_along(G: Graph, path: Sequence) -> list[Splitting]:
    res = []
    for s1, s2, k in _sides(G, path):
        W1 = set(s1) | set(path)
        W2 = set(s2) | set(path)
        res.append(Splitting(tuple(path), G.induced(W1), G.induced(W2), tuple(s1), tuple(s2), k))
    return res


def find_edge_splittings(G: Graph) -> list[Splitting]:
    """Splittings of G along a single edge."""
    res = []
    for u, v in G.edges:
        res.extend(_splittings_along(G, (u, v)))
    return res


def induced_paths(G: Graph, l: int) -> list[tuple]:
    """Induced paths with l edges, each listed once (endpoint order by vertex order)."""
    adj = G.adjacency()
    pos = {v: i for i, v in enumerate(G.vertices)}
    out = []

    def extend(path):
        if len(path) == l + 1:
            if pos[path[0]] < pos[path[-1]]:
                out.append(tuple(path))
            return
        for w in adj[path[-1]]:
            if w in path:
                continue
            # induced: w adjacent to no earlier path vertex except the last
            if any(G.has_edge(w, p) for p in path[:-1]):
                continue
            path.append(w)
            extend(path)
            path.pop()

    for s in G.vertices:
        extend([s])
    return out


def find_path_splittings(G: Graph, l: int) -> list[Splitting]:
    """Splittings along induced paths P_l whose interior vertices have degree 2 in G."""
    if l < 1:
        raise ValueError("path length must be at least 1")
    if l == 1:
        return find_edge_splittings(G)
    res = []
    for path in induced_paths(G, l):
        if any(G.degree(v) != 2 for v in path[1:-1]):
            continue
        res.extend(_splittings_along(G, path))
    return res
