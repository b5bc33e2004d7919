"""Random graph corpora shared by the unit and acceptance tests."""
from __future__ import annotations

import itertools
import random

from toric_split.binomials import buchberger
from toric_split.graphcore import Graph, GlueSpec, glue, is_bipartite, is_connected


def random_side(rng: random.Random, tag: str, nside: int, extra: int, bipartite: bool) -> tuple[list, list]:
    """Random connected graph on nside fresh vertices: a random tree plus extra edges."""
    verts = [f"{tag}{i}" for i in range(nside)]
    edges = []
    for i in range(1, nside):
        edges.append((verts[rng.randrange(i)], verts[i]))
    colour = {verts[0]: 0}
    for u, v in edges:
        colour[v] = 1 - colour[u]
    cand = [p for p in itertools.combinations(verts, 2)
            if p not in edges and (p[1], p[0]) not in edges
            and (not bipartite or colour[p[0]] != colour[p[1]])]
    rng.shuffle(cand)
    edges += cand[:extra]
    return verts, edges


def attach_path(rng, verts, edges, path, bipartite, max_edges):
    """Hang the separator path off a side graph through its endpoints only.

    Interior path vertices keep degree 2. For a bipartite side the path
    endpoints are joined to vertices of compatible colour.
    """
    colour = {verts[0]: 0}
    changed = True
    while changed:
        changed = False
        for u, v in edges:
            for a, b in ((u, v), (v, u)):
                if a in colour and b not in colour:
                    colour[b] = 1 - colour[a]
                    changed = True
    l = len(path) - 1
    path_colour = {p: k % 2 for k, p in enumerate(path)}
    out = list(edges) + [(path[k], path[k + 1]) for k in range(l)]
    ends = [path[0], path[-1]] if l > 0 else [path[0]]
    for end in ends:
        pool = verts if not bipartite else [v for v in verts if colour[v] != path_colour[end]]
        if not pool:
            return None
        out.append((end, rng.choice(pool)))
    # optional second attachment for extra cycles
    budget = max_edges - len(out)
    if budget > 0 and rng.random() < 0.5:
        end = rng.choice(ends)
        pool = [v for v in verts if (end, v) not in out
                and (not bipartite or colour[v] != path_colour[end])]
        if pool:
            out.append((end, rng.choice(pool)))
    return out


def random_path_gluing(rng: random.Random, l: int, max_edges: int = 8):
    """(G, G1, G2, path) with G = G1 ∪ G2 glued along an induced path of length l.

    G2 is bipartite; G1 is arbitrary. Both sides are connected with at most
    max_edges edges, and interior path vertices have degree 2 in G.
    """
    while True:
        path = [f"p{k}" for k in range(l + 1)]
        sides = []
        for tag, bip in (("a", rng.random() < 0.3), ("b", True)):
            nside = rng.randint(1, 4)
            extra = rng.randint(0, 3)
            verts, edges = random_side(rng, tag, nside, extra, bip)
            full = attach_path(rng, verts, edges, path, bip, max_edges)
            if full is None or len(full) > max_edges:
                sides = None
                break
            V = verts + path
            G_side = Graph(tuple(V), tuple(full))
            if bip and not is_bipartite(G_side)[0]:
                sides = None
                break
            if l > 1 and G_side.has_edge(path[0], path[-1]):
                sides = None
                break
            sides.append(G_side)
        if sides is None:
            continue
        G1, G2 = sides
        if not (is_connected(G1) and is_connected(G2)):
            continue
        iso = {p: p for p in path}
        res = glue(GlueSpec(G1, G2, tuple(path), tuple(path), iso))
        return res, G1, G2, tuple(path)


def embedded_sum(res, parts, order, nvars):
    """Gröbner basis of I_{G1} + I_{G2} inside K[E(G)] using the glue edge maps."""
    from toric_split.toricgen import toric_ideal_of_graph

    gens = []
    for P, emap in zip(parts, (res.edge_map1, res.edge_map2)):
        T = toric_ideal_of_graph(P)
        gens += [b.embed(emap, nvars) for b in T.gb.elements]
    return buchberger(gens, order, nvars)


def random_pair(rng: random.Random, n: int, lo: int = -2, hi: int = 2):
    a = [rng.randint(lo, hi) for _ in range(n)]
    b = [rng.randint(lo, hi) for _ in range(n)]
    return a, b
