"""Independent reference implementations used only by the tests.

None of these share code with the package: ranks come from sympy,
isomorphism from networkx, matchings from brute force over edge subsets.
"""

from __future__ import annotations

import itertools
import random

import networkx as nx
import sympy

from altan.graph import Graph, make_graph
from altan.lattice import canonical_cells, has_hole, internal_vertex_count, neighbours


def sympy_nullity(G: Graph) -> int:
    if G.n == 0:
        return 0
    M = sympy.zeros(G.n, G.n)
    for u, v in G.edges():
        M[u, v] = M[v, u] = 1
    return G.n - M.rank()


def brute_matchings(G: Graph) -> int:
    edges = G.edges()
    k = G.n // 2
    if G.n % 2:
        return 0
    count = 0
    for sub in itertools.combinations(edges, k):
        used = set()
        ok = True
        for u, v in sub:
            if u in used or v in used:
                ok = False
                break
            used.update((u, v))
        count += ok
    return count


def to_nx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    return g


def isomorphic(G1: Graph, G2: Graph) -> bool:
    return nx.is_isomorphic(to_nx(G1), to_nx(G2))


def polyhex_levels(eps_max: int) -> list[set]:
    """Breadth-first growth with set deduplication: all free polyhexes by size."""
    level = {((0, 0),)}
    out = [level]
    for _ in range(eps_max - 1):
        nxt = set()
        for cells in level:
            s = set(cells)
            for u in {u for c in cells for u in neighbours(c)} - s:
                nxt.add(canonical_cells(s | {u}))
        level = nxt
        out.append(level)
    return out


def benzenoid_classes(eps: int, levels=None) -> set:
    levels = levels or polyhex_levels(eps)
    return {c for c in levels[eps - 1] if not has_hole(c)}


def catafused_classes(eps: int, levels=None) -> set:
    return {c for c in benzenoid_classes(eps, levels) if internal_vertex_count(c) == 0}


def random_graph(rng: random.Random, n_max: int = 10, max_degree: int | None = None) -> Graph:
    n = rng.randint(1, n_max)
    p = rng.random()
    deg = [0] * n
    edges = []
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    for u, v in pairs:
        if rng.random() < p and (max_degree is None or (deg[u] < max_degree and deg[v] < max_degree)):
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return make_graph(n, edges)


def random_attachment(rng: random.Random, n: int, h_max: int = 8) -> tuple[int, ...]:
    h = rng.randint(2, h_max)
    return tuple(rng.randrange(n) for _ in range(h))
