"""Independent brute-force oracles for the test suite.

These deliberately avoid the library's BFS/solver code paths: plain dict
adjacency, textbook BFS, and exhaustive subset enumeration, so that an
agreement between solver and oracle actually means something.
"""

from __future__ import annotations

import itertools
from collections import deque


def edge_adjacency(n: int, edges) -> dict[int, set[int]]:
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def oracle_distances(n: int, edges, source: int) -> dict[int, int]:
    adj = edge_adjacency(n, edges)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def oracle_diameter(n: int, edges) -> int | None:
    best = 0
    for s in range(n):
        dist = oracle_distances(n, edges, s)
        if len(dist) < n:
            return None
        best = max(best, max(dist.values()))
    return best


def oracle_is_dominating(n: int, edges, members) -> bool:
    adj = edge_adjacency(n, edges)
    s = set(members)
    return all(v in s or adj[v] & s for v in range(n))


def brute_gamma(g) -> int:
    """Minimum dominating set size by subset enumeration."""
    for size in range(g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            if oracle_is_dominating(g.n, g.edges, sub):
                return size
    raise AssertionError("V dominates")


def brute_has_dominating(g, k: int) -> bool:
    return brute_gamma(g) <= k


def brute_min_aug(g, k_max: int, target: int = 2) -> int | None:
    """Smallest number of added edges (<= k_max) reaching the target
    diameter, by enumerating all non-edge subsets."""
    existing = set(g.edges)
    non_edges = [
        e for e in itertools.combinations(range(g.n), 2) if e not in existing
    ]
    for size in range(min(k_max, len(non_edges)) + 1):
        for sub in itertools.combinations(non_edges, size):
            d = oracle_diameter(g.n, list(existing) + list(sub))
            if d is not None and d <= target:
                return size
    return None


def atlas_connected(max_n: int = 7):
    """All connected graphs with up to max_n vertices, one per isomorphism
    class, via the networkx graph atlas (complete through 7 vertices)."""
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    from diam2aug.graph import from_edge_list

    out = []
    for g in graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(g):
            mapping = {v: i for i, v in enumerate(sorted(g.nodes()))}
            out.append(
                from_edge_list(n, [(mapping[u], mapping[v]) for u, v in g.edges()])
            )
    return out
