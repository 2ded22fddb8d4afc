"""Undirected simple graphs: construction, BFS distances, diameter,
domination checks, generators, and the text file format.

Vertices are dense integer ids 0..n-1.  Edges are unordered pairs stored
as (u, v) tuples with u < v.  All operations are pure; graphs are never
mutated after construction.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import (
    DisconnectedInputError,
    GraphParseError,
    HeaderMismatchError,
    OutOfRangeError,
    SelfLoopError,
)

#: Sentinel distance for unreachable vertices in bfs_distances.
UNREACHABLE = -1

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Canonical (min, max) form of an undirected edge; rejects loops."""
    if u == v:
        raise SelfLoopError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def normalize_edge_set(edges: Iterable[Edge]) -> frozenset[Edge]:
    return frozenset(normalize_edge(u, v) for u, v in edges)


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...] = field(compare=False)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(
            (u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v
        )

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Open-neighborhood bitmasks, one int per vertex."""
        out = []
        for u in range(self.n):
            m = 0
            for v in self.adj[u]:
                m |= 1 << v
            out.append(m)
        return tuple(out)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | (1 << u) for u, m in enumerate(self.masks))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise OutOfRangeError(f"vertex {v} not in 0..{self.n - 1}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def from_edge_list(n: int, edges: Iterable[Edge]) -> Graph:
    """Build a simple graph; duplicate edges collapse, self-loops reject."""
    if n < 0:
        raise OutOfRangeError(f"negative vertex count {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRangeError(f"edge ({u},{v}) outside 0..{n - 1}")
        u, v = normalize_edge(u, v)
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(frozenset(a) for a in adj))


def add_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    """New graph with the given edges added; g is untouched."""
    return from_edge_list(g.n, list(g.edges) + list(edges))


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Unweighted distances from source; UNREACHABLE (-1) marks the rest."""
    g.check_vertex(source)
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return UNREACHABLE not in bfs_distances(g, 0)


def diameter(g: Graph) -> int | None:
    """Largest shortest-path length over all pairs; None if disconnected."""
    if g.n < 1:
        raise OutOfRangeError("diameter of the empty graph is undefined")
    best = 0
    for v in range(g.n):
        dist = bfs_distances(g, v)
        if UNREACHABLE in dist:
            return None
        best = max(best, max(dist))
    return best


def is_dominating(g: Graph, members: Iterable[int]) -> bool:
    """True iff every vertex outside the set has a neighbor in it."""
    s = set(members)
    for v in s:
        g.check_vertex(v)
    for v in range(g.n):
        if v in s:
            continue
        if not g.adj[v] & s:
            return False
    return True


def diameter_with_augmentation(g: Graph, s: Iterable[Edge]) -> int | None:
    """Diameter of g with the edge set s added; g is not mutated."""
    extra = normalize_edge_set(s)
    for u, v in extra:
        g.check_vertex(u)
        g.check_vertex(v)
    return diameter(add_edges(g, extra))


def augmented_masks(g: Graph, s: Iterable[Edge]) -> list[int]:
    """Open-neighborhood bitmasks of g with edge set s added."""
    masks = list(g.masks)
    for u, v in s:
        g.check_vertex(u)
        g.check_vertex(v)
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def all_within_two(masks: list[int] | tuple[int, ...]) -> bool:
    """True iff every vertex pair is adjacent or shares a neighbor."""
    n = len(masks)
    for u in range(n):
        mu = masks[u]
        for v in range(u + 1, n):
            if not ((mu >> v) & 1) and not (mu & masks[v]):
                return False
    return True


def random_connected_graph(n: int, p: float, seed: int) -> Graph:
    """Deterministic connected graph: random spanning tree over a random
    vertex permutation, then each remaining pair added with probability p."""
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise OutOfRangeError(f"edge probability {p} not in [0,1]")
    # fold (n, p, seed) into one integer so each triple gets its own stream
    rng = random.Random((seed * 1_000_003 + n) * (1 << 31) + int(p * (1 << 30)))
    perm = rng.sample(range(n), n)
    edges = set()
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add(normalize_edge(perm[i], perm[j]))
    for pair in itertools.combinations(range(n), 2):
        if pair not in edges and rng.random() < p:
            edges.add(pair)
    return from_edge_list(n, sorted(edges))


def serialize_graph(g: Graph) -> str:
    """Canonical text form: `p n m` header, then sorted `e u v` lines."""
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the `p`/`e` format; accepts comments, unsorted edges, u > v."""
    n = None
    declared_m = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate header", lineno)
            if len(parts) != 3:
                raise GraphParseError("header must be `p <n> <m>`", lineno)
            try:
                n, declared_m = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError("non-integer header fields", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphParseError("edge before header", lineno)
            if len(parts) != 3:
                raise GraphParseError("edge must be `e <u> <v>`", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError("non-integer edge endpoints", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRangeError(f"line {lineno}: edge ({u},{v}) outside 0..{n - 1}")
            edges.append(normalize_edge(u, v))
        else:
            raise GraphParseError(f"unknown record {parts[0]!r}", lineno)
    if n is None:
        raise GraphParseError("missing `p` header")
    g = from_edge_list(n, edges)
    if declared_m != g.m:
        raise HeaderMismatchError(
            f"header declares m={declared_m} but body has {g.m} distinct edges"
        )
    return g


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedInputError("input graph must be connected")
