"""Exact solvers for the three decision problems at desk scale.

* dominating set: branch on the closed neighborhood of the lowest
  undominated vertex, with an admissible coverage lower bound.
* diameter-D augmentation, D <= 2: branch-and-bound on uncovered pairs.
  Any 2-path joining an uncovered pair (u,v) uses an edge incident to u
  or to v, so branching on {u,v} plus all non-edges at u or at v is
  complete.  That argument breaks for D >= 3 (a new edge in the middle of
  a path can repair a pair without touching it), so larger targets fall
  back to exhaustive enumeration over non-edge subsets.
* diameter improvement: delegate with target = current diameter - 1.

All searches are deterministic: candidates are explored in lexicographic
order and the first witness wins.  A node-expansion cap raises
ResourceExceededError; the solvers never answer "no" on a cap hit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .errors import OutOfRangeError, ResourceExceededError
from .graph import (
    Edge,
    Graph,
    UNREACHABLE,
    add_edges,
    bfs_distances,
    diameter,
    diameter_with_augmentation,
    is_dominating,
    normalize_edge,
    normalize_edge_set,
    require_connected,
)

DEFAULT_NODE_CAP = 5_000_000


@dataclass(frozen=True)
class SolveResult:
    answer: bool
    witness: tuple | None
    nodes_expanded: int
    elapsed: float


def solve_dominating_set(
    g: Graph, k: int, node_cap: int = DEFAULT_NODE_CAP
) -> SolveResult:
    """Decide whether g has a dominating set of size at most k."""
    require_connected(g)
    if k < 0:
        raise OutOfRangeError(f"budget k must be >= 0, got {k}")
    start = time.perf_counter()
    n = g.n
    full = (1 << n) - 1
    closed = g.closed_masks
    max_cover = max(bin(m).count("1") for m in closed)
    nodes = 0
    found: list[tuple[int, ...]] = []

    def rec(chosen: list[int], dominated: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise ResourceExceededError(f"dominating-set search passed {node_cap} nodes")
        if dominated == full:
            found.append(tuple(chosen))
            return True
        if len(chosen) >= k:
            return False
        remaining = bin(full ^ dominated).count("1")
        if len(chosen) + (remaining + max_cover - 1) // max_cover > k:
            return False
        # lowest undominated vertex; some member of its closed nbhd is needed
        undominated = full ^ dominated
        v = (undominated & -undominated).bit_length() - 1
        for c in sorted({v} | set(g.adj[v])):
            chosen.append(c)
            if rec(chosen, dominated | closed[c]):
                return True
            chosen.pop()
        return False

    answer = rec([], 0)
    witness = tuple(sorted(found[0])) if answer else None
    if witness is not None:
        assert is_dominating(g, witness) and len(witness) <= k
    return SolveResult(answer, witness, nodes, time.perf_counter() - start)


def uncovered_pairs(g: Graph, s, d_target: int) -> list[Edge]:
    """Vertex pairs farther apart than d_target in g plus s, sorted."""
    h = add_edges(g, normalize_edge_set(s))
    pairs = []
    for u in range(h.n):
        dist = bfs_distances(h, u)
        for v in range(u + 1, h.n):
            if dist[v] == UNREACHABLE or dist[v] > d_target:
                pairs.append((u, v))
    return pairs


def _uncovered_fast(masks, n: int, d_target: int) -> list[Edge]:
    """Uncovered pairs for d_target in {1, 2} straight from bitmasks."""
    pairs = []
    for u in range(n):
        mu = masks[u]
        for v in range(u + 1, n):
            if (mu >> v) & 1:
                continue
            if d_target == 2 and (mu & masks[v]):
                continue
            pairs.append((u, v))
    return pairs


def _disjoint_pair_bound(pairs: list[Edge]) -> int:
    """ceil(t/2) where t = greedily chosen endpoint-disjoint uncovered
    pairs; one added edge touches at most two of them."""
    used = 0
    count = 0
    for u, v in pairs:
        bits = (1 << u) | (1 << v)
        if not (used & bits):
            used |= bits
            count += 1
    return (count + 1) // 2


def solve_diameter_augmentation(
    g: Graph,
    k: int,
    d_target: int = 2,
    node_cap: int = DEFAULT_NODE_CAP,
) -> SolveResult:
    """Decide whether at most k added edges bring g to diameter <= d_target."""
    require_connected(g)
    if k < 0:
        raise OutOfRangeError(f"budget k must be >= 0, got {k}")
    if d_target < 1:
        raise OutOfRangeError(f"target diameter must be >= 1, got {d_target}")
    start = time.perf_counter()

    if d_target >= 3:
        answer, witness, nodes = _solve_augmentation_exhaustive(
            g, k, d_target, node_cap
        )
    else:
        answer, witness, nodes = _solve_augmentation_branching(
            g, k, d_target, node_cap
        )
    if witness is not None:
        d = diameter_with_augmentation(g, witness)
        assert d is not None and d <= d_target and len(witness) <= k
    return SolveResult(answer, witness, nodes, time.perf_counter() - start)


def _solve_augmentation_branching(g: Graph, k: int, d_target: int, node_cap: int):
    n = g.n
    nodes = 0
    found: list[tuple[Edge, ...]] = []

    def candidates(pair: Edge, masks, forbidden) -> list[Edge]:
        u, v = pair
        cands = {pair}
        for w in range(n):
            if w != u and not (masks[u] >> w) & 1:
                cands.add(normalize_edge(u, w))
            if w != v and not (masks[v] >> w) & 1:
                cands.add(normalize_edge(v, w))
        return sorted(c for c in cands if c not in forbidden)

    def rec(masks, added: list[Edge], forbidden: frozenset[Edge]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise ResourceExceededError(f"augmentation search passed {node_cap} nodes")
        pairs = _uncovered_fast(masks, n, d_target)
        if not pairs:
            found.append(tuple(sorted(added)))
            return True
        if len(added) >= k:
            return False
        if len(added) + _disjoint_pair_bound(pairs) > k:
            return False
        # branch on the uncovered pair with the fewest repair candidates
        best_pair = None
        best_cands = None
        for pr in pairs:
            cs = candidates(pr, masks, forbidden)
            if not cs:
                return False
            if best_cands is None or len(cs) < len(best_cands):
                best_pair, best_cands = pr, cs
        excluded = set(forbidden)
        for e in best_cands:
            u, v = e
            new_masks = list(masks)
            new_masks[u] |= 1 << v
            new_masks[v] |= 1 << u
            added.append(e)
            if rec(new_masks, added, frozenset(excluded)):
                return True
            added.pop()
            excluded.add(e)
        return False

    answer = rec(list(g.masks), [], frozenset())
    witness = found[0] if answer else None
    return answer, witness, nodes


def _solve_augmentation_exhaustive(g: Graph, k: int, d_target: int, node_cap: int):
    existing = set(g.edges)
    non_edges = [
        e for e in combinations(range(g.n), 2) if e not in existing
    ]
    nodes = 0
    for size in range(0, min(k, len(non_edges)) + 1):
        for subset in combinations(non_edges, size):
            nodes += 1
            if nodes > node_cap:
                raise ResourceExceededError(
                    f"exhaustive augmentation search passed {node_cap} subsets"
                )
            d = diameter_with_augmentation(g, subset)
            if d is not None and d <= d_target:
                return True, subset, nodes
    return False, None, nodes


def solve_diameter_improvement(
    g: Graph, k: int, node_cap: int = DEFAULT_NODE_CAP
) -> SolveResult:
    """Decide whether at most k added edges strictly lower the diameter."""
    require_connected(g)
    if k < 0:
        raise OutOfRangeError(f"budget k must be >= 0, got {k}")
    start = time.perf_counter()
    d0 = diameter(g)
    if d0 is None or d0 <= 1:
        # diameter 1 (or a single vertex) cannot improve
        return SolveResult(False, None, 0, time.perf_counter() - start)
    inner = solve_diameter_augmentation(g, k, d0 - 1, node_cap)
    return SolveResult(
        inner.answer, inner.witness, inner.nodes_expanded,
        time.perf_counter() - start,
    )


def minimum_dominating_set_size(g: Graph, node_cap: int = DEFAULT_NODE_CAP) -> int:
    """gamma(g) by increasing the budget until the solver says yes."""
    for k in range(g.n + 1):
        if solve_dominating_set(g, k, node_cap).answer:
            return k
    raise AssertionError("V itself always dominates")


def minimum_augmentation_size(
    g: Graph, k_max: int, d_target: int = 2, node_cap: int = DEFAULT_NODE_CAP
) -> tuple[int | None, tuple | None]:
    """Smallest augmenting size <= k_max reaching d_target, with witness;
    (None, None) if no budget up to k_max suffices."""
    for k in range(k_max + 1):
        res = solve_diameter_augmentation(g, k, d_target, node_cap)
        if res.answer:
            return k, res.witness
    return None, None
