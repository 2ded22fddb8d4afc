"""Edge-swap normalization: turn an arbitrary diameter-2 augmenting set of
a gadget into a proper one (all edges from x into U1) without growing it,
then read off a dominating set of the original graph.

Rules, applied in the order 0, 1, (2..6 with restart), 7:
  0  drop an edge incident to neither x nor z, or already present in the
     gadget (such edges are claimed redundant; the per-step check below
     catches any input where that claim fails)
  1  {z,w}            -> {x,w}
  2  {x,y(a,b)}, a~b  -> {x,a}
  3  {x,y(a,b)}, a in U_x                     -> {x,b}
  4  {x,y(a,b)}, a adjacent to some c in U_x  -> {x,b}
  5  {x,y(a,b)} and {x,y(b,c)}  -> {x,y(a,c)} and {x,b}
  6  {x,y(a,b)} and {x,y(c,d)}, a~c, b != d   -> {x,a} and {x,y(b,d)}
  7  {x,u}, u in U2   -> {x, twin(u)}

Every application re-checks that the swap did not worsen coverage: the set
of vertex pairs beyond distance 2 must never grow (equivalently, a swap can
never increase the diameter).  A failure raises RuleUnsoundError rather
than being papered over, since the swaps' safety is exactly the claim under
test.  The entry set need not already achieve diameter 2 -- a lone z-edge,
say, becomes augmenting only after Rule 1 -- but the final set must, or
NotAugmentingError is raised.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import (
    NonTerminationError,
    NotAugmentingError,
    NotProperError,
    RuleUnsoundError,
)
from .gadget import ROLE_U1, ROLE_U2, GadgetGraph
from .graph import (
    Edge,
    all_within_two,
    augmented_masks,
    normalize_edge,
    normalize_edge_set,
)

RULE_IDS = (0, 1, 2, 3, 4, 5, 6, 7)


@dataclass(frozen=True)
class UPartition:
    u_x: frozenset[int]
    u_minus: frozenset[int]
    u_plus: frozenset[int]


@dataclass(frozen=True)
class SwapStep:
    rule: int
    removed: frozenset[Edge]
    added: frozenset[Edge]
    diameter_after: int


@dataclass(frozen=True)
class SwapTrace:
    initial: frozenset[Edge]
    steps: tuple[SwapStep, ...]
    final: frozenset[Edge]

    def replay(self) -> frozenset[Edge]:
        s = self.initial
        for step in self.steps:
            s = (s - step.removed) | step.added
        return s


def is_augmenting(gadget: GadgetGraph, s: Iterable[Edge]) -> bool:
    """True iff the gadget plus s has diameter at most 2."""
    return all_within_two(augmented_masks(gadget.graph, s))


def uncovered_two(gadget: GadgetGraph, s: Iterable[Edge]) -> frozenset[Edge]:
    """Vertex pairs of the gadget beyond distance 2 once s is added."""
    masks = augmented_masks(gadget.graph, s)
    n = gadget.graph.n
    out = set()
    for u in range(n):
        mu = masks[u]
        for v in range(u + 1, n):
            if not ((mu >> v) & 1) and not (mu & masks[v]):
                out.add((u, v))
    return frozenset(out)


def is_proper(gadget: GadgetGraph, s: Iterable[Edge]) -> bool:
    """True iff every edge joins x to a U1 vertex."""
    x = gadget.x_id
    for u, v in normalize_edge_set(s):
        if v != x or gadget.roles[u] != ROLE_U1:
            return False
    return True


def partition_u(gadget: GadgetGraph, s: Iterable[Edge]) -> UPartition:
    """Split U1 u U2 by how s connects x to each vertex: directly (U_x),
    through an x-Y edge (U-), or neither (U+)."""
    s = normalize_edge_set(s)
    for u, v in s:
        gadget.graph.check_vertex(u)
        gadget.graph.check_vertex(v)
    x = gadget.x_id
    u_x = set()
    u_minus = set()
    for u, v in s:
        if v == x and gadget.is_u(u):
            u_x.add(u)
    for u, v in s:
        if v == x and u in gadget.y_to_pair:
            u_minus.update(gadget.y_to_pair[u])
    u_minus -= u_x
    u_plus = set(gadget.u_vertices) - u_x - u_minus
    return UPartition(frozenset(u_x), frozenset(u_minus), frozenset(u_plus))


def _x_y_edges(gadget: GadgetGraph, s: frozenset[Edge]) -> list[tuple[int, Edge]]:
    """(y-id, edge) for every x-Y edge of s, sorted by y id."""
    x = gadget.x_id
    hits = [(u, (u, v)) for u, v in s if v == x and u in gadget.y_to_pair]
    return sorted(hits)


def _match(gadget: GadgetGraph, s: frozenset[Edge], rule: int):
    """First match of the rule's pattern, or None.  Deterministic: edges in
    sorted order, candidate endpoints in ascending vertex-id order."""
    g2 = gadget.graph
    x, z = gadget.x_id, gadget.z_id

    if rule == 0:
        for e in sorted(s):
            u, v = e
            if g2.has_edge(u, v) or (x not in e and z not in e):
                return frozenset({e}), frozenset()
        return None

    if rule == 1:
        for e in sorted(s):
            if z in e and not g2.has_edge(*e):
                w = e[0] if e[1] == z else e[1]
                return frozenset({e}), frozenset({normalize_edge(x, w)})
        return None

    if rule in (2, 3, 4):
        u_x = partition_u(gadget, s).u_x
        for y, e in _x_y_edges(gadget, s):
            a, b = gadget.y_to_pair[y]  # a < b
            if rule == 2:
                if g2.has_edge(a, b):
                    return frozenset({e}), frozenset({normalize_edge(x, a)})
            elif rule == 3:
                if a in u_x:
                    return frozenset({e}), frozenset({normalize_edge(x, b)})
                if b in u_x:
                    return frozenset({e}), frozenset({normalize_edge(x, a)})
            else:
                if g2.adj[a] & u_x:
                    return frozenset({e}), frozenset({normalize_edge(x, b)})
                if g2.adj[b] & u_x:
                    return frozenset({e}), frozenset({normalize_edge(x, a)})
        return None

    if rule == 5:
        hits = _x_y_edges(gadget, s)
        for (y1, e1), (y2, e2) in combinations(hits, 2):
            p1 = set(gadget.y_to_pair[y1])
            p2 = set(gadget.y_to_pair[y2])
            shared = p1 & p2
            if len(shared) == 1:
                b = shared.pop()
                (a,) = p1 - {b}
                (c,) = p2 - {b}
                y_ac = gadget.pair_to_y[normalize_edge(a, c)]
                return (
                    frozenset({e1, e2}),
                    frozenset({normalize_edge(x, y_ac), normalize_edge(x, b)}),
                )
        return None

    if rule == 6:
        hits = _x_y_edges(gadget, s)
        for (y1, e1), (y2, e2) in combinations(hits, 2):
            for a in gadget.y_to_pair[y1]:
                for c in gadget.y_to_pair[y2]:
                    if not g2.has_edge(a, c):
                        continue
                    (b,) = set(gadget.y_to_pair[y1]) - {a}
                    (d,) = set(gadget.y_to_pair[y2]) - {c}
                    if b == d:
                        continue  # shared endpoint; Rule 5 territory
                    y_bd = gadget.pair_to_y[normalize_edge(b, d)]
                    return (
                        frozenset({e1, e2}),
                        frozenset({normalize_edge(x, a), normalize_edge(x, y_bd)}),
                    )
        return None

    if rule == 7:
        for e in sorted(s):
            u, v = e
            if v == x and gadget.roles[u] == ROLE_U2:
                return frozenset({e}), frozenset({normalize_edge(x, gadget.twin[u])})
        return None

    raise ValueError(f"unknown rule id {rule}")


def _diameter_after(gadget: GadgetGraph, s: frozenset[Edge]) -> int:
    masks = augmented_masks(gadget.graph, s)
    if all_within_two(masks):
        full = (1 << gadget.graph.n) - 1
        if all(m | (1 << v) == full for v, m in enumerate(masks)):
            return 1
        return 2
    from .graph import diameter_with_augmentation

    d = diameter_with_augmentation(gadget.graph, s)
    return -1 if d is None else d


def apply_rule(
    gadget: GadgetGraph, s: Iterable[Edge], rule: int
) -> tuple[frozenset[Edge], SwapStep] | None:
    """Apply one rule if its pattern occurs in s; None if it does not.

    Raises RuleUnsoundError when the swap worsens coverage: some pair that
    was within distance 2 no longer is (the claimed safety of the swap
    fails on this input)."""
    s = normalize_edge_set(s)
    match = _match(gadget, s, rule)
    if match is None:
        return None
    removed, added = match
    new_s = (s - removed) | added
    d_after = _diameter_after(gadget, new_s)
    step = SwapStep(rule=rule, removed=removed, added=added, diameter_after=d_after)
    newly_uncovered = uncovered_two(gadget, new_s) - uncovered_two(gadget, s)
    if newly_uncovered:
        raise RuleUnsoundError(
            f"rule {rule} uncovered pairs {sorted(newly_uncovered)} "
            f"(removed {sorted(removed)}, added {sorted(added)}, "
            f"diameter now {d_after})",
            step=step,
        )
    if len(new_s) > len(s):
        raise RuleUnsoundError(f"rule {rule} grew the edge set", step=step)
    return new_s, step


def normalize(
    gadget: GadgetGraph, s: Iterable[Edge]
) -> tuple[frozenset[Edge], SwapTrace]:
    """Run the rules to a fixed point; return the proper set and the trace."""
    initial = normalize_edge_set(s)
    for u, v in initial:
        gadget.graph.check_vertex(u)
        gadget.graph.check_vertex(v)
    budget = 4 * (len(initial) + gadget.graph.n) ** 2
    steps: list[SwapStep] = []
    current = initial

    def run(rule: int) -> bool:
        nonlocal current, budget
        try:
            result = apply_rule(gadget, current, rule)
        except RuleUnsoundError as exc:
            exc.trace = SwapTrace(initial, tuple(steps), current)
            raise
        if result is None:
            return False
        current, step = result
        steps.append(step)
        budget -= 1
        if budget < 0:
            raise NonTerminationError(
                f"step budget exhausted after {len(steps)} swaps"
            )
        return True

    while run(0):
        pass
    while run(1):
        pass
    progressed = True
    while progressed:
        progressed = False
        for rule in (2, 3, 4, 5, 6):
            if run(rule):
                progressed = True
                break  # return to Rule 2 after any hit
    while run(7):
        pass

    trace = SwapTrace(initial, tuple(steps), current)
    if not is_augmenting(gadget, current):
        raise NotAugmentingError(
            "edge set does not bring the gadget to diameter <= 2, "
            "even after normalization"
        )
    if not is_proper(gadget, current):
        raise RuleUnsoundError(
            "rules reached a fixed point that is not proper; this "
            "contradicts the emptiness of U- at the fixed point",
            trace=trace,
        )
    return current, trace


def extract_dominating_set(
    gadget: GadgetGraph, proper_s: Iterable[Edge]
) -> frozenset[int]:
    """Base vertices of the U1 endpoints of a proper augmenting set."""
    proper_s = normalize_edge_set(proper_s)
    if not is_proper(gadget, proper_s):
        raise NotProperError("edge set has an edge not of the form {x, u1}")
    if not is_augmenting(gadget, proper_s):
        raise NotAugmentingError(
            "proper edge set does not achieve diameter <= 2"
        )
    return frozenset(gadget.base[u] for u, _x in proper_s)


def trace_as_dict(trace: SwapTrace) -> dict:
    return {
        "initial": [list(e) for e in sorted(trace.initial)],
        "final": [list(e) for e in sorted(trace.final)],
        "steps": [
            {
                "rule": st.rule,
                "removed": [list(e) for e in sorted(st.removed)],
                "added": [list(e) for e in sorted(st.added)],
                "diameter_after": st.diameter_after,
            }
            for st in trace.steps
        ],
    }


def trace_to_json(trace: SwapTrace) -> str:
    return json.dumps(trace_as_dict(trace), indent=2) + "\n"
