import random

import pytest

from diam2aug.errors import (
    NotAugmentingError,
    NotProperError,
    RuleUnsoundError,
)
from diam2aug.gadget import build_gadget, forward_map, pair_index
from diam2aug.graph import normalize_edge, normalize_edge_set, random_connected_graph
from diam2aug.harness import base_graph, sample_augmenting_set
from diam2aug.swaprules import (
    apply_rule,
    extract_dominating_set,
    is_augmenting,
    is_proper,
    normalize,
    partition_u,
    trace_as_dict,
    uncovered_two,
)

from oracles import oracle_is_dominating


def e(u, v):
    return normalize_edge(u, v)


def test_partition_empty(gadget_p3):
    part = partition_u(gadget_p3, set())
    assert part.u_x == frozenset()
    assert part.u_minus == frozenset()
    assert part.u_plus == frozenset(gadget_p3.u_vertices)


def test_partition_direct_edge(gadget_p3):
    x = gadget_p3.x_id
    part = partition_u(gadget_p3, {e(x, 1)})
    assert part.u_x == frozenset({1})
    assert part.u_minus == frozenset()


def test_partition_y_edge(gadget_p3):
    x = gadget_p3.x_id
    y = pair_index(gadget_p3, 0, gadget_p3.u2_of(2))
    part = partition_u(gadget_p3, {e(x, y)})
    assert part.u_minus == frozenset({0, gadget_p3.u2_of(2)})
    assert part.u_x == frozenset()


def test_rule1(gadget_p3):
    x, z = gadget_p3.x_id, gadget_p3.z_id
    new_s, step = apply_rule(gadget_p3, {e(z, 0)}, 1)
    assert new_s == frozenset({e(x, 0)})
    assert step.rule == 1 and step.removed == frozenset({e(z, 0)})


def test_rule2(gadget_p3):
    x = gadget_p3.x_id
    y = pair_index(gadget_p3, 0, 1)  # 0 and 1 adjacent in the U1 copy
    new_s, step = apply_rule(gadget_p3, {e(x, y)}, 2)
    assert new_s == frozenset({e(x, 0)})


def test_rule5(gadget_p3):
    x = gadget_p3.x_id
    y_ab = pair_index(gadget_p3, 0, 1)
    y_bc = pair_index(gadget_p3, 1, 2)
    y_ac = pair_index(gadget_p3, 0, 2)
    new_s, step = apply_rule(gadget_p3, {e(x, y_ab), e(x, y_bc)}, 5)
    assert new_s == frozenset({e(x, y_ac), e(x, 1)})


def test_rule7(gadget_p3):
    x = gadget_p3.x_id
    u2 = gadget_p3.u2_of(1)
    s = {e(x, u2)}
    assert is_augmenting(gadget_p3, s)
    new_s, step = apply_rule(gadget_p3, s, 7)
    assert new_s == frozenset({e(x, 1)})
    assert is_augmenting(gadget_p3, new_s)


def test_rule_no_match(gadget_p3):
    x = gadget_p3.x_id
    for rule in range(8):
        assert apply_rule(gadget_p3, {e(x, 1)}, rule) is None


def test_rule0_drops_duplicates_and_noise(gadget_p3):
    x, z = gadget_p3.x_id, gadget_p3.z_id
    s = {e(x, 1), e(x, z), e(0, gadget_p3.u2_of(2))}
    new_s, step = apply_rule(gadget_p3, s, 0)
    assert step.added == frozenset()
    assert len(new_s) == 2
    final, trace = normalize(gadget_p3, s)
    assert final == frozenset({e(x, 1)})
    assert {st.rule for st in trace.steps} == {0}


def test_normalize_fixed_point(gadget_p3):
    x = gadget_p3.x_id
    final, trace = normalize(gadget_p3, {e(x, 1)})
    assert final == frozenset({e(x, 1)})
    assert trace.steps == ()


def test_normalize_z_edge(gadget_p3):
    x, z = gadget_p3.x_id, gadget_p3.z_id
    final, trace = normalize(gadget_p3, {e(z, 1)})
    assert final == frozenset({e(x, 1)})
    assert [st.rule for st in trace.steps] == [1]


def test_normalize_u2_edge(gadget_p3):
    x = gadget_p3.x_id
    final, trace = normalize(gadget_p3, {e(x, gadget_p3.u2_of(1))})
    assert final == frozenset({e(x, 1)})
    assert [st.rule for st in trace.steps] == [7]


def test_normalize_not_augmenting(gadget_p3):
    with pytest.raises(NotAugmentingError):
        normalize(gadget_p3, set())


def test_extract(gadget_p3, c5):
    x = gadget_p3.x_id
    assert extract_dominating_set(gadget_p3, {e(x, 1)}) == frozenset({1})
    gc5 = build_gadget(c5)
    xc = gc5.x_id
    s = {e(xc, 0), e(xc, 3)}
    dom = extract_dominating_set(gc5, s)
    assert dom == frozenset({0, 3})
    assert oracle_is_dominating(5, c5.edges, dom)


def test_extract_errors(gadget_p3, c5):
    x = gadget_p3.x_id
    with pytest.raises(NotProperError):
        extract_dominating_set(gadget_p3, {e(x, gadget_p3.u2_of(0))})
    gc5 = build_gadget(c5)
    with pytest.raises(NotAugmentingError):
        extract_dominating_set(gc5, {e(gc5.x_id, 0)})  # gamma(C5)=2
    with pytest.raises(NotAugmentingError):
        extract_dominating_set(build_gadget_k1(), frozenset())


def build_gadget_k1():
    from diam2aug.graph import from_edge_list

    return build_gadget(from_edge_list(1, []))


def test_rule0_unsound_input_is_reported(gadget_p3):
    # All coverage of u1(2) and u2(2) rides on edges incident to neither
    # x nor z; deleting them breaks diameter 2, and the engine must say so.
    x = gadget_p3.x_id
    s = {e(x, 0), e(0, 2), e(0, gadget_p3.u2_of(2))}
    assert is_augmenting(gadget_p3, s)
    with pytest.raises(RuleUnsoundError) as exc:
        normalize(gadget_p3, s)
    assert exc.value.trace is not None


def _measure(gadget, s):
    """Lexicographic progress measure the rules must strictly decrease."""
    x, z = gadget.x_id, gadget.z_id
    other = sum(1 for edge in s if x not in edge and z not in edge)
    z_cnt = sum(1 for edge in s if z in edge)
    x_y = sum(1 for u, v in s if v == x and u in gadget.y_to_pair)
    x_u2 = sum(1 for u, v in s if v == x and gadget.roles[u] == "U2")
    return (other, z_cnt, x_y, x_u2)


def test_sampled_sets_normalize_end_to_end():
    rng = random.Random(7)
    for seed in range(12):
        g1 = random_connected_graph(rng.randint(1, 5), 0.4, seed)
        gadget = build_gadget(g1)
        for trial in range(4):
            s = sample_augmenting_set(gadget, rng)
            final, trace = normalize(gadget, s)
            assert is_proper(gadget, final)
            assert len(final) <= len(s)
            assert not partition_u(gadget, final).u_minus
            assert not uncovered_two(gadget, final)
            dom = extract_dominating_set(gadget, final)
            assert oracle_is_dominating(g1.n, g1.edges, dom)
            assert len(dom) <= len(s)
            # replay and monotone measure
            assert trace.replay() == final
            cur = normalize_edge_set(s)
            for step in trace.steps:
                nxt = (cur - step.removed) | step.added
                assert _measure(gadget, nxt) < _measure(gadget, cur)
                cur = nxt


def test_trace_export(gadget_p3):
    z = gadget_p3.z_id
    final, trace = normalize(gadget_p3, {e(z, 1)})
    d = trace_as_dict(trace)
    assert d["steps"][0]["rule"] == 1
    assert d["steps"][0]["diameter_after"] == 2
    assert d["final"] == [[1, gadget_p3.x_id]]


def test_backward_direction_from_solver_witnesses(c5):
    from diam2aug.solvers import solve_diameter_augmentation

    gadget = build_gadget(c5)
    res = solve_diameter_augmentation(gadget.graph, 2, 2)
    assert res.answer
    final, trace = normalize(gadget, res.witness)
    dom = extract_dominating_set(gadget, final)
    assert oracle_is_dominating(5, c5.edges, dom)
    assert len(dom) <= 2
