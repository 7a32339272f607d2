from collections import deque
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from supportrank import (
    InvalidNetworkError,
    NetworkSyntaxError,
    PhyloNetwork,
    generate_random,
    is_tree_based,
    parse_network,
    serialize,
    validate,
)
from supportrank.fixtures import table1_fixture
from supportrank.network import generate_random_with_planted, parse_raw
from supportrank.oracle import brute_force_support_trees, check_admissible

from helpers import corpus


def clauses(text):
    return {v.clause for v in validate(parse_raw(text))}


def test_two_leaf_tree_with_pendant_root():
    net = parse_network("rho a 1\na x 1\na y 1")
    assert net.num_vertices == 4
    assert net.num_arcs == 3
    assert net.labels[net.root] == "rho"
    assert {net.labels[v] for v in net.leaves} == {"x", "y"}


def test_single_arc_network_is_valid():
    assert validate(parse_raw("r x 1")) == []
    net = parse_network("r x 1")
    assert net.out_degree(net.root) == 1


def test_vertex_with_two_in_two_out_is_rejected():
    text = "r a 1\nr b 1\na c 1\nb c 1\nc x 1\nc y 1"
    assert "vertex degrees" in clauses(text)
    with pytest.raises(InvalidNetworkError, match="structural violation: vertex degrees"):
        parse_network(text)


def test_two_roots_named():
    assert "unique root" in clauses("r1 a 1\nr2 a 1\na x 1")


def test_cycle_named():
    text = "r a 1\na b 1\nb c 1\nc a 1\nb x 1\nc y 1"
    assert "acyclicity" in clauses(text)


def test_every_violation_reported():
    # duplicate arc, weight out of range and a bad degree all at once
    found = clauses("r a 1\nr a 1/2\na x 2\na y 1\na z 1")
    assert {"simple graph", "weight range", "vertex degrees"} <= found


def test_self_loop_and_root_degree():
    assert "simple graph" in clauses("r a 1\na a 1\na x 1")
    assert "root out-degree" in clauses("r a 1\nr b 1\nr c 1")


def test_no_leaves():
    assert "leaves" in clauses("r a 1\na r 1")


@pytest.mark.parametrize("bad, lineno", [
    ("r a 1\nr b\n", 2),
    ("# header\n\nr a 1 extra\n", 3),
    ("r a one\n", 1),
    ("r a 1/0\n", 1),
])
def test_syntax_errors_carry_line_numbers(bad, lineno):
    with pytest.raises(NetworkSyntaxError) as info:
        parse_network(bad)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_weights_parse_exactly():
    net = parse_network("r a 0.25  # comment\na x 1/3\na y 1.0\n")
    assert net.weights == (Fraction(1, 4), Fraction(1, 3), Fraction(1))


def test_zero_weight_rejected():
    assert "weight range" in clauses("r a 0\na x 1\na y 1")


def test_arc_order_is_document_order():
    net = parse_network("a x 1\nr a 1/2\na y 1/4\n")
    assert [net.arc_label(i) for i in range(3)] == ["a->x", "r->a", "a->y"]


def test_table1_fixture_is_valid_with_two_reticulations_per_crown():
    net = table1_fixture()
    assert len(net.reticulations()) == 6


def test_generator_cherry_has_one_support_tree():
    net = generate_random(2, 0, 12345)
    assert net.num_arcs == 2
    assert len(brute_force_support_trees(net)) == 1


def test_generator_output_is_tree_based():
    net = generate_random(5, 3, 7)
    assert is_tree_based(net)
    assert brute_force_support_trees(net)


def test_generator_is_deterministic():
    assert serialize(generate_random(4, 2, 1)) == serialize(generate_random(4, 2, 1))
    assert serialize(generate_random(4, 2, 1)) != serialize(generate_random(4, 2, 2))


def test_generator_rejects_single_leaf():
    with pytest.raises(ValueError):
        generate_random(1, 0, 0)


def test_round_trip_over_corpus():
    for net in corpus()[:300]:
        again = parse_network(serialize(net))
        assert again == net
        assert again.weights == net.weights


def _reachable_both_ways(net):
    down = {net.root}
    queue = deque([net.root])
    while queue:
        v = queue.popleft()
        for a in net.out_arcs[v]:
            h = net.arcs[a].head
            if h not in down:
                down.add(h)
                queue.append(h)
    up = set(net.leaves)
    queue = deque(net.leaves)
    while queue:
        v = queue.popleft()
        for a in net.in_arcs[v]:
            t = net.arcs[a].tail
            if t not in up:
                up.add(t)
                queue.append(t)
    return down, up


@settings(max_examples=200, deadline=None)
@given(leaves=st.integers(2, 8), extra=st.integers(0, 6), seed=st.integers(0, 2**64 - 1))
def test_generated_networks_are_valid_and_keep_the_planted_tree(leaves, extra, seed):
    net, planted = generate_random_with_planted(leaves, extra, seed)
    assert validate(net.raw_arcs()) == []
    assert check_admissible(net, planted).admissible
    assert len(net.leaves) == leaves
    # every vertex lies on a root-to-leaf path
    down, up = _reachable_both_ways(net)
    assert down == up == set(range(net.num_vertices))


@settings(max_examples=100, deadline=None)
@given(leaves=st.integers(2, 6), extra=st.integers(0, 4), seed=st.integers(0, 10**6))
def test_serialize_round_trip_property(leaves, extra, seed):
    net = generate_random(leaves, extra, seed)
    text = serialize(net)
    assert serialize(parse_network(text)) == text
    assert PhyloNetwork.from_arcs(net.raw_arcs()) == net
