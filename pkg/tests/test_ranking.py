from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import assume, given, settings, strategies as st

from supportrank import (
    NotTreeBasedError,
    RankOutOfRangeError,
    SupportTreeSpace,
    count_support_trees,
    enumerate_all,
    generate_random,
    parent,
    parse_network,
    top_k,
)
from supportrank.fixtures import table1_fixture, wfence_network
from supportrank.oracle import brute_force_support_trees, brute_force_top_k, check_admissible
from supportrank.ranking import first_index

from helpers import corpus

TREE = "r a 1/2\nr b 1\na x 1\na y 3/4\nb z 1\nb w 1/4\n"


@pytest.fixture(scope="module")
def f1():
    return SupportTreeSpace(table1_fixture())


def lift(short):
    # fixture trails beyond the three crowns all have a single choice
    return tuple(short) + (1,) * 7


def test_parent_examples():
    assert parent((1, 1, 1, 5, 8)) == (1, 1, 1, 4, 8)
    assert parent((2, 1, 1)) == (1, 1, 1)
    assert parent((1, 2, 2)) == (1, 1, 2)
    assert first_index((1, 1, 1, 5, 8)) == 3


def test_parent_of_root_rejected():
    with pytest.raises(ValueError):
        parent((1, 1, 1))


def test_counts():
    assert count_support_trees(parse_network(TREE)) == 1
    assert count_support_trees(table1_fixture()) == 8
    assert count_support_trees(wfence_network(3)) == 0


def test_count_at_least_short_circuits(f1):
    assert f1.count_at_least(8)
    assert not f1.count_at_least(9)


def test_child_star_examples(f1):
    assert f1.child_star(lift((1, 1, 1))) == lift((1, 1, 2))
    assert f1.child_star(lift((1, 1, 2))) == lift((2, 1, 2))
    assert f1.child_star(lift((2, 1, 1))) is None


def test_sibling_star_examples(f1):
    assert f1.sibling_star(lift((1, 1, 2))) == lift((2, 1, 1))
    assert f1.sibling_star(lift((2, 1, 1))) == lift((1, 2, 1))
    assert f1.sibling_star(lift((1, 2, 1))) is None


def test_sibling_star_of_root_rejected(f1):
    with pytest.raises(ValueError):
        f1.sibling_star(f1.root)


def test_fixture_order(f1):
    got = [t.rank_vector[:3] for t in f1.enumerator()]
    assert got == [(1, 1, 1), (1, 1, 2), (2, 1, 1), (2, 1, 2),
                   (1, 2, 1), (1, 2, 2), (2, 2, 1), (2, 2, 2)]


def test_fixture_likelihood_ratios(f1):
    trees = list(f1.enumerator())
    top = trees[0].likelihood
    ratios = sorted((t.likelihood / top for t in trees), reverse=True)
    expected = sorted((a * b * c for a in (1, Fraction(1, 4)) for b in (1, Fraction(1, 16))
                       for c in (1, Fraction(1, 2))), reverse=True)
    assert ratios == expected


def test_tree_network_single_support_tree():
    net = parse_network(TREE)
    (tree,) = enumerate_all(net)
    assert tree.arc_set == frozenset(range(net.num_arcs))
    assert tree.likelihood == Fraction(3, 32)


def test_top_k_argument_checks():
    net = table1_fixture()
    with pytest.raises(RankOutOfRangeError):
        top_k(net, 0)
    with pytest.raises(RankOutOfRangeError):
        top_k(net, 9)
    with pytest.raises(NotTreeBasedError) as info:
        top_k(wfence_network(1), 3)
    assert "W-fence" in str(info.value)
    assert len(info.value.wfences) == 1


def test_first_tree_is_oracle_maximum():
    for net in corpus()[:200]:
        (first,) = top_k(net, 1)
        assert first.rank_vector == (1,) * len(first.rank_vector)
        best = max(lik for _, lik in brute_force_support_trees(net))
        assert first.likelihood == best


def test_equal_weights_give_lexicographic_order():
    net = generate_random(4, 3, 11)
    ones = parse_network("".join(f"{t} {h} 1\n" for t, h, _ in net.raw_arcs()))
    vecs = [t.rank_vector for t in enumerate_all(ones)]
    assert vecs == sorted(vecs)
    assert all(t.likelihood == 1 for t in enumerate_all(ones))


def test_stream_is_lazy_and_prefix_consistent():
    net = generate_random(20, 15, 3)
    full = list(top_k(net, 40))
    for j in (1, 7, 40):
        assert list(top_k(net, j)) == full[:j]
    enum = SupportTreeSpace(net).enumerator(40)
    assert list(islice(enum, 5)) == full[:5]
    # nothing beyond the fifth tree was expanded
    assert enum.emitted == 5


def test_enumerate_all_length_matches_count():
    net = generate_random(5, 3, 7)
    assert len(list(enumerate_all(net))) == count_support_trees(net)


def _is_support_tree(net, arcs):
    if len(arcs) != net.num_vertices - 1:
        return False
    indeg = [0] * net.num_vertices
    children = [[] for _ in range(net.num_vertices)]
    for a in arcs:
        arc = net.arcs[a]
        indeg[arc.head] += 1
        children[arc.tail].append(arc.head)
    if indeg[net.root] != 0 or any(indeg[v] != 1 for v in range(net.num_vertices) if v != net.root):
        return False
    seen = {net.root}
    stack = [net.root]
    while stack:
        for c in children[stack.pop()]:
            seen.add(c)
            stack.append(c)
    if len(seen) != net.num_vertices:
        return False
    tree_leaves = {v for v in range(net.num_vertices) if not children[v]}
    return tree_leaves == set(net.leaves)


@settings(max_examples=120, deadline=None)
@given(leaves=st.integers(2, 12), extra=st.integers(0, 10), seed=st.integers(0, 10**9))
def test_emitted_trees_are_valid_and_ordered(leaves, extra, seed):
    net = generate_random(leaves, extra, seed)
    space = SupportTreeSpace(net)
    trees = list(space.enumerator(min(space.count, 60)))
    for t in trees:
        assert check_admissible(net, t.arc_set).admissible
        assert _is_support_tree(net, t.arc_set)
        prod = Fraction(1)
        for a in t.arc_set:
            prod *= net.weights[a]
        assert prod == t.likelihood == space.likelihood(t.rank_vector)
    for a, b in zip(trees, trees[1:]):
        assert a.likelihood > b.likelihood or (
            a.likelihood == b.likelihood and a.rank_vector < b.rank_vector)


@settings(max_examples=120, deadline=None)
@given(leaves=st.integers(2, 12), extra=st.integers(1, 10), seed=st.integers(0, 10**9),
       pick=st.integers(0, 10**6))
def test_gamma_tree_laws(leaves, extra, seed, pick):
    space = SupportTreeSpace(generate_random(leaves, extra, seed))
    assume(space.count > 1)
    # a random rank vector within bounds
    tau = []
    for s in space.sizes:
        tau.append(pick % s + 1)
        pick //= s
    tau = tuple(tau)
    child = space.child_star(tau)
    if child is not None:
        assert parent(child) == tau
        assert space.key(tau) < space.key(child)
        assert child == min(space.children(tau), key=space.key)
    for c in space.children(tau):
        assert parent(c) == tau
        assert sum(c) == sum(tau) + 1
    if tau != space.root:
        sib = space.sibling_star(tau)
        if sib is not None:
            assert parent(sib) == parent(tau)
            assert space.key(tau) < space.key(sib)
        later = [c for c in space.children(parent(tau)) if space.key(c) > space.key(tau)]
        assert sib == (min(later, key=space.key) if later else None)


def test_engine_matches_oracle_on_corpus_sample():
    for net in corpus()[:300]:
        n = count_support_trees(net)
        assert list(top_k(net, n)) == brute_force_top_k(net, n)


def test_trace_records_candidate_sets(f1):
    enum = f1.enumerator(trace=True)
    list(enum)
    assert [len(s.queue) for s in enum.trace] == [1, 1, 2, 2, 2, 2, 2, 1]
    assert enum.max_queue == 2
    assert not enum.trace[-1].expanded
