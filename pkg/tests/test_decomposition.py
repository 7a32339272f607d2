import random

import pytest
from hypothesis import given, settings, strategies as st

from supportrank import PhyloNetwork, TrailKind, decompose, generate_random, is_tree_based, parse_network
from supportrank.decomposition import classify, decompose_arcs
from supportrank.fixtures import WFENCE_ARCS, table1_fixture, wfence_network
from supportrank.oracle import admissible_subsets, brute_force_support_trees

from helpers import corpus


def kinds(dec):
    return [(z.kind, z.arcs) for z in dec]


def test_cherry():
    net = parse_network("rho a 1\na x 1\na y 1")
    assert kinds(decompose(net)) == [(TrailKind.NFENCE, (0,)), (TrailKind.MFENCE, (1, 2))]


def test_embedded_four_crown():
    net = parse_network(
        "r u1 1\nr u2 1\nu1 v1 1\nu2 v1 1\nu2 v2 1\nu1 v2 1\nv1 x 1\nv2 y 1\n")
    crowns = [z for z in decompose(net) if z.kind is TrailKind.CROWN]
    assert len(crowns) == 1
    assert sorted(crowns[0].arcs) == [2, 3, 4, 5]


def test_table1_fixture_decomposition():
    dec = decompose(table1_fixture())
    assert [z.kind for z in dec[:3]] == [TrailKind.CROWN] * 3
    assert all(z.kind is not TrailKind.CROWN for z in dec[3:])
    assert all(len(z) == 4 for z in dec[:3])


def test_crown_orientation():
    # the crown starts at its smallest arc and continues to that arc's head partner
    net = table1_fixture()
    z = decompose(net)[0]
    assert z.arcs == (0, 1, 2, 3)
    assert net.arcs[0].head == net.arcs[1].head


# classify works on any trail in walking order; vertices are plain ints here
V0, V1, V2, V3, V4 = range(5)


def test_classify_mfence():
    tails, heads = [V1, V1], [V0, V2]
    assert classify([0, 1], tails, heads) is TrailKind.MFENCE


def test_classify_nfence():
    tails, heads = [V0, V2, V2], [V1, V1, V3]
    assert classify([0, 1, 2], tails, heads) is TrailKind.NFENCE


def test_classify_wfence():
    tails, heads = [V0, V2, V2, V4], [V1, V1, V3, V3]
    assert classify([0, 1, 2, 3], tails, heads) is TrailKind.WFENCE
    assert admissible_subsets(list(zip(range(4), tails, heads))) == []


def test_classify_crown():
    assert classify([0, 1, 2, 3], [0, 1, 1, 0], [2, 2, 3, 3], closed=True) is TrailKind.CROWN


def test_nfence_starts_at_outer_tail():
    dec = decompose_arcs([V2, V0, V2], [V3, V1, V1])
    (z,) = dec
    assert z.kind is TrailKind.NFENCE
    assert z.arcs == (1, 2, 0)


def test_mfence_starts_at_smaller_terminal_arc():
    dec = decompose_arcs([1, 1, 2, 2], [0, 3, 3, 4])
    (z,) = dec
    assert z.kind is TrailKind.MFENCE
    assert z.arcs == (0, 1, 2, 3)
    # same fence listed so that the walk visits 0, 2, 1, 3
    dec = decompose_arcs([2, 1, 2, 1], [4, 3, 3, 0])
    (z,) = dec
    assert z.arcs == (0, 2, 1, 3)


def test_tree_is_tree_based():
    assert is_tree_based(parse_network("r a 1\nr b 1\na x 1\na y 1\nb z 1\nb w 1"))


def test_wfence_network_is_not_tree_based():
    net = wfence_network(0)
    dec = decompose(net)
    assert not dec.is_tree_based
    (w,) = dec.wfences
    labels = {net.arc_label(a) for a in w.arcs}
    assert labels == {f"{t}->{h}" for t, h in WFENCE_ARCS}
    assert brute_force_support_trees(net) == []


def _alternates(z, tails, heads):
    seq = list(z.arcs)
    if z.kind is TrailKind.CROWN:
        seq.append(seq[0])
    shares = []
    for a, b in zip(seq, seq[1:]):
        h = heads[a] == heads[b]
        t = tails[a] == tails[b]
        assert h != t
        shares.append(h)
    return all(x != y for x, y in zip(shares, shares[1:]))


def _maximal(z, dec, tails, heads):
    if z.kind is TrailKind.CROWN:
        return True
    inside = set(z.arcs)
    for end, nxt in ((z.arcs[0], z.arcs[1:2]), (z.arcs[-1], z.arcs[-2:-1])):
        # the free vertex of a terminal arc is whichever one it does not share
        shared_head = bool(nxt) and heads[nxt[0]] == heads[end]
        for b in range(len(tails)):
            if b in inside:
                continue
            if not nxt:
                assert heads[b] != heads[end] and tails[b] != tails[end]
            elif shared_head:
                assert tails[b] != tails[end]
            else:
                assert heads[b] != heads[end]
    return True


def check_decomposition(net):
    dec = decompose(net)
    tails, heads = net.tails, net.heads
    seen = [z for t in dec for z in t.arcs]
    assert sorted(seen) == list(range(net.num_arcs))
    assert [min(z.arcs) for z in dec] == sorted(min(z.arcs) for z in dec)
    for i, z in enumerate(dec):
        assert z.trail_index == i
        assert _alternates(z, tails, heads)
        assert _maximal(z, dec, tails, heads)
        assert dec.arc_trail[z.arcs[0]] == i
    return dec


def test_partition_alternation_maximality_over_corpus():
    for net in corpus():
        check_decomposition(net)


def test_partition_on_wfence_networks():
    for s in range(50):
        check_decomposition(wfence_network(s))


def _relabel(net, rng):
    raw = net.raw_arcs()
    order = list(range(len(raw)))
    rng.shuffle(order)
    names = {lab: f"n{k}" for k, lab in enumerate(rng.sample(net.labels, len(net.labels)))}
    shuffled = [(names[raw[i][0]], names[raw[i][1]], raw[i][2]) for i in order]
    return PhyloNetwork.from_arcs(shuffled), order


@settings(max_examples=150, deadline=None)
@given(leaves=st.integers(2, 10), extra=st.integers(0, 8), seed=st.integers(0, 10**9))
def test_partition_is_invariant_under_relabelling(leaves, extra, seed):
    net = generate_random(leaves, extra, seed)
    other, order = _relabel(net, random.Random(seed))
    mine = {(frozenset(z.arcs), z.kind) for z in decompose(net)}
    theirs = {(frozenset(order[a] for a in z.arcs), z.kind) for z in decompose(other)}
    assert mine == theirs


@settings(max_examples=100, deadline=None)
@given(leaves=st.integers(2, 6), extra=st.integers(0, 4), seed=st.integers(0, 10**9))
def test_trail_family_nonempty_iff_not_wfence(leaves, extra, seed):
    net = generate_random(leaves, extra, seed)
    if net.num_arcs > 20:
        return
    tails, heads = net.tails, net.heads
    for z in decompose(net):
        fam = admissible_subsets([(a, tails[a], heads[a]) for a in z.arcs])
        assert bool(fam) == (z.kind is not TrailKind.WFENCE)


def test_decompose_arcs_rejects_high_degree():
    with pytest.raises(ValueError):
        decompose_arcs([0, 1, 2], [3, 3, 3])
