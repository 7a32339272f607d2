"""Brute-force reference implementation for small instances.

Nothing here touches the fast engine except :func:`brute_force_top_k`, which
borrows the canonical trail orientation to express rank vectors (the global
tie-break is defined on them).  Degrees, admissibility, trail partition,
likelihoods and all sorting are recomputed independently.

A subset ``S`` of arcs is admissible when

1. ``S`` contains every arc ``(u, v)`` with in-degree of ``v`` equal to 1 or
   out-degree of ``u`` equal to 1 (*forced-arc*);
2. of any two arcs sharing a head exactly one is in ``S``
   (*head-exactly-one*);
3. of any two arcs sharing a tail at least one is in ``S``
   (*tail-at-least-one*).

Degrees are taken in whatever graph is passed, so the same checks apply to a
single trail viewed as a subgraph.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .errors import OracleCapExceeded, RankOutOfRangeError
from .network import PhyloNetwork

FORCED = "forced-arc"
HEAD_ONE = "head-exactly-one"
TAIL_ONE = "tail-at-least-one"

DEFAULT_CAP = 24
DIRECT_CAP = 16

__all__ = [
    "AdmissibilityReport",
    "check_admissible",
    "admissible_subsets",
    "arc_components",
    "brute_force_support_trees",
    "direct_support_trees",
    "brute_force_top_k",
]


@dataclass(frozen=True)
class AdmissibilityReport:
    subset: frozenset[int]
    violated_conditions: frozenset[str]
    details: tuple[str, ...] = ()

    @property
    def admissible(self) -> bool:
        return not self.violated_conditions


def _triples(graph) -> list[tuple[int, object, object]]:
    """``(arc_index, tail, head)`` for a network or an iterable of triples."""
    if isinstance(graph, PhyloNetwork):
        return [(a.index, a.tail, a.head) for a in graph.arcs]
    return [tuple(t) for t in graph]


def _groups(triples):
    by_head = defaultdict(list)
    by_tail = defaultdict(list)
    for idx, t, h in triples:
        by_head[h].append(idx)
        by_tail[t].append(idx)
    forced = [idx for idx, t, h in triples if len(by_head[h]) == 1 or len(by_tail[t]) == 1]
    head_pairs = [p for g in by_head.values() for p in combinations(g, 2)]
    tail_pairs = [p for g in by_tail.values() for p in combinations(g, 2)]
    return forced, head_pairs, tail_pairs


def check_admissible(graph, subset: Iterable[int]) -> AdmissibilityReport:
    """Evaluate all three admissibility conditions for ``subset``."""
    triples = _triples(graph)
    subset = frozenset(subset)
    if isinstance(graph, PhyloNetwork):
        names = {idx: graph.arc_label(idx) for idx, _, _ in triples}
    else:
        names = {idx: f"{t}->{h}" for idx, t, h in triples}
    unknown = subset - names.keys()
    if unknown:
        raise ValueError(f"arcs {sorted(unknown)} are not in the graph")
    forced, head_pairs, tail_pairs = _groups(triples)
    violated = set()
    details = []
    for a in forced:
        if a not in subset:
            violated.add(FORCED)
            details.append(f"{FORCED}: arc {a} ({names[a]}) missing")
    for a, b in head_pairs:
        if (a in subset) == (b in subset):
            violated.add(HEAD_ONE)
            details.append(f"{HEAD_ONE}: arcs {a} ({names[a]}), {b} ({names[b]})")
    for a, b in tail_pairs:
        if a not in subset and b not in subset:
            violated.add(TAIL_ONE)
            details.append(f"{TAIL_ONE}: arcs {a} ({names[a]}), {b} ({names[b]})")
    return AdmissibilityReport(subset, frozenset(violated), tuple(details))


def admissible_subsets(triples: Sequence[tuple[int, object, object]]) -> list[frozenset[int]]:
    """Every admissible subset of ``triples``, by testing all ``2^m`` bitmasks."""
    triples = list(triples)
    m = len(triples)
    if m > 26:
        raise OracleCapExceeded(f"{m} arcs is too many for exhaustive enumeration")
    pos = {idx: k for k, (idx, _, _) in enumerate(triples)}
    forced, head_pairs, tail_pairs = _groups(triples)
    masks = np.arange(1 << m, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    fmask = 0
    for a in forced:
        fmask |= 1 << pos[a]
    ok &= (masks & fmask) == fmask
    for a, b in head_pairs:
        ok &= (((masks >> pos[a]) ^ (masks >> pos[b])) & 1) == 1
    for a, b in tail_pairs:
        ok &= (((masks >> pos[a]) | (masks >> pos[b])) & 1) == 1
    out = []
    for s in masks[ok].tolist():
        out.append(frozenset(idx for idx, _, _ in triples if s >> pos[idx] & 1))
    return out


def arc_components(graph) -> list[list[int]]:
    """Partition arcs by the 'shares a head or shares a tail' relation."""
    triples = _triples(graph)
    parent = {idx: idx for idx, _, _ in triples}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first_head, first_tail = {}, {}
    for idx, t, h in triples:
        for key, seen in ((h, first_head), (t, first_tail)):
            if key in seen:
                parent[find(idx)] = find(seen[key])
            else:
                seen[key] = idx
    comps = defaultdict(list)
    for idx, _, _ in triples:
        comps[find(idx)].append(idx)
    return sorted(comps.values())


def _likelihood(weights, arcs):
    out = Fraction(1)
    for a in arcs:
        out *= weights[a]
    return out


def brute_force_support_trees(network: PhyloNetwork, cap: int = DEFAULT_CAP):
    """All support trees as ``(arc set, likelihood)`` pairs.

    Each component of the head/tail sharing relation is enumerated on its
    own, with degrees taken in the whole network, and the per-component
    families are combined by direct product.
    """
    if network.num_arcs > cap:
        raise OracleCapExceeded(f"network has {network.num_arcs} arcs, cap is {cap}")
    triples = _triples(network)
    by_idx = {t[0]: t for t in triples}
    indeg = defaultdict(int)
    outdeg = defaultdict(int)
    for _, t, h in triples:
        indeg[h] += 1
        outdeg[t] += 1
    families = []
    for comp in arc_components(network):
        # a component holds every arc at its shared heads and tails, so the
        # degrees seen inside it are the network's degrees
        sub = [by_idx[a] for a in comp]
        sub_in = defaultdict(int)
        sub_out = defaultdict(int)
        for _, t, h in sub:
            sub_in[h] += 1
            sub_out[t] += 1
        if any(sub_in[h] != indeg[h] or sub_out[t] != outdeg[t] for _, t, h in sub):
            raise AssertionError("component does not carry the full degree of its vertices")
        families.append(admissible_subsets(sub))
    weights = network.weights
    out = []
    for choice in product(*families):
        arcs = frozenset().union(*choice)
        out.append((arcs, _likelihood(weights, arcs)))
    return out


def direct_support_trees(network: PhyloNetwork, cap: int = DIRECT_CAP):
    """All support trees by filtering every one of the ``2^|A|`` arc subsets."""
    if network.num_arcs > cap:
        raise OracleCapExceeded(f"network has {network.num_arcs} arcs, cap is {cap}")
    weights = network.weights
    return [(s, _likelihood(weights, s)) for s in admissible_subsets(_triples(network))]


def brute_force_top_k(network: PhyloNetwork, k: int, cap: int = DEFAULT_CAP):
    """The first ``k`` support trees, by sorting the full enumeration.

    Rank vectors use the engine's trail orientation; the local ranking on
    each trail is rebuilt here from the enumerated trees.
    """
    from .decomposition import decompose
    from .ranking import SupportTree

    trees = brute_force_support_trees(network, cap)
    if not 1 <= k <= len(trees):
        raise RankOutOfRangeError(f"k={k} outside [1, {len(trees)}]")
    weights = network.weights
    local_ranks = []
    for z in decompose(network):
        vectors = {tuple(int(a in arcs) for a in z.arcs) for arcs, _ in trees}
        scored = sorted(
            vectors,
            key=lambda v: (-_likelihood(weights, [a for a, b in zip(z.arcs, v) if b]), v))
        local_ranks.append((z.arcs, {v: r for r, v in enumerate(scored, 1)}))
    ranked = []
    for arcs, lik in trees:
        rv = tuple(ranks[tuple(int(a in arcs) for a in trail)] for trail, ranks in local_ranks)
        ranked.append(SupportTree(rv, arcs, lik))
    ranked.sort(key=lambda t: (-t.likelihood, t.rank_vector))
    return ranked[:k]
