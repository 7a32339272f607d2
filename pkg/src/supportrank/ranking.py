"""Ranked enumeration of support trees.

A support tree is identified by its rank vector ``tau``: one 1-based local
rank per trail of the decomposition.  Trees are ordered by likelihood
descending, ties broken by ascending lexicographic order of rank vectors.

The search runs over the spanning tree Gamma of the componentwise order in
which ``parent(tau)`` decrements the first component of ``tau`` exceeding 1.
A binary heap holds the candidate set; after emitting ``tau`` it receives
``child_star(tau)`` and ``sibling_star(tau)``, so it grows by at most one
element per emission.

Heap keys avoid the full likelihood.  A candidate's likelihood relative to
the maximum-likelihood tree, scaled by a denominator shared by all
candidates, is an exact integer; keys compare as plain ints and each child or
sibling key follows from its predecessor by one exact multiply and divide.
The unscaled relative factor is also carried as a small integer pair, from
which the emitted tree's exact likelihood is formed.
"""

from __future__ import annotations

import heapq
import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain
from typing import Iterator, NamedTuple

from .decomposition import Decomposition, decompose
from .errors import NotTreeBasedError, RankOutOfRangeError
from .local_ranking import LocalRanking, build_local_ranking, local_family_size
from .network import PhyloNetwork

__all__ = [
    "SupportTree",
    "SupportTreeSpace",
    "RankedEnumerator",
    "TraceStep",
    "count_support_trees",
    "parent",
    "first_index",
    "top_k",
    "enumerate_all",
]

RankVector = tuple  # tuple[int, ...]


class SupportTree(NamedTuple):
    rank_vector: tuple[int, ...]
    arc_set: frozenset[int]
    likelihood: Fraction

    @property
    def arcs(self) -> list[int]:
        return sorted(self.arc_set)


def first_index(tau: RankVector) -> int | None:
    """0-based index of the first component greater than 1, or None."""
    for i, t in enumerate(tau):
        if t > 1:
            return i
    return None


def parent(tau: RankVector) -> RankVector:
    """Decrement the first component of ``tau`` exceeding 1."""
    i = first_index(tau)
    if i is None:
        raise ValueError("the all-ones vector has no parent")
    return tau[:i] + (tau[i] - 1,) + tau[i + 1:]


def count_support_trees(network: PhyloNetwork) -> int:
    """Number of support trees; 0 when the network is not tree-based."""
    dec = decompose(network)
    if not dec.is_tree_based:
        return 0
    total = 1
    for z in dec:
        total *= local_family_size(z)
    return total


class SupportTreeSpace:
    """Preprocessed ranking structure of one tree-based network.

    Building it decomposes the network and sorts every local ranking,
    O(|A| log |A|) in total.  Afterwards ``child_star``, ``sibling_star``
    and ``support_tree`` are each O(|A|).

    Raises
    ------
    NotTreeBasedError
        If the decomposition contains a W-fence.
    """

    def __init__(self, network: PhyloNetwork, decomposition: Decomposition | None = None):
        self.network = network
        self.decomposition = dec = decomposition or decompose(network)
        if not dec.is_tree_based:
            arcs = "; ".join(
                "(" + ", ".join(network.arc_label(a) for a in z.arcs) + ")" for z in dec.wfences)
            raise NotTreeBasedError(f"network is not tree-based: W-fence {arcs}", dec.wfences)
        weights = network.weights
        self.local: tuple[LocalRanking, ...] = tuple(
            build_local_ranking(z, weights) for z in dec)
        self.sizes = tuple(len(r) for r in self.local)
        self.d = len(self.sizes)
        # trails with a real choice; singleton families never change rank
        self.free = [i for i, s in enumerate(self.sizes) if s > 1]
        # step[i][j]: contribution(rank j+2) / contribution(rank j+1), all <= 1
        self.step = [
            [r.entries[j + 1].contribution / r.entries[j].contribution for j in range(len(r) - 1)]
            for r in self.local
        ]
        # dense integer ranks of the step ratios; equal ratios share a rank, so
        # comparing ranks is exact and much cheaper than comparing fractions
        distinct = sorted({r for row in self.step for r in row})
        order = {r: n for n, r in enumerate(distinct)}
        self.step_rank = [[order[r] for r in row] for row in self.step]
        # rel[i][j]: contribution(rank j+1) / contribution(rank 1)
        self.rel = [[e.contribution / r.entries[0].contribution for e in r.entries]
                    for r in self.local]
        # scaled[i][j] = rel[i][j] * lcm_i is an integer; the product of one
        # scaled entry per trail is the relative likelihood times a shared
        # denominator, so heap keys can be compared as plain integers
        self.scaled = []
        self.scale = 1
        for row in self.rel:
            lcm = math.lcm(*(r.denominator for r in row))
            self.scaled.append([r.numerator * (lcm // r.denominator) for r in row])
            self.scale *= lcm
        self.selected = [
            [tuple(a for a, b in zip(z.arcs, e.bits) if b) for e in r.entries]
            for z, r in zip(dec, self.local)
        ]
        top = Fraction(1)
        for r in self.local:
            top *= r.entries[0].contribution
        self.max_likelihood = top
        self.root: RankVector = (1,) * self.d

    # counting

    @property
    def count(self) -> int:
        total = 1
        for s in self.sizes:
            total *= s
        return total

    def count_at_least(self, k: int) -> bool:
        """Whether at least ``k`` support trees exist, stopping once exceeded."""
        total = 1
        for s in self.sizes:
            total *= s
            if total >= k:
                return True
        return total >= k

    # likelihoods

    def relative_likelihood(self, tau: RankVector) -> Fraction:
        out = Fraction(1)
        for i in self.free:
            if tau[i] > 1:
                out *= self.rel[i][tau[i] - 1]
        return out

    def likelihood(self, tau: RankVector) -> Fraction:
        return self.max_likelihood * self.relative_likelihood(tau)

    def key(self, tau: RankVector):
        """Sort key realising the global order: smaller is better."""
        return (-self.relative_likelihood(tau), tau)

    # Gamma-tree navigation

    def _child_limit(self, tau, first=None):
        """Children of tau are tau + e_i for free i < limit."""
        if first is None:
            first = first_index(tau)
        return self.d if first is None else first + 1

    def _child_keys(self, tau, limit):
        step = self.step_rank
        sizes = self.sizes
        free = self.free
        # larger (ratio rank, index) means earlier in the global order
        return [(step[i][tau[i] - 1], i) for i in free[:bisect_left(free, limit)]
                if tau[i] < sizes[i]]

    def children(self, tau: RankVector) -> list[RankVector]:
        """All Gamma-children of ``tau`` in global order."""
        keyed = sorted(self._child_keys(tau, self._child_limit(tau)), reverse=True)
        return [_bump(tau, i) for _, i in keyed]

    def _child_star(self, tau, first=None):
        return max(self._child_keys(tau, self._child_limit(tau, first)), default=None)

    def child_star(self, tau: RankVector) -> RankVector | None:
        """Least Gamma-child of ``tau`` in the global order, or None."""
        best = self._child_star(tau)
        return None if best is None else _bump(tau, best[1])

    def _sibling_star(self, tau, first=None):
        i0 = first_index(tau) if first is None else first
        if i0 is None:
            raise ValueError("the all-ones vector has no siblings")
        p = tau[:i0] + (tau[i0] - 1,) + tau[i0 + 1:]
        own = (self.step_rank[i0][p[i0] - 1], i0)
        later = [key for key in self._child_keys(p, self._child_limit(p)) if key < own]
        return p, max(later, default=None)

    def sibling_star(self, tau: RankVector) -> RankVector | None:
        """Least strictly-later sibling of ``tau`` in Gamma, or None."""
        p, best = self._sibling_star(tau)
        return None if best is None else _bump(p, best[1])

    # materialisation

    def support_tree(self, tau: RankVector, relative=None) -> SupportTree:
        """Materialise ``tau``; ``relative`` is a known relative likelihood,
        either a Fraction or an unreduced ``(num, den)`` pair."""
        if relative is None:
            relative = self.relative_likelihood(tau)
        if not isinstance(relative, Fraction):
            relative = Fraction(*relative)
        sel = self.selected
        arcs = frozenset(chain.from_iterable([sel[i][t - 1] for i, t in enumerate(tau)]))
        # relative is small, so this product only takes gcds against small numbers
        return SupportTree(tau, arcs, self.max_likelihood * relative)

    def enumerator(self, k: int | None = None, trace: bool = False) -> "RankedEnumerator":
        return RankedEnumerator(self, k, trace)


def _bump(tau, i):
    return tau[:i] + (tau[i] + 1,) + tau[i + 1:]


@dataclass
class TraceStep:
    """One iteration: the candidate set before popping and what was pushed after."""

    j: int
    queue: frozenset
    emitted: tuple[int, ...]
    child: tuple[int, ...] | None = None
    sibling: tuple[int, ...] | None = None
    expanded: bool = False


class RankedEnumerator:
    """Streaming top-k enumerator over a :class:`SupportTreeSpace`.

    Iterating yields :class:`SupportTree` objects in the global order.  The
    successors of an emitted tree are only computed when the next tree is
    requested, so stopping early never pays for unused work.

    With ``trace=True`` every step is recorded in :attr:`trace`.
    """

    def __init__(self, space: SupportTreeSpace, k: int | None = None, trace: bool = False):
        self.space = space
        self.k = space.count if k is None else k
        self.emitted = 0
        # entries (-scaled key, rank vector, first index, rel num, rel den);
        # the first two fields are unique so comparison never goes further
        self._heap = [(-space.scale, space.root, None, 1, 1)]
        self._last = None
        self.trace: list[TraceStep] | None = [] if trace else None
        self.max_queue = 1
        self._step_num = [[r.numerator for r in row] for row in space.step]
        self._step_den = [[r.denominator for r in row] for row in space.step]

    def __iter__(self) -> Iterator[SupportTree]:
        return self

    @property
    def queue(self) -> list[tuple[int, ...]]:
        return [e[1] for e in sorted(self._heap)]

    def _expand(self):
        # child* and sibling* of the last emission, inlined from
        # SupportTreeSpace.child_star / sibling_star to keep the delay small
        space = self.space
        negkey, tau, first, num, den = self._last
        heap = self._heap
        snum, sden, srank = self._step_num, self._step_den, space.step_rank
        scaled = space.scaled
        sizes, free = space.sizes, space.free
        child = sibling = None

        limit = space.d if first is None else first + 1
        best, bi = -1, -1
        for i in free[:bisect_left(free, limit)]:
            t = tau[i]
            # ascending i with >=: equal ratios prefer the larger index
            if t < sizes[i] and srank[i][t - 1] >= best:
                best, bi = srank[i][t - 1], i
        if bi >= 0:
            t = tau[bi] - 1
            child = tau[:bi] + (t + 2,) + tau[bi + 1:]
            # a Gamma-child tau + e_i has its first non-one component at i
            g = scaled[bi]
            heapq.heappush(heap, (negkey * g[t + 1] // g[t], child, bi,
                                  num * snum[bi][t], den * sden[bi][t]))

        if first is not None:
            # parent p = tau - e_first; its children are p + e_i for free i <= id(p)
            pf = tau[first] - 1
            if pf > 1:
                plimit = first + 1
            else:
                plimit = space.d
                for i in free[bisect_left(free, first + 1):]:
                    if tau[i] > 1:
                        plimit = i + 1
                        break
            own = srank[first][pf - 1]
            best, bi = -1, -1
            for i in free[:bisect_left(free, plimit)]:
                t = pf if i == first else tau[i]
                if t < sizes[i]:
                    r = srank[i][t - 1]
                    if (r < own or (r == own and i < first)) and r >= best:
                        best, bi = r, i
            if bi >= 0:
                sib = list(tau)
                sib[first] = pf
                sib[bi] += 1
                sibling = tuple(sib)
                t = sib[bi] - 2
                # divide out the step at ``first`` to get p, then apply step bi
                gf, g = scaled[first], scaled[bi]
                key = negkey * gf[pf - 1] // gf[pf] * g[t + 1] // g[t]
                heapq.heappush(heap, (key, sibling, bi,
                                      num * sden[first][pf - 1] * snum[bi][t],
                                      den * snum[first][pf - 1] * sden[bi][t]))
        if self.trace is not None:
            step = self.trace[-1]
            step.child, step.sibling, step.expanded = child, sibling, True
        if len(heap) > self.max_queue:
            self.max_queue = len(heap)

    def __next__(self) -> SupportTree:
        if self.emitted >= self.k:
            raise StopIteration
        if self._last is not None:
            self._expand()
            self._last = None
        if not self._heap:
            raise StopIteration
        if self.trace is not None:
            self.trace.append(TraceStep(self.emitted + 1, frozenset(e[1] for e in self._heap), ()))
        entry = heapq.heappop(self._heap)
        self._last = entry
        self.emitted += 1
        tau = entry[1]
        if self.trace is not None:
            self.trace[-1].emitted = tau
        sel = self.space.selected
        arcs = frozenset(chain.from_iterable([sel[i][t - 1] for i, t in enumerate(tau)]))
        # the relative factor is small, so this product is linear in |A|
        lik = self.space.max_likelihood * Fraction(entry[3], entry[4])
        return SupportTree(tau, arcs, lik)


def top_k(network: PhyloNetwork, k: int) -> RankedEnumerator:
    """Stream the ``k`` best support trees of ``network``.

    Raises
    ------
    NotTreeBasedError
        The network has no support tree.
    RankOutOfRangeError
        ``k < 1`` or ``k`` exceeds the number of support trees.
    """
    if k < 1:
        raise RankOutOfRangeError(f"k must be positive, got {k}")
    space = SupportTreeSpace(network)
    if not space.count_at_least(k):
        raise RankOutOfRangeError(f"k={k} exceeds the number of support trees ({space.count})")
    return space.enumerator(k)


def enumerate_all(network: PhyloNetwork) -> RankedEnumerator:
    """All support trees of ``network`` in ranking order."""
    return SupportTreeSpace(network).enumerator()
