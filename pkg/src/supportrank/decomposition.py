"""Decomposition of a binary network into maximal zig-zag trails.

Every arc has at most one *head partner* (the other arc entering a shared
in-degree-2 head) and at most one *tail partner* (the other arc leaving a
shared out-degree-2 tail).  The partner graph has maximum degree two and its
components, walked alternately through head and tail partners, are exactly
the maximal zig-zag trails: paths (fences) or cycles (crowns).

Orientation conventions, which fix the bit-vector encoding of each trail:

* N-fence: starts at the end whose outer vertex is a tail, so the first two
  arcs share a head.
* M-fence and W-fence: start from the terminal arc with the smaller index.
* crown: starts at its smallest arc and continues to that arc's head partner.

Trails are ordered by their smallest arc index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .network import PhyloNetwork

__all__ = [
    "TrailKind",
    "ZigzagTrail",
    "Decomposition",
    "decompose",
    "decompose_arcs",
    "classify",
    "is_tree_based",
]


class TrailKind(enum.Enum):
    CROWN = "crown"
    MFENCE = "M-fence"
    NFENCE = "N-fence"
    WFENCE = "W-fence"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ZigzagTrail:
    arcs: tuple[int, ...]
    kind: TrailKind
    trail_index: int

    def __len__(self):
        return len(self.arcs)


@dataclass(frozen=True)
class Decomposition:
    trails: tuple[ZigzagTrail, ...]
    arc_trail: tuple[int, ...]  # trail_index of each arc

    def __len__(self):
        return len(self.trails)

    def __iter__(self):
        return iter(self.trails)

    def __getitem__(self, i):
        return self.trails[i]

    @property
    def wfences(self) -> list[ZigzagTrail]:
        return [z for z in self.trails if z.kind is TrailKind.WFENCE]

    @property
    def is_tree_based(self) -> bool:
        return not self.wfences


def _partners(tails: Sequence[int], heads: Sequence[int]):
    m = len(tails)
    hp = [-1] * m
    tp = [-1] * m
    first_in: dict[int, int] = {}
    first_out: dict[int, int] = {}
    for a in range(m):
        h, t = heads[a], tails[a]
        if h in first_in:
            b = first_in[h]
            if hp[b] != -1:
                raise ValueError(f"vertex {h} has in-degree above 2")
            hp[a], hp[b] = b, a
        else:
            first_in[h] = a
        if t in first_out:
            b = first_out[t]
            if tp[b] != -1:
                raise ValueError(f"vertex {t} has out-degree above 2")
            tp[a], tp[b] = b, a
        else:
            first_out[t] = a
    return hp, tp


def _walk(start, first, second):
    """Follow alternating partner links from ``start``; ``first`` is used first."""
    seq = []
    links = (first, second)
    a, step = start, 0
    while True:
        b = links[step % 2][a]
        if b == -1:
            return seq, False
        if b == start:
            return seq, True
        seq.append(b)
        a = b
        step += 1


def classify(arcs: Sequence[int], tails: Sequence[int], heads: Sequence[int],
             closed: bool = False) -> TrailKind:
    """Kind of a maximal alternating trail given in walking order.

    ``closed`` marks a cyclic trail.  For an open trail the kind depends on
    parity and on whether the first two arcs share a head or a tail.
    """
    if closed:
        return TrailKind.CROWN
    m = len(arcs)
    if m % 2 == 1:
        return TrailKind.NFENCE
    a1, a2 = arcs[0], arcs[1]
    if tails[a1] == tails[a2]:
        return TrailKind.MFENCE  # outer vertices are heads
    return TrailKind.WFENCE


def _canonical(seq, closed, hp, tails, heads):
    if closed:
        i = seq.index(min(seq))
        seq = seq[i:] + seq[:i]
        if len(seq) > 1 and seq[1] != hp[seq[0]]:
            seq = [seq[0]] + seq[:0:-1]
        return seq
    m = len(seq)
    if m == 1:
        return seq
    if m % 2 == 1:
        # outer vertex at the start must be a tail
        if heads[seq[0]] != heads[seq[1]]:
            seq = seq[::-1]
        return seq
    if seq[-1] < seq[0]:
        seq = seq[::-1]
    return seq


def decompose_arcs(tails: Sequence[int], heads: Sequence[int]) -> Decomposition:
    """Decompose an arbitrary simple digraph with in/out-degrees at most 2."""
    hp, tp = _partners(tails, heads)
    m = len(tails)
    seen = [False] * m
    raw = []
    for a in range(m):
        if seen[a]:
            continue
        fwd, closed = _walk(a, hp, tp)
        if closed:
            seq = [a] + fwd
        else:
            back, _ = _walk(a, tp, hp)
            seq = back[::-1] + [a] + fwd
        for b in seq:
            seen[b] = True
        seq = _canonical(seq, closed, hp, tails, heads)
        raw.append((min(seq), tuple(seq), classify(seq, tails, heads, closed)))
    raw.sort()
    trails = []
    arc_trail = [0] * m
    for i, (_, seq, kind) in enumerate(raw):
        trails.append(ZigzagTrail(seq, kind, i))
        for b in seq:
            arc_trail[b] = i
    return Decomposition(tuple(trails), tuple(arc_trail))


def decompose(network: PhyloNetwork) -> Decomposition:
    """Unique decomposition of ``network`` into maximal zig-zag trails, O(|A|)."""
    return decompose_arcs(network.tails, network.heads)


def is_tree_based(network: PhyloNetwork) -> bool:
    """True iff no maximal zig-zag trail of ``network`` is a W-fence."""
    return decompose(network).is_tree_based
