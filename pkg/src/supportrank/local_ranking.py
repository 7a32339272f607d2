"""Admissible 0/1 vectors of a single trail and their local ranking.

The admissible family of a trail depends only on its kind and length:

========  =========================================  ==========
kind      vectors                                    count
========  =========================================  ==========
crown     ``(01)^(m/2)``, ``(10)^(m/2)``             2
N-fence   ``1(01)^((m-1)/2)``                        1
M-fence   ``1(01)^p(10)^q1`` with ``p+q=(m-2)/2``    m/2
W-fence   none                                       0
========  =========================================  ==========

Bits follow the trail's canonical arc order.  The local ranking sorts the
family by contribution (product of the selected weights) descending, ties
broken by ascending lexicographic order of the bit vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .decomposition import TrailKind, ZigzagTrail
from .errors import NotTreeBasedError

__all__ = [
    "LocalEntry",
    "LocalRanking",
    "local_family_size",
    "admissible_vectors",
    "mfence_contributions",
    "build_local_ranking",
    "vector_to_arcs",
]


@dataclass(frozen=True)
class LocalEntry:
    bits: tuple[int, ...]
    contribution: Fraction


@dataclass(frozen=True)
class LocalRanking:
    trail_index: int
    entries: tuple[LocalEntry, ...]

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, rank):
        """Entry with 1-based local rank ``rank``."""
        if rank < 1:
            raise IndexError(rank)
        return self.entries[rank - 1]


def _no_family(trail):
    return NotTreeBasedError(
        f"trail {trail.trail_index} is a W-fence: no admissible arc-set", [trail])


def local_family_size(trail: ZigzagTrail) -> int:
    m = len(trail.arcs)
    if trail.kind is TrailKind.CROWN:
        return 2
    if trail.kind is TrailKind.NFENCE:
        return 1
    if trail.kind is TrailKind.MFENCE:
        return m // 2
    raise _no_family(trail)


def _mfence_vector(m, p):
    q = (m - 2) // 2 - p
    return (1,) + (0, 1) * p + (1, 0) * q + (1,)


def admissible_vectors(trail: ZigzagTrail) -> list[tuple[int, ...]]:
    """The admissible family in generation order (``p`` ascending for M-fences)."""
    m = len(trail.arcs)
    if trail.kind is TrailKind.CROWN:
        return [(0, 1) * (m // 2), (1, 0) * (m // 2)]
    if trail.kind is TrailKind.NFENCE:
        return [(1,) + (0, 1) * ((m - 1) // 2)]
    if trail.kind is TrailKind.MFENCE:
        return [_mfence_vector(m, p) for p in range(m // 2)]
    raise _no_family(trail)


def _product(values):
    out = Fraction(1)
    for v in values:
        out *= v
    return out


def mfence_contributions(trail: ZigzagTrail, weights: Sequence[Fraction]) -> list[Fraction]:
    """Contributions of ``x_1, ..., x_{m/2}`` by the one-swap recurrence.

    ``x_{p+1}`` drops arc ``a_{2p}`` and takes ``a_{2p+1}`` (1-based), so each
    step is one multiplication by ``w(a_{2p+1}) / w(a_{2p})``.
    """
    if trail.kind is not TrailKind.MFENCE:
        raise ValueError(f"expected an M-fence, got {trail.kind}")
    arcs = trail.arcs
    m = len(arcs)
    first = _mfence_vector(m, 0)
    c = _product(weights[a] for a, b in zip(arcs, first) if b)
    out = [c]
    for p in range(1, m // 2):
        # 0-based positions 2p-1 (dropped) and 2p (taken)
        c = c * weights[arcs[2 * p]] / weights[arcs[2 * p - 1]]
        out.append(c)
    return out


def build_local_ranking(trail: ZigzagTrail, weights: Sequence[Fraction]) -> LocalRanking:
    """Local ranking of ``trail`` under per-arc ``weights`` (indexed by arc)."""
    vectors = admissible_vectors(trail)
    if trail.kind is TrailKind.MFENCE:
        contribs = mfence_contributions(trail, weights)
    else:
        contribs = [_product(weights[a] for a, b in zip(trail.arcs, v) if b) for v in vectors]
    entries = sorted(zip(vectors, contribs), key=lambda e: (-e[1], e[0]))
    return LocalRanking(trail.trail_index,
                        tuple(LocalEntry(v, c) for v, c in entries))


def vector_to_arcs(trail: ZigzagTrail, bits: Sequence[int]) -> frozenset[int]:
    if len(bits) != len(trail.arcs):
        raise ValueError(f"vector of length {len(bits)} for a trail of {len(trail.arcs)} arcs")
    return frozenset(a for a, b in zip(trail.arcs, bits) if b)
