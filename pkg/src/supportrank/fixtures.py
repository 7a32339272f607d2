"""Hand-built and randomised test instances.

``TABLE1_DOCUMENT``
    Three crowns whose second-ranked choice costs a factor 1/4, 1/16 and
    1/2 respectively; every other trail has a single admissible vector.
    These ratios reproduce the eight-step worked ranking over three
    two-choice trails (rank vectors ``(1 1 1), (1 1 2), (2 1 1), ...``).

``wfence_network``
    A small gadget containing a maximal W-fence (hence not tree-based),
    optionally grafted onto random tree-based networks.

``random_trail``
    A standalone alternating trail of a chosen kind and length.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .network import PhyloNetwork, generate_random, parse_network

__all__ = [
    "TABLE1_DOCUMENT",
    "TABLE1_RATIOS",
    "table1_fixture",
    "WFENCE_GADGET",
    "wfence_network",
    "random_trail",
]

TABLE1_RATIOS = (Fraction(1, 4), Fraction(1, 16), Fraction(1, 2))


def _crown_gadget(tag, ratio):
    # arcs in the order a1..a4 of the canonical crown orientation
    return [
        (f"{tag}u1", f"{tag}v1", Fraction(1)),
        (f"{tag}u2", f"{tag}v1", Fraction(1)),
        (f"{tag}u2", f"{tag}v2", Fraction(1)),
        (f"{tag}u1", f"{tag}v2", ratio),
    ]


def _table1_arcs():
    arcs = []
    for n, ratio in enumerate(TABLE1_RATIOS, 1):
        arcs += _crown_gadget(f"c{n}", ratio)
    # crowns hang in a chain: root -> crown 1 -> crown 2 -> crown 3 -> leaves
    rest = [
        ("r", "c1u1", "9/10"), ("r", "c1u2", "1"),
        ("c1v1", "c2u1", "3/4"), ("c1v2", "c2u2", "1"),
        ("c2v1", "c3u1", "4/5"), ("c2v2", "c3u2", "1"),
        ("c3v1", "x1", "1"), ("c3v2", "x2", "1/2"),
    ]
    return arcs + [(t, h, Fraction(w)) for t, h, w in rest]


TABLE1_DOCUMENT = (
    "# three crowns with second-choice ratios 1/4, 1/16, 1/2\n"
    + "".join(f"{t} {h} {w}\n" for t, h, w in _table1_arcs())
)


def table1_fixture() -> PhyloNetwork:
    return parse_network(TABLE1_DOCUMENT)


# (v0,v1),(v2,v1),(v2,v3),(v4,v3) is a maximal W-fence: v0 and v4 are
# reticulations, so neither end of the trail can be extended.
WFENCE_GADGET = [
    ("r", "t1"), ("r", "t2"),
    ("t1", "v0"), ("t1", "g"),
    ("t2", "v4"), ("t2", "h"),
    ("g", "v0"), ("g", "v2"),
    ("h", "v4"), ("h", "x3"),
    ("v0", "v1"), ("v2", "v1"),
    ("v2", "v3"), ("v4", "v3"),
    ("v1", "x1"), ("v3", "x2"),
]
WFENCE_ARCS = [("v0", "v1"), ("v2", "v1"), ("v2", "v3"), ("v4", "v3")]


def _graft(arcs, leaf, sub, prefix):
    """Replace ``leaf`` by the root of network ``sub``."""
    root = sub.labels[sub.root]
    ren = {lab: (leaf if lab == root else f"{prefix}{lab}") for lab in sub.labels}
    return arcs + [(ren[t], ren[h], w) for t, h, w in sub.raw_arcs()]


def wfence_network(seed: int, max_arcs: int = 24) -> PhyloNetwork:
    """Random non-tree-based network built around a maximal W-fence."""
    rng = random.Random(seed)
    arcs = [(t, h, Fraction(rng.randint(1, 64), 64)) for t, h in WFENCE_GADGET]
    leaves = ["x1", "x2", "x3"]
    budget = max_arcs - len(arcs)
    for leaf in rng.sample(leaves, rng.randint(0, 3)):
        extra = rng.randint(0, 1)
        size = 2 + 3 * extra
        if size > budget:
            continue
        sub = generate_random(2, extra, rng.getrandbits(32))
        arcs = _graft(arcs, leaf, sub, f"{leaf}_")
        budget -= size
    if budget >= 2 and rng.random() < 0.5:
        # hang the gadget below a leaf of a random cherry
        top = generate_random(2, 0, rng.getrandbits(32))
        hook = top.labels[min(top.leaves)]
        arcs = [("g_r" if t == "r" else t, h, w) for t, h, w in arcs]
        arcs += [(f"top_{t}", "g_r" if h == hook else f"top_{h}", w) for t, h, w in top.raw_arcs()]
    rng.shuffle(arcs)
    return PhyloNetwork.from_arcs(arcs)


def random_trail(kind: str, m: int, rng: random.Random):
    """Standalone alternating trail as ``(tails, heads, weights)`` arrays.

    ``kind`` is ``"crown"`` or ``"fence"``.  Fences start with a randomly
    directed arc, so even fences come out as M- or W-fences at random.  Arc
    indices are shuffled so the walking order differs from index order.
    """
    if kind == "crown":
        if m < 4 or m % 2:
            raise ValueError("a crown needs an even number of arcs >= 4")
        nverts = m
    elif kind == "fence":
        if m < 1:
            raise ValueError("a fence needs at least one arc")
        nverts = m + 1
    else:
        raise ValueError(kind)
    down = rng.random() < 0.5
    pairs = []
    for i in range(m):
        a, b = i, (i + 1) % nverts
        pairs.append((a, b) if down == (i % 2 == 0) else (b, a))
    perm = list(range(m))
    rng.shuffle(perm)
    tails = [0] * m
    heads = [0] * m
    for (t, h), idx in zip(pairs, perm):
        tails[idx], heads[idx] = t, h
    weights = [Fraction(rng.randint(1, 64), 64) for _ in range(m)]
    return tails, heads, weights
