"""Weighted rooted binary phylogenetic networks.

A network is given as an explicit list of weighted arcs.  The position of an
arc in that list is its ``arc_index``; every lexicographic tie-break further
down the pipeline is expressed in terms of this canonical order, so parsing,
serialisation and generation all preserve it.

Weights are exact :class:`fractions.Fraction` values in ``(0, 1]``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidNetworkError, NetworkSyntaxError

__all__ = [
    "Arc",
    "PhyloNetwork",
    "Violation",
    "RawArc",
    "parse_raw",
    "parse_network",
    "parse_weight",
    "validate",
    "serialize",
    "generate_random",
    "generate_random_with_planted",
]

# Names of the clauses reported by ``validate``.
SIMPLE = "simple graph"
WEIGHT = "weight range"
ACYCLIC = "acyclicity"
UNIQUE_ROOT = "unique root"
ROOT_DEGREE = "root out-degree"
LEAVES = "leaves"
DEGREES = "vertex degrees"

RawArc = tuple  # (tail_label, head_label, weight)


@dataclass(frozen=True)
class Arc:
    index: int
    tail: int
    head: int
    weight: Fraction


@dataclass(frozen=True)
class Violation:
    clause: str
    detail: str

    def __str__(self) -> str:
        return f"structural violation: {self.clause}: {self.detail}"


class PhyloNetwork:
    """Immutable, validated rooted binary phylogenetic network.

    Use :func:`parse_network` or :meth:`from_arcs` rather than the
    constructor; both run the full validation first.

    Attributes
    ----------
    labels : tuple of str
        Vertex label per vertex id ``0..|V|-1`` (ids follow first appearance
        in the arc list).
    arcs : tuple of Arc
        Arcs in canonical order, ``arcs[i].index == i``.
    root : int
    leaves : frozenset of int
    in_arcs, out_arcs : tuple of tuple of int
        Arc indices entering / leaving each vertex, in canonical order.
    """

    __slots__ = ("labels", "arcs", "root", "leaves", "in_arcs", "out_arcs", "_label_index")

    def __init__(self, labels, arcs, root, leaves, in_arcs, out_arcs):
        self.labels = tuple(labels)
        self.arcs = tuple(arcs)
        self.root = root
        self.leaves = frozenset(leaves)
        self.in_arcs = tuple(tuple(a) for a in in_arcs)
        self.out_arcs = tuple(tuple(a) for a in out_arcs)
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def from_arcs(cls, raw_arcs: Iterable[RawArc]) -> "PhyloNetwork":
        """Build a network from ``(tail_label, head_label, weight)`` triples."""
        raw_arcs = [(t, h, Fraction(w)) for t, h, w in raw_arcs]
        report = validate(raw_arcs)
        if report:
            raise InvalidNetworkError(report)
        return cls._build(raw_arcs)

    @classmethod
    def _build(cls, raw_arcs):
        label_index: dict[str, int] = {}
        for t, h, _ in raw_arcs:
            for lab in (t, h):
                if lab not in label_index:
                    label_index[lab] = len(label_index)
        n = len(label_index)
        in_arcs = [[] for _ in range(n)]
        out_arcs = [[] for _ in range(n)]
        arcs = []
        for i, (t, h, w) in enumerate(raw_arcs):
            u, v = label_index[t], label_index[h]
            arcs.append(Arc(i, u, v, w))
            out_arcs[u].append(i)
            in_arcs[v].append(i)
        root = next(v for v in range(n) if not in_arcs[v])
        leaves = [v for v in range(n) if not out_arcs[v]]
        return cls(label_index, arcs, root, leaves, in_arcs, out_arcs)

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(a.weight for a in self.arcs)

    @property
    def tails(self) -> tuple[int, ...]:
        return tuple(a.tail for a in self.arcs)

    @property
    def heads(self) -> tuple[int, ...]:
        return tuple(a.head for a in self.arcs)

    def vertex(self, label: str) -> int:
        return self._label_index[label]

    def in_degree(self, v: int) -> int:
        return len(self.in_arcs[v])

    def out_degree(self, v: int) -> int:
        return len(self.out_arcs[v])

    def reticulations(self) -> list[int]:
        return [v for v in range(self.num_vertices) if len(self.in_arcs[v]) == 2]

    def raw_arcs(self) -> list[RawArc]:
        return [(self.labels[a.tail], self.labels[a.head], a.weight) for a in self.arcs]

    def arc_label(self, index: int) -> str:
        a = self.arcs[index]
        return f"{self.labels[a.tail]}->{self.labels[a.head]}"

    def __eq__(self, other):
        if not isinstance(other, PhyloNetwork):
            return NotImplemented
        return self.raw_arcs() == other.raw_arcs()

    def __hash__(self):
        return hash(tuple(self.raw_arcs()))

    def __repr__(self):
        return (f"PhyloNetwork(|V|={self.num_vertices}, |A|={self.num_arcs}, "
                f"leaves={len(self.leaves)}, reticulations={len(self.reticulations())})")


def parse_weight(token: str) -> Fraction:
    """Parse a decimal (``0.25``) or fraction (``1/4``) literal exactly."""
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"invalid weight literal {token!r}") from None


def parse_raw(text: str) -> list[RawArc]:
    """Tokenise a network document without structural checks."""
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise NetworkSyntaxError(
                lineno, f"expected 'tail head weight', got {len(parts)} field(s)")
        try:
            w = parse_weight(parts[2])
        except ValueError as exc:
            raise NetworkSyntaxError(lineno, str(exc)) from None
        raw.append((parts[0], parts[1], w))
    return raw


def parse_network(text: str) -> PhyloNetwork:
    """Parse and validate a network document.

    Raises
    ------
    NetworkSyntaxError
        Malformed line or weight literal (carries the line number).
    InvalidNetworkError
        The arcs do not form a rooted binary phylogenetic network; every
        violated clause is listed.
    """
    return PhyloNetwork.from_arcs(parse_raw(text))


def serialize(network: PhyloNetwork) -> str:
    return "".join(f"{t} {h} {w}\n" for t, h, w in network.raw_arcs())


def validate(raw_arcs: Sequence[RawArc]) -> list[Violation]:
    """Return every violated network condition; empty means valid."""
    report: list[Violation] = []
    seen: dict[tuple[str, str], int] = {}
    indeg: dict[str, int] = {}
    outdeg: dict[str, int] = {}
    succ: dict[str, list[str]] = {}
    for i, (t, h, w) in enumerate(raw_arcs):
        for lab in (t, h):
            indeg.setdefault(lab, 0)
            outdeg.setdefault(lab, 0)
            succ.setdefault(lab, [])
        if t == h:
            report.append(Violation(SIMPLE, f"arc {i} is a self-loop at {t!r}"))
        if (t, h) in seen:
            report.append(Violation(SIMPLE, f"duplicate arc {t!r}->{h!r} (arcs {seen[(t, h)]} and {i})"))
        else:
            seen[(t, h)] = i
        if not 0 < w <= 1:
            report.append(Violation(WEIGHT, f"arc {i} weight {w} outside (0,1]"))
        outdeg[t] += 1
        indeg[h] += 1
        succ[t].append(h)

    # Kahn's algorithm; leftovers lie on or below a cycle
    pending = dict(indeg)
    queue = deque(v for v, d in pending.items() if d == 0)
    done = 0
    while queue:
        v = queue.popleft()
        done += 1
        for h in succ[v]:
            pending[h] -= 1
            if pending[h] == 0:
                queue.append(h)
    if done < len(pending):
        stuck = sorted(v for v, d in pending.items() if d > 0)
        report.append(Violation(ACYCLIC, f"directed cycle through {', '.join(stuck[:5])}"))

    roots = [v for v in indeg if indeg[v] == 0]
    if len(roots) != 1:
        report.append(Violation(UNIQUE_ROOT, f"expected one vertex of in-degree 0, found {len(roots)}"))
    for r in roots:
        if outdeg[r] not in (1, 2):
            report.append(Violation(ROOT_DEGREE, f"root {r!r} has out-degree {outdeg[r]}"))
    leaves = [v for v in indeg if (indeg[v], outdeg[v]) == (1, 0)]
    if not leaves:
        report.append(Violation(LEAVES, "no vertex with (in, out) = (1, 0)"))
    for v in indeg:
        if indeg[v] == 0 or (indeg[v], outdeg[v]) == (1, 0):
            continue
        if {indeg[v], outdeg[v]} != {1, 2}:
            report.append(Violation(DEGREES, f"vertex {v!r} has (in, out) = ({indeg[v]}, {outdeg[v]})"))
    return report


def _topological_positions(n, arcs):
    succ = [[] for _ in range(n)]
    indeg = [0] * n
    for u, v in arcs:
        succ[u].append(v)
        indeg[v] += 1
    queue = deque(v for v in range(n) if indeg[v] == 0)
    pos = [0] * n
    k = 0
    while queue:
        v = queue.popleft()
        pos[v] = k
        k += 1
        for h in succ[v]:
            indeg[h] -= 1
            if indeg[h] == 0:
                queue.append(h)
    return pos


def generate_random_with_planted(leaf_count: int, extra_arcs: int, seed: int):
    """Like :func:`generate_random` but also return the planted tree's arcs.

    Returns
    -------
    network : PhyloNetwork
    planted : frozenset of int
        Arc indices of the subdivided original tree, an admissible arc-set.
    """
    if leaf_count < 2:
        raise ValueError("leaf_count must be at least 2")
    if extra_arcs < 0:
        raise ValueError("extra_arcs must be non-negative")
    rng = random.Random(seed)

    # random binary tree: repeatedly split a random leaf into a cherry
    arcs = [[0, 1], [0, 2]]
    leaves = [1, 2]
    n = 3
    while len(leaves) < leaf_count:
        j = rng.randrange(len(leaves))
        v = leaves[j]
        arcs.append([v, n])
        arcs.append([v, n + 1])
        leaves[j] = n
        leaves.append(n + 1)
        n += 2
    in_tree = [True] * len(arcs)

    for _ in range(extra_arcs):
        pos = _topological_positions(n, arcs)
        # only arcs of the planted tree, so it stays a spanning support tree
        i, j = rng.sample([a for a in range(len(arcs)) if in_tree[a]], 2)
        if pos[arcs[i][0]] > pos[arcs[j][0]]:
            i, j = j, i
        s, t = n, n + 1
        n += 2
        for idx, mid in ((i, s), (j, t)):
            u, v = arcs[idx]
            arcs[idx] = [u, mid]
            arcs.append([mid, v])
            in_tree.append(in_tree[idx])
        arcs.append([s, t])
        in_tree.append(False)

    leaf_set = set(leaves)
    names = {0: "r"}
    for k, v in enumerate(sorted(leaf_set), 1):
        names[v] = f"x{k}"
    internal = 0
    for v in range(n):
        if v not in names:
            internal += 1
            names[v] = f"v{internal}"

    order = list(range(len(arcs)))
    rng.shuffle(order)
    raw = [(names[arcs[i][0]], names[arcs[i][1]], Fraction(rng.randint(1, 64), 64)) for i in order]
    planted = frozenset(pos for pos, i in enumerate(order) if in_tree[i])
    return PhyloNetwork.from_arcs(raw), planted


def generate_random(leaf_count: int, extra_arcs: int, seed: int) -> PhyloNetwork:
    """Random tree-based network: a random binary tree plus extra arcs.

    Each extra arc joins new subdivision vertices placed on two existing
    arcs, oriented along a topological order so the result stays acyclic.
    The original tree survives as a support tree, so the output is always
    tree-based.  Weights are ``k/64`` with ``k`` uniform in ``1..64``.
    Deterministic in ``(leaf_count, extra_arcs, seed)``.
    """
    return generate_random_with_planted(leaf_count, extra_arcs, seed)[0]
