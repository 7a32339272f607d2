"""Wall-clock delay profiling of the ranked enumerator."""

from __future__ import annotations

import csv
import gc
import statistics
from dataclasses import dataclass, field
from time import perf_counter_ns
from typing import Iterable, TextIO

import numpy as np

from .network import PhyloNetwork, generate_random
from .ranking import SupportTreeSpace

FORMAT_VERSION = 1


@dataclass
class DelayProfile:
    num_arcs: int
    k: int
    preprocessing_ns: int
    delays: list[int] = field(default_factory=list)  # delays[j-1] precedes emission j
    repetition: int = 0


def network_of_size(num_arcs: int, seed: int, min_trees: int = 1) -> PhyloNetwork:
    """Random tree-based network with about ``num_arcs`` arcs.

    Roughly one extra arc per eight arcs; a binary tree on ``n`` leaves has
    ``2n - 2`` arcs and every extra arc adds three.  Seeds are stepped until
    the network has at least ``min_trees`` support trees.
    """
    extra = max(0, num_arcs // 8)
    leaves = max(2, (num_arcs - 3 * extra + 2) // 2)
    for attempt in range(100):
        net = generate_random(leaves, extra, seed + attempt)
        if SupportTreeSpace(net).count_at_least(min_trees):
            return net
    raise ValueError(f"no network with {num_arcs} arcs and {min_trees} support trees found")


def measure(network: PhyloNetwork, k: int, repetition: int = 0) -> DelayProfile:
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = perf_counter_ns()
        space = SupportTreeSpace(network)
        enum = space.enumerator(k)
        t1 = perf_counter_ns()
        delays = []
        last = t1
        for _ in enum:
            now = perf_counter_ns()
            delays.append(now - last)
            last = now
    finally:
        if was_enabled:
            gc.enable()
    return DelayProfile(network.num_arcs, k, t1 - t0, delays, repetition)


def profile_delay(sizes: Iterable[int], k: int, repetitions: int = 1, seed: int = 0) -> list[DelayProfile]:
    """Measure per-emission delays for each target size.

    Repetitions run sequentially, round-robin over the sizes, so a burst of
    outside load hits every size rather than all runs of one.
    """
    nets = [network_of_size(size, seed, min_trees=k) for size in sizes]
    out = []
    for rep in range(repetitions):
        for net in nets:
            out.append(measure(net, k, rep))
    return out


def median_delay(profiles: list[DelayProfile], lo: int = 2, hi: int | None = None) -> float:
    """Median delay over emissions ``lo <= j <= hi``.

    Each repetition gets its own median and the smallest one is reported:
    the least-disturbed run is the best estimate of the algorithm's cost.
    """
    meds = []
    for p in profiles:
        top = p.k if hi is None else hi
        meds.append(statistics.median(p.delays[lo - 1:top]))
    return float(min(meds))


@dataclass
class DelaySummary:
    sizes: list[int]
    medians: list[float]
    slope: float
    growth: list[float]        # median ratio between consecutive sizes
    late_over_early: list[float]


def summarize(profiles: list[DelayProfile]) -> DelaySummary:
    by_size: dict[int, list[DelayProfile]] = {}
    for p in profiles:
        by_size.setdefault(p.num_arcs, []).append(p)
    sizes = sorted(by_size)
    medians = [median_delay(by_size[s]) for s in sizes]
    slope = float(np.polyfit(sizes, medians, 1)[0]) if len(sizes) > 1 else float("nan")
    growth = [b / a for a, b in zip(medians, medians[1:])]
    late = []
    for s in sizes:
        k = by_size[s][0].k
        early = median_delay(by_size[s], 2, max(2, k // 10))
        tail = median_delay(by_size[s], max(2, k - k // 10), k)
        late.append(tail / early)
    return DelaySummary(sizes, medians, slope, growth, late)


def write_csv(profiles: list[DelayProfile], out: TextIO) -> None:
    out.write(f"# format_version={FORMAT_VERSION}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["num_arcs", "repetition", "j", "delay_ns"])
    for p in profiles:
        for j, d in enumerate(p.delays, 1):
            w.writerow([p.num_arcs, p.repetition, j, d])


def format_summary(summary: DelaySummary) -> str:
    lines = ["# num_arcs median_delay_ns late/early"]
    for s, m, r in zip(summary.sizes, summary.medians, summary.late_over_early):
        lines.append(f"# {s} {m:.0f} {r:.2f}")
    if summary.growth:
        lines.append("# growth per size step: " + " ".join(f"{g:.2f}" for g in summary.growth))
        lines.append(f"# least-squares slope: {summary.slope:.2f} ns/arc")
    return "\n".join(lines) + "\n"
